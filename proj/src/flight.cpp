#include "abiot/flight.hpp"

#include <algorithm>
#include <cmath>

#include "abiot/errors.hpp"

namespace abiot {

void validate_tricopter(const TricopterParams& p) {
    if (p.cruise_speed_mps <= 0.0 || p.climb_rate_mps <= 0.0 || p.yaw_rate_dps <= 0.0 ||
        p.hover_power_w <= 0.0 || p.cruise_power_w <= 0.0 || p.battery_capacity_j <= 0.0)
        throw ConfigError("tricopter parameters must all be positive");
    if (p.low_battery_fraction <= 0.0 || p.low_battery_fraction >= 1.0)
        throw ConfigError("tricopter.low_battery_fraction must be in (0, 1)");
}

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::Idle: return "Idle";
        case Mode::Takeoff: return "Takeoff";
        case Mode::AltitudeCheck: return "AltitudeCheck";
        case Mode::Cruise: return "Cruise";
        case Mode::Return: return "Return";
        case Mode::Landed: return "Landed";
        case Mode::Crashed: return "Crashed";
        case Mode::Beacon: return "Beacon";
    }
    return "?";
}

std::string event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::TakeoffComplete: return "TakeoffComplete";
        case EventKind::LapComplete: return "LapComplete";
        case EventKind::LowBatteryAlarm: return "LowBatteryAlarm";
        case EventKind::ReturnInitiated: return "ReturnInitiated";
        case EventKind::LandedHome: return "LandedHome";
        case EventKind::CrashLanded: return "CrashLanded";
        case EventKind::BeaconPing: return "BeaconPing";
    }
    return "?";
}

double cruise_altitude(double crop_height_m) {
    if (crop_height_m < 0.0) throw ConfigError("crop height must be >= 0");
    return std::max(1.0, crop_height_m + 0.20);
}

namespace {

void drain(AgentState& st, double power_w, double dt_s) {
    st.battery_j = std::max(0.0, st.battery_j - power_w * dt_s);
}

}  // namespace

AgentState step_agent(AgentState st, Vec3 target, const TricopterParams& p, double dt_s) {
    if (st.dwell_s > 0.0) {
        const double t = std::min(st.dwell_s, dt_s);
        st.dwell_s -= t;
        drain(st, p.hover_power_w, dt_s);
        return st;
    }

    const double dz_up = target.z - st.position.z;
    const Vec2 dxy = target.xy() - st.position.xy();
    const double hdist = dxy.norm();

    if (dz_up > kArrivalTolM) {
        st.position.z += std::min(dz_up, p.climb_rate_mps * dt_s);
        drain(st, p.hover_power_w, dt_s);
    } else if (hdist > kArrivalTolM) {
        const double move = std::min(hdist, p.cruise_speed_mps * dt_s);
        st.position.x += dxy.x / hdist * move;
        st.position.y += dxy.y / hdist * move;
        drain(st, p.cruise_power_w, dt_s);
    } else if (dz_up < -kArrivalTolM) {
        st.position.z = std::max(target.z, st.position.z - p.climb_rate_mps * dt_s);
        drain(st, p.hover_power_w, dt_s);
    } else {
        ++st.waypoint_index;
        drain(st, p.hover_power_w, dt_s);
    }
    st.position.z = std::max(0.0, st.position.z);
    return st;
}

AgentState failsafe_check(AgentState st, const TricopterParams& p, double time_s,
                          std::vector<MissionEvent>& out) {
    if (st.mode == Mode::Beacon) {
        out.push_back({time_s, EventKind::BeaconPing, st.crash_position, 0});
        return st;
    }
    if (st.mode == Mode::Crashed) {
        st.mode = Mode::Beacon;
        out.push_back({time_s, EventKind::BeaconPing, st.crash_position, 0});
        return st;
    }

    const bool airborne = st.mode == Mode::Takeoff || st.mode == Mode::AltitudeCheck ||
                          st.mode == Mode::Cruise || st.mode == Mode::Return;
    if (!airborne) return st;

    if (st.battery_j <= 0.0) {
        st.mode = Mode::Crashed;
        st.crash_position = st.position;
        out.push_back({time_s, EventKind::CrashLanded, st.position, 0});
        return st;
    }

    if (st.mode == Mode::Cruise && !st.low_battery_alarmed &&
        st.battery_j / p.battery_capacity_j < p.low_battery_fraction) {
        st.low_battery_alarmed = true;
        st.mode = Mode::Return;
        st.dwell_s = 0.0;
        out.push_back({time_s, EventKind::LowBatteryAlarm, st.position, 0});
        out.push_back({time_s, EventKind::ReturnInitiated, st.position, 0});
        return st;
    }

    if (st.mode == Mode::Return &&
        dist2d(st.position.xy(), st.home) <= kLandingTolM && st.position.z <= kArrivalTolM) {
        st.position.z = 0.0;
        st.mode = Mode::Landed;
        out.push_back({time_s, EventKind::LandedHome, st.position, 0});
    }
    return st;
}

}  // namespace abiot
