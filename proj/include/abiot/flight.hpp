#pragma once

#include <string>
#include <vector>

#include "abiot/geometry.hpp"

namespace abiot {

struct TricopterParams {
    double cruise_speed_mps = 3.0;
    double climb_rate_mps = 1.0;
    double yaw_rate_dps = 180.0;
    double hover_power_w = 90.0;
    double cruise_power_w = 110.0;
    double battery_capacity_j = 400e3;
    double low_battery_fraction = 0.20;
};

void validate_tricopter(const TricopterParams& p);

enum class Mode { Idle, Takeoff, AltitudeCheck, Cruise, Return, Landed, Crashed, Beacon };

std::string mode_name(Mode m);

enum class EventKind {
    TakeoffComplete,
    LapComplete,
    LowBatteryAlarm,
    ReturnInitiated,
    LandedHome,
    CrashLanded,
    BeaconPing,
};

std::string event_kind_name(EventKind k);

struct MissionEvent {
    double time_s = 0.0;
    EventKind kind;
    Vec3 position;
    int agent_id = 0;
};

struct AgentState {
    Vec3 position;
    double battery_j = 0.0;
    Mode mode = Mode::Idle;
    int waypoint_index = 0;
    Vec2 home;
    double dwell_s = 0.0;  // remaining corner-turn hover time
    bool low_battery_alarmed = false;
    Vec3 crash_position;
};

// Flight altitude: 1 m floor or 20 cm above the crop, whichever is higher.
double cruise_altitude(double crop_height_m);

// Kinematic step toward a waypoint: climbs first, cruises horizontally, then
// descends; never overshoots. Battery drains at cruise power only while
// moving horizontally.
AgentState step_agent(AgentState st, Vec3 target, const TricopterParams& p, double dt_s);

// Low-battery return-to-launch, crash/beacon, and landed-at-home detection.
// Emitted events are appended to `out`.
AgentState failsafe_check(AgentState st, const TricopterParams& p, double time_s,
                          std::vector<MissionEvent>& out);

constexpr double kArrivalTolM = 0.05;
constexpr double kLandingTolM = 0.1;

}  // namespace abiot
