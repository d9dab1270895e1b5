#include <doctest.h>

#include <cmath>
#include <vector>

#include "abiot/errors.hpp"
#include "abiot/flight.hpp"

using namespace abiot;

namespace {

AgentState cruising_at(Vec3 pos, double battery_j) {
    AgentState st;
    st.position = pos;
    st.battery_j = battery_j;
    st.mode = Mode::Cruise;
    st.home = {0.0, 0.0};
    return st;
}

int count_kind(const std::vector<MissionEvent>& evs, EventKind k) {
    int n = 0;
    for (const auto& e : evs)
        if (e.kind == k) ++n;
    return n;
}

}  // namespace

TEST_CASE("cruise altitude is 20 cm above the crop with a 1 m floor") {
    CHECK(cruise_altitude(1.5) == doctest::Approx(1.7).epsilon(1e-12));
    CHECK(cruise_altitude(0.5) == 1.0);
    CHECK(cruise_altitude(0.8) == 1.0);
    CHECK(cruise_altitude(0.0) == 1.0);
    CHECK_THROWS_AS(cruise_altitude(-0.1), ConfigError);
}

TEST_CASE("tricopter parameter validation") {
    CHECK_NOTHROW(validate_tricopter(TricopterParams{}));
    TricopterParams p;
    p.cruise_speed_mps = 0.0;
    CHECK_THROWS_AS(validate_tricopter(p), ConfigError);
    p = TricopterParams{};
    p.low_battery_fraction = 1.0;
    CHECK_THROWS_AS(validate_tricopter(p), ConfigError);
}

TEST_CASE("step_agent advances v*dt along the bearing") {
    TricopterParams p;
    p.cruise_speed_mps = 2.0;
    AgentState st = cruising_at({0.0, 0.0, 1.0}, 400e3);
    st = step_agent(st, {0.6, 0.8, 1.0}, p, 0.1);  // 1 m away
    CHECK(st.position.x == doctest::Approx(0.12).epsilon(1e-12));
    CHECK(st.position.y == doctest::Approx(0.16).epsilon(1e-12));
    CHECK(st.position.z == 1.0);
    CHECK(st.waypoint_index == 0);
}

TEST_CASE("step_agent never overshoots the target") {
    TricopterParams p;
    p.cruise_speed_mps = 3.0;
    AgentState st = cruising_at({0.0, 0.0, 1.0}, 400e3);
    st = step_agent(st, {1.0, 0.0, 1.0}, p, 1.0);  // could travel 3 m
    CHECK(st.position.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(st.position.y == 0.0);
}

TEST_CASE("arrival within tolerance bumps the waypoint index and holds position") {
    TricopterParams p;
    AgentState st = cruising_at({5.0, 5.0, 1.2}, 400e3);
    st = step_agent(st, {5.0, 5.0, 1.2}, p, 0.1);
    CHECK(st.position == Vec3{5.0, 5.0, 1.2});
    CHECK(st.waypoint_index == 1);
}

TEST_CASE("battery drains at the applicable power") {
    TricopterParams p;
    p.hover_power_w = 100.0;
    p.cruise_power_w = 110.0;
    // hovering at the target for 1 s costs hover power
    AgentState st = cruising_at({5.0, 5.0, 1.0}, 1000.0);
    st = step_agent(st, {5.0, 5.0, 1.0}, p, 1.0);
    CHECK(st.battery_j == doctest::Approx(900.0).epsilon(1e-12));
    // horizontal motion costs cruise power
    st = cruising_at({0.0, 0.0, 1.0}, 1000.0);
    st = step_agent(st, {10.0, 0.0, 1.0}, p, 1.0);
    CHECK(st.battery_j == doctest::Approx(890.0).epsilon(1e-12));
    // climbing costs hover power
    st = cruising_at({0.0, 0.0, 0.0}, 1000.0);
    st = step_agent(st, {0.0, 0.0, 1.0}, p, 0.5);
    CHECK(st.position.z == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(st.battery_j == doctest::Approx(950.0).epsilon(1e-12));
}

TEST_CASE("climb happens before horizontal motion and descent after") {
    TricopterParams p;
    AgentState st = cruising_at({0.0, 0.0, 0.0}, 400e3);
    st = step_agent(st, {3.0, 0.0, 1.0}, p, 0.5);
    CHECK(st.position.x == 0.0);  // still climbing
    CHECK(st.position.z == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("corner dwell consumes the step before any motion") {
    TricopterParams p;
    AgentState st = cruising_at({0.0, 0.0, 1.0}, 400e3);
    st.dwell_s = 0.5;
    st = step_agent(st, {5.0, 0.0, 1.0}, p, 0.5);
    CHECK(st.position.x == 0.0);
    CHECK(st.dwell_s == 0.0);
}

TEST_CASE("low battery in cruise triggers a single return-to-launch") {
    TricopterParams p;  // 400 kJ capacity, 20% threshold
    std::vector<MissionEvent> evs;
    AgentState st = cruising_at({12.0, 7.0, 1.7}, 0.19 * p.battery_capacity_j);
    st = failsafe_check(st, p, 10.0, evs);
    CHECK(st.mode == Mode::Return);
    CHECK(count_kind(evs, EventKind::LowBatteryAlarm) == 1);
    CHECK(count_kind(evs, EventKind::ReturnInitiated) == 1);
    // repeated checks never re-alarm
    st = failsafe_check(st, p, 10.5, evs);
    st.mode = Mode::Cruise;  // even if the mission somehow resumed
    st = failsafe_check(st, p, 11.0, evs);
    CHECK(count_kind(evs, EventKind::LowBatteryAlarm) == 1);
}

TEST_CASE("battery exhaustion crashes, then beacons from the crash position") {
    TricopterParams p;
    std::vector<MissionEvent> evs;
    AgentState st = cruising_at({12.0, 7.0, 1.7}, 0.0);
    st = failsafe_check(st, p, 20.0, evs);
    CHECK(st.mode == Mode::Crashed);
    CHECK(count_kind(evs, EventKind::CrashLanded) == 1);
    for (int i = 0; i < 3; ++i) st = failsafe_check(st, p, 20.5 + i * 0.5, evs);
    CHECK(st.mode == Mode::Beacon);
    CHECK(count_kind(evs, EventKind::BeaconPing) == 3);
    for (const auto& e : evs)
        if (e.kind == EventKind::BeaconPing) CHECK(e.position == Vec3{12.0, 7.0, 1.7});
}

TEST_CASE("reaching home in return mode lands the agent") {
    TricopterParams p;
    std::vector<MissionEvent> evs;
    AgentState st;
    st.position = {0.03, 0.02, 0.0};
    st.battery_j = 100e3;
    st.mode = Mode::Return;
    st.home = {0.0, 0.0};
    st = failsafe_check(st, p, 30.0, evs);
    CHECK(st.mode == Mode::Landed);
    CHECK(st.position.z == 0.0);
    CHECK(count_kind(evs, EventKind::LandedHome) == 1);
    CHECK(dist2d(st.position.xy(), st.home) <= kLandingTolM);
}

TEST_CASE("a return flight from mid-field ends at home") {
    TricopterParams p;
    std::vector<MissionEvent> evs;
    AgentState st = cruising_at({12.0, 7.0, 1.7}, 0.19 * p.battery_capacity_j);
    st = failsafe_check(st, p, 0.0, evs);
    REQUIRE(st.mode == Mode::Return);
    double t = 0.0;
    for (int i = 0; i < 2000 && st.mode != Mode::Landed; ++i) {
        st = step_agent(st, {st.home.x, st.home.y, 0.0}, p, 0.5);
        t += 0.5;
        st = failsafe_check(st, p, t, evs);
    }
    CHECK(st.mode == Mode::Landed);
    CHECK(dist2d(st.position.xy(), st.home) <= kLandingTolM);
    CHECK(st.battery_j > 0.0);
}

TEST_CASE("battery never goes negative") {
    TricopterParams p;
    AgentState st = cruising_at({0.0, 0.0, 1.0}, 10.0);
    st = step_agent(st, {100.0, 0.0, 1.0}, p, 1.0);
    CHECK(st.battery_j == 0.0);
    st = step_agent(st, {100.0, 0.0, 1.0}, p, 1.0);
    CHECK(st.battery_j == 0.0);
}
