// Acceptance gate: one PASS/FAIL line per criterion, exit code = number of
// failures. Tolerances are pinned here and nowhere else.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "abiot/config.hpp"
#include "abiot/io.hpp"
#include "abiot/sim.hpp"

namespace fs = std::filesystem;
using namespace abiot;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("%s  criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!ok) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

Scenario default_scenario() { return parse_scenario(default_config()); }

double mean_over_seeds(Scenario sc, int n_seeds) {
    sc.sim.seed = 1;
    sc.sim.accumulate_exposure = false;
    return mean_effectiveness(sc, n_seeds);
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(ABIOT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---- criteria 1-3: calibration reproduction ---------------------------------

double g_standalone_mean = 0.0;

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    Scenario sc = default_scenario();
    sc.pests.placement = PestPlacement::NearPath;
    g_standalone_mean = mean_over_seeds(sc, 20);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok =
        g_standalone_mean >= 0.865 && g_standalone_mean <= 0.925 && secs < 30.0;
    report(1, ok,
           "standalone near-path mean over 20 seeds = " + fmt(g_standalone_mean) +
               " (window [0.865, 0.925]), " + fmt(secs) + " s (< 30 s)");
}

void criterion_2() {
    Scenario sc = default_scenario();
    sc.sim.mode = SwarmMode::Coordinated;
    sc.sim.n_agents = 4;
    const double mean = mean_over_seeds(sc, 20);
    const bool ok = mean >= 0.80 && mean <= 0.86 && mean < g_standalone_mean;
    report(2, ok,
           "coordinated n=4 mean over 20 seeds = " + fmt(mean) +
               " (window [0.80, 0.86], below standalone " + fmt(g_standalone_mean) + ")");
}

void criterion_3() {
    const double mean = mean_over_seeds(default_scenario(), 20);

    // pests beyond 15 m of every path point: removal count must be exactly 0
    int removed_beyond = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Scenario far = default_scenario();
        far.field = make_uniform_field(80.0, 80.0, 0.5, 1.0, {0.0, 0.0});
        far.sim.spacing_m = 40.0;  // path stays on the [0,40] square ring
        far.pests.placement = PestPlacement::Explicit;
        far.pests.positions = {{70.0, 70.0}, {79.0, 60.0}, {60.0, 79.0}};
        far.sim.seed = seed;
        far.sim.accumulate_exposure = false;
        removed_beyond += 3 - run(far).final_pests.present_count();
    }

    const bool ok = mean >= 0.835 && mean <= 0.895 && removed_beyond == 0;
    report(3, ok,
           "uniform 30x30 mean over 20 seeds = " + fmt(mean) +
               " (window [0.835, 0.895]); beyond-range removals = " +
               std::to_string(removed_beyond) + " (exactly 0)");
}

// ---- criterion 4: physics exactness ------------------------------------------

void criterion_4() {
    Rng rng(41);
    int bad = 0;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        EmitterSpec em{rng.uniform(0.1, 60.0), 40000.0, true, 15.0};
        const double d = rng.uniform(0.05, 7.4);  // keeps 2d inside the range
        const double i1 = intensity_at(em, d);
        const double i2 = intensity_at(em, 2.0 * d);
        const double rel = std::abs(i2 - i1 / 4.0) / (i1 / 4.0);
        worst = std::max(worst, rel);
        if (rel > 1e-12) ++bad;
    }
    report(4, bad == 0,
           "I(2d) = I(d)/4 over 100 random (power, d) pairs, worst relative error " +
               std::to_string(worst) + " (<= 1e-12)");
}

// ---- criterion 5: path properties --------------------------------------------

void criterion_5() {
    Rng rng(51);
    bool ok = true;
    std::string why = "50 random regions: palindrome, corner endpoints, nested rings, "
                      "coverage oracle";

    for (int it = 0; it < 50 && ok; ++it) {
        const double w = rng.uniform(4.0, 50.0);
        const double h = rng.uniform(4.0, 50.0);
        const double s = rng.uniform(1.0, std::min(w, h));
        const Corner corner = static_cast<Corner>(static_cast<int>(rng.uniform(0.0, 4.0)));
        const Rect region = {0.0, 0.0, w, h};

        const auto inward = spiral_inward(region, s, corner);
        const auto lap = full_lap(inward);

        // palindrome
        for (size_t i = 0; i < lap.size(); ++i)
            if (!(lap[i] == lap[lap.size() - 1 - i])) ok = false;

        // mission start = end = launch corner, exactly
        const PathPlan plan = mission_path(region, s, 3, corner);
        const Vec2 corners[4] = {{0.0, 0.0}, {w, 0.0}, {w, h}, {0.0, h}};
        const Vec2 launch = corners[static_cast<int>(corner)];
        if (!(plan.waypoints.front() == launch) || !(plan.waypoints.back() == launch))
            ok = false;

        // rings strictly nested: depth within the track lattice never shrinks
        Rect box = {inward[0].x, inward[0].y, inward[0].x, inward[0].y};
        for (const auto& p : inward) {
            box.x_lo = std::min(box.x_lo, p.x);
            box.y_lo = std::min(box.y_lo, p.y);
            box.x_hi = std::max(box.x_hi, p.x);
            box.y_hi = std::max(box.y_hi, p.y);
        }
        double prev = -1.0;
        for (const auto& p : inward) {
            const double m = std::min(std::min(p.x - box.x_lo, box.x_hi - p.x),
                                      std::min(p.y - box.y_lo, box.y_hi - p.y));
            if (m < prev - 1e-9) ok = false;
            prev = std::max(prev, m);
        }
    }

    // coverage map vs brute-force point-to-segment oracle on a 10x10 grid
    const FieldSpec field = make_uniform_field(10.0, 10.0, 1.0, 1.0, {0.0, 0.0});
    for (int it = 0; it < 10 && ok; ++it) {
        const double s = rng.uniform(1.0, 5.0);
        const double r = rng.uniform(0.5, 6.0);
        const PathPlan plan = mission_path(field.bounds(), s, 2);
        const CoverageResult res = coverage_map(plan, r, field);
        const size_t per_lap = (plan.waypoints.size() - 1) / plan.laps + 1;
        for (int iy = 0; iy < field.ny; ++iy) {
            for (int ix = 0; ix < field.nx; ++ix) {
                const Vec2 c = field.cell_center(ix, iy);
                bool hit = dist2d(c, plan.waypoints[0]) <= r;
                for (size_t i = 1; !hit && i < per_lap; ++i)
                    hit = point_segment_distance(c, plan.waypoints[i - 1],
                                                 plan.waypoints[i]) <= r;
                if (hit != static_cast<bool>(
                               res.covered[static_cast<size_t>(iy) * field.nx + ix]))
                    ok = false;
            }
        }
    }
    report(5, ok, why);
}

// ---- criterion 6: partition soundness ----------------------------------------

void criterion_6() {
    Rng rng(61);
    bool ok = true;
    int cases = 0;
    for (int n = 1; n <= 9 && ok; ++n) {
        for (int it = 0; it < 20 && ok; ++it) {
            const double w = 10.0 + 0.5 * std::floor(rng.uniform(0.0, 101.0));
            const double h = 10.0 + 0.5 * std::floor(rng.uniform(0.0, 101.0));
            const FieldSpec f = make_uniform_field(w, h, 0.5, 1.0, {0.0, 0.0});
            const auto parts = partition_field(f, n);
            const auto res = negotiate(parts, 10);
            const auto rep = validate_partition(res.assignments, f);
            if (rep.overlap_area_m2 != 0.0 || rep.gap_area_m2 != 0.0) ok = false;
            for (const auto& m : res.trace) {
                bool neighbors = false;
                for (int nb : parts[static_cast<size_t>(m.from)].neighbors)
                    neighbors = neighbors || nb == m.to;
                if (!neighbors) ok = false;
            }
            ++cases;
        }
    }
    report(6, ok,
           "n in 1..9 x 20 random fields (" + std::to_string(cases) +
               " cases): overlap 0, gap 0, all messages between edge-neighbors");
}

// ---- criterion 7: failsafe guarantee -----------------------------------------

void criterion_7() {
    Rng rng(71);
    bool ok = true;
    int landed = 0, beacons = 0;
    for (int it = 0; it < 100 && ok; ++it) {
        Scenario sc = default_scenario();
        sc.field = make_uniform_field(16.0, 16.0, 0.5, 1.0, {0.0, 0.0});
        sc.pests.count = 10;
        sc.sim.laps_per_day = {2};
        sc.sim.seed = static_cast<std::uint64_t>(it + 1);
        sc.sim.accumulate_exposure = false;
        sc.tricopter.battery_capacity_j = rng.uniform(400.0, 40e3);
        const RunResult res = run(sc);

        int alarms = 0;
        std::vector<MissionEvent> pings;
        for (const auto& e : res.events) {
            if (e.kind == EventKind::LowBatteryAlarm) ++alarms;
            if (e.kind == EventKind::BeaconPing) pings.push_back(e);
        }
        if (alarms > 1) ok = false;

        if (res.final_modes[0] == Mode::Landed) {
            ++landed;
            bool home = false;
            for (const auto& e : res.events)
                if (e.kind == EventKind::LandedHome &&
                    dist2d(e.position.xy(), sc.field.launch_point) <= 0.1)
                    home = true;
            if (!home) ok = false;
        } else if (res.final_modes[0] == Mode::Beacon) {
            ++beacons;
            if (pings.empty()) ok = false;
            for (size_t i = 0; i < pings.size(); ++i) {
                if (!(pings[i].position == pings[0].position)) ok = false;
                if (i > 0 &&
                    std::abs(pings[i].time_s - pings[i - 1].time_s - sc.sim.dt_s) > 1e-9)
                    ok = false;  // exactly one ping per step
            }
        } else {
            ok = false;
        }
    }
    report(7, ok,
           "100 randomized-battery runs: " + std::to_string(landed) + " landed at home, " +
               std::to_string(beacons) +
               " beaconing one ping per step at a fixed position; <= 1 alarm per run");
}

// ---- criterion 8: habituation experiment -------------------------------------

void criterion_8() {
    bool ok = true;
    std::string detail;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Scenario sc = default_scenario();
        sc.field = make_uniform_field(10.0, 10.0, 0.5, 1.0, {0.0, 0.0});
        sc.emitter.acoustic_power_w = 20.0;  // saturates the whole small field
        sc.pests.count = 800;
        sc.sim.k = 0.0008;  // low dose so the population lasts 20 days
        sc.sim.laps_per_day = {1};
        sc.sim.seed = seed;
        const HabituationSeries series = habituation_experiment(sc, 20);

        auto window = [](const std::vector<double>& v, int lo, int hi) {
            double s = 0.0;
            for (int d = lo; d < hi; ++d) s += v[d];
            return s / (hi - lo);
        };
        const double u_early = window(series.ultrasonic_only, 0, 8);
        const double u_late = window(series.ultrasonic_only, 11, 20);
        const double r_early = window(series.with_rf, 0, 8);
        const double r_late = window(series.with_rf, 11, 20);
        if (!(u_late < u_early)) ok = false;
        if (!(r_late >= r_early - 0.02)) ok = false;
        if (series.ultrasonic_only[0] != series.with_rf[0]) ok = false;
        if (seed == 1)
            detail = "ultrasonic-only " + fmt(u_early) + " -> " + fmt(u_late) +
                     ", with RF " + fmt(r_early) + " -> " + fmt(r_late) +
                     ", day-1 identical (5 seeds)";
    }
    report(8, ok, detail);
}

// ---- criterion 9: determinism ------------------------------------------------

void criterion_9() {
    const fs::path dir =
        fs::temp_directory_path() / ("abiot_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const fs::path cfg = dir / "cfg.json";
    std::ofstream(cfg) << R"({"field": {"width_m": 12.0, "length_m": 12.0},
                             "species": {"count": 100}, "path": {"laps": 2}})";

    bool ok = true;
    const fs::path a = dir / "a", b = dir / "b";
    ok = ok && run_cli("run --config " + cfg.string() + " --out " + a.string()) == 0;
    ok = ok && run_cli("run --config " + cfg.string() + " --out " + b.string()) == 0;
    for (const char* f : {"metrics.csv", "events.jsonl", "exposure.pgm"})
        ok = ok && slurp(a / f) == slurp(b / f);

    const std::string sweep = "sweep --config " + cfg.string() +
                              " --param path.laps --values 1,2,4 --seeds 3 --out ";
    ::setenv("ABIOT_SIM_THREADS", "1", 1);
    ok = ok && run_cli(sweep + (dir / "s1").string()) == 0;
    ::setenv("ABIOT_SIM_THREADS", "4", 1);
    ok = ok && run_cli(sweep + (dir / "s4").string()) == 0;
    ::unsetenv("ABIOT_SIM_THREADS");
    ok = ok && slurp(dir / "s1" / "sweep.csv") == slurp(dir / "s4" / "sweep.csv");
    ok = ok && !slurp(dir / "s1" / "sweep.csv").empty();

    fs::remove_all(dir);
    report(9, ok,
           "byte-identical run outputs across invocations; sweep.csv identical for "
           "1 and 4 threads");
}

// ---- criterion 10: baseline report -------------------------------------------

void criterion_10() {
    Rng rng(101);
    bool ok = true;
    for (int i = 0; i < 50; ++i) {
        Metrics m;
        m.effectiveness = rng.uniform(0.0, 1.0);
        const BaselineReport rep = compare_baseline(m);
        if (rep.pesticide_band_lo != 0.92 || rep.pesticide_band_hi != 0.93) ok = false;
        if (std::abs(rep.gap - (0.925 - m.effectiveness)) > 1e-12) ok = false;
        if ((rep.gap > 0.0) != (m.effectiveness < 0.925)) ok = false;
    }
    report(10, ok,
           "pesticide band [0.92, 0.93] embedded with a correctly signed gap to the "
           "midpoint");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d/10 criteria passed\n", 10 - g_failures);
    return g_failures;
}
