#include "abiot/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "abiot/errors.hpp"
#include "abiot/kernels.hpp"
#include "abiot/rng.hpp"

namespace abiot {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

Corner nearest_corner(const Rect& r, Vec2 p) {
    const Vec2 corners[4] = {{r.x_lo, r.y_lo}, {r.x_hi, r.y_lo}, {r.x_hi, r.y_hi}, {r.x_lo, r.y_hi}};
    int best = 0;
    double best_d = dist2d(p, corners[0]);
    for (int i = 1; i < 4; ++i) {
        const double d = dist2d(p, corners[i]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return static_cast<Corner>(best);
}

Vec2 corner_point(const Rect& r, Corner c) {
    switch (c) {
        case Corner::SW: return {r.x_lo, r.y_lo};
        case Corner::SE: return {r.x_hi, r.y_lo};
        case Corner::NE: return {r.x_hi, r.y_hi};
        case Corner::NW: return {r.x_lo, r.y_hi};
    }
    return {r.x_lo, r.y_lo};
}

struct AgentRegion {
    Rect region;
    Corner corner;
    Vec2 launch;
};

// Region per agent plus the partition report for coordinated mode.
struct Layout {
    std::vector<AgentRegion> agents;
    PartitionReport report;
};

Layout build_layout(const Scenario& sc, bool enforce_partition) {
    Layout lay;
    if (sc.sim.mode == SwarmMode::Standalone) {
        AgentRegion a;
        a.region = sc.field.bounds();
        a.corner = nearest_corner(a.region, sc.field.launch_point);
        a.launch = corner_point(a.region, a.corner);
        lay.agents.push_back(a);
        return lay;
    }
    auto parts = partition_field(sc.field, sc.sim.n_agents);
    auto neg = negotiate(std::move(parts), sc.sim.max_rounds);
    lay.report = validate_partition(neg.assignments, sc.field);
    if (enforce_partition && !lay.report.ok)
        throw PartitionRefused("partition has overlap or vacant area; path feed refused",
                               lay.report);
    for (const auto& asn : neg.assignments) {
        AgentRegion a;
        a.region = asn.cell;
        a.corner = Corner::SW;
        a.launch = corner_point(a.region, a.corner);
        lay.agents.push_back(a);
    }
    return lay;
}

double run_spacing(const SimConfig& sim) {
    return sim.spacing_m > 0.0 ? sim.spacing_m : density_spacing(sim.dense);
}

int laps_for_day(const SimConfig& sim, int day) {
    if (sim.laps_per_day.empty()) return 6;
    const size_t i = std::min(static_cast<size_t>(day), sim.laps_per_day.size() - 1);
    return sim.laps_per_day[i];
}

double min_dist_to_lap(Vec2 p, const std::vector<Vec2>& wps) {
    if (wps.empty()) return std::numeric_limits<double>::infinity();
    double best = dist2d(p, wps[0]);
    for (size_t i = 1; i < wps.size(); ++i)
        best = std::min(best, point_segment_distance(p, wps[i - 1], wps[i]));
    return best;
}

enum class Phase { Takeoff, AltitudeCheck, Cruise, ReturnFly, ReturnDescend, Done };

struct FlyingAgent {
    AgentRegion reg;
    PathPlan plan;
    AgentState st;
    Phase phase = Phase::Takeoff;
    size_t wp = 0;
    size_t per_lap = 0;
};

double turn_angle_deg(Vec2 a, Vec2 b, Vec2 c) {
    const Vec2 u = b - a;
    const Vec2 v = c - b;
    const double nu = u.norm(), nv = v.norm();
    if (nu < 1e-12 || nv < 1e-12) return 0.0;
    double cosang = (u.x * v.x + u.y * v.y) / (nu * nv);
    cosang = std::clamp(cosang, -1.0, 1.0);
    return std::acos(cosang) * 180.0 / std::numbers::pi;
}

}  // namespace

PestPopulation build_pests(const Scenario& sc) {
    validate_species(sc.species);
    if (sc.pests.placement == PestPlacement::Explicit) {
        PestPopulation pop;
        pop.species = sc.species;
        for (Vec2 p : sc.pests.positions) {
            if (!sc.field.bounds().contains(p))
                throw ConfigError("explicit pest position outside the field");
            pop.individuals.push_back({p, true, 0.0});
        }
        return pop;
    }
    if (sc.pests.placement == PestPlacement::Uniform)
        return seed_pests(sc.field, sc.species, sc.pests.count, sc.sim.seed);

    // NearPath: uniform over the field, rejecting points out of emitter range
    // of every planned track (one lap per agent region).
    Layout lay = build_layout(sc, false);
    std::vector<std::vector<Vec2>> laps;
    for (const auto& a : lay.agents)
        laps.push_back(spiral_inward(a.region, run_spacing(sc.sim), a.corner));

    PestPopulation pop;
    pop.species = sc.species;
    Rng rng(mix_seed(sc.sim.seed, 0));
    int placed = 0;
    long long attempts = 0;
    const long long max_attempts = 1000LL * std::max(1, sc.pests.count);
    while (placed < sc.pests.count && attempts < max_attempts) {
        ++attempts;
        const Vec2 p{rng.uniform(0.0, sc.field.width_m), rng.uniform(0.0, sc.field.length_m)};
        bool in_range = false;
        for (const auto& lap : laps)
            if (min_dist_to_lap(p, lap) <= sc.emitter.effective_range_m) {
                in_range = true;
                break;
            }
        if (!in_range) continue;
        pop.individuals.push_back({p, true, 0.0});
        ++placed;
    }
    if (placed < sc.pests.count)
        throw ConfigError("near_path pest placement failed: field mostly out of range");
    return pop;
}

RunResult run(const Scenario& sc) {
    if (sc.sim.dt_s <= 0.0) throw ConfigError("sim.dt_s must be positive");
    if (sc.sim.days < 1) throw ConfigError("sim.days must be >= 1");
    validate_emitter(sc.emitter);
    validate_tricopter(sc.tricopter);

    const double dt = sc.sim.dt_s;
    const double spacing = run_spacing(sc.sim);
    const bool rf = sc.sim.rf_on && sc.emitter.rf_enabled;
    const double p4pi = sc.emitter.acoustic_power_w / kFourPi;
    const double range2 = sc.emitter.effective_range_m * sc.emitter.effective_range_m;
    const double dmin = 0.5 * sc.field.cell_size_m;
    const double dmin2 = dmin * dmin;

    Layout lay = build_layout(sc, true);

    RunResult res{.metrics = {},
                  .events = {},
                  .exposure = ExposureField(sc.field),
                  .initial_pests = build_pests(sc),
                  .final_pests = {},
                  .final_modes = {},
                  .partition_report = lay.report};

    PestPopulation pests = res.initial_pests;
    const size_t npest = pests.individuals.size();
    std::vector<double> px(npest), py(npest), intens(npest);
    for (size_t i = 0; i < npest; ++i) {
        px[i] = pests.individuals[i].position.x;
        py[i] = pests.individuals[i].position.y;
    }

    const std::uint64_t removal_seed = mix_seed(sc.sim.seed, 1);
    std::uint64_t global_step = 0;

    std::vector<FlyingAgent> agents(lay.agents.size());
    for (size_t i = 0; i < agents.size(); ++i) agents[i].reg = lay.agents[i];

    double t = 0.0;
    std::vector<uint8_t> exposed_today(npest, 0);

    for (int day = 0; day < sc.sim.days; ++day) {
        const int laps = laps_for_day(sc.sim, day);
        for (auto& a : agents) {
            a.plan = mission_path(a.reg.region, spacing, laps, a.reg.corner);
            a.per_lap = (a.plan.waypoints.size() - 1) / laps + 1;
            a.st = AgentState{};
            a.st.position = {a.reg.launch.x, a.reg.launch.y, 0.0};
            a.st.battery_j = sc.tricopter.battery_capacity_j;
            a.st.mode = Mode::Takeoff;
            a.st.home = a.reg.launch;
            a.phase = Phase::Takeoff;
            a.wp = 0;
        }

        const int present_at_start = pests.present_count();
        int removed_today = 0;
        std::fill(exposed_today.begin(), exposed_today.end(), 0);

        int extra_steps = 0;
        const long long step_cap = 400000;
        for (long long step = 0; step < step_cap; ++step) {
            bool all_terminal = true;
            for (const auto& a : agents)
                if (a.st.mode != Mode::Landed && a.st.mode != Mode::Beacon) all_terminal = false;
            if (all_terminal && ++extra_steps > 3) break;

            for (size_t ai = 0; ai < agents.size(); ++ai) {
                auto& a = agents[ai];
                const size_t ev0 = res.events.size();
                a.st = failsafe_check(a.st, sc.tricopter, t, res.events);
                for (size_t e = ev0; e < res.events.size(); ++e)
                    res.events[e].agent_id = static_cast<int>(ai);
                if (a.st.mode == Mode::Return && a.phase != Phase::ReturnFly &&
                    a.phase != Phase::ReturnDescend)
                    a.phase = Phase::ReturnFly;  // failsafe return-to-launch

                if (a.st.mode == Mode::Landed || a.st.mode == Mode::Crashed ||
                    a.st.mode == Mode::Beacon || a.st.mode == Mode::Idle)
                    continue;

                Vec3 target;
                switch (a.phase) {
                    case Phase::Takeoff:
                        target = {a.reg.launch.x, a.reg.launch.y, 1.0};
                        break;
                    case Phase::AltitudeCheck:
                        target = {a.reg.launch.x, a.reg.launch.y,
                                  cruise_altitude(sc.field.crop_at_point(a.reg.launch))};
                        break;
                    case Phase::Cruise: {
                        const Vec2 w = a.plan.waypoints[a.wp];
                        target = {w.x, w.y, cruise_altitude(sc.field.crop_at_point(w))};
                        break;
                    }
                    case Phase::ReturnFly:
                    case Phase::ReturnDescend: {
                        const double zt = a.phase == Phase::ReturnFly
                                              ? cruise_altitude(sc.field.crop_at_point(a.st.home))
                                              : 0.0;
                        target = {a.st.home.x, a.st.home.y, zt};
                        break;
                    }
                    case Phase::Done:
                        continue;
                }

                const int wi_before = a.st.waypoint_index;
                a.st = step_agent(a.st, target, sc.tricopter, dt);
                const bool arrived = a.st.waypoint_index > wi_before;

                switch (a.phase) {
                    case Phase::Takeoff:
                        if (arrived) {
                            a.phase = Phase::AltitudeCheck;
                            a.st.mode = Mode::AltitudeCheck;
                        }
                        break;
                    case Phase::AltitudeCheck:
                        if (arrived) {
                            a.phase = Phase::Cruise;
                            a.st.mode = Mode::Cruise;
                            res.events.push_back({t, EventKind::TakeoffComplete, a.st.position,
                                                  static_cast<int>(ai)});
                        }
                        break;
                    case Phase::Cruise:
                        if (arrived) {
                            // Lap boundaries fall every per_lap - 1 waypoints.
                            if (a.per_lap > 1 && a.wp > 0 && a.wp % (a.per_lap - 1) == 0) {
                                res.events.push_back({t, EventKind::LapComplete, a.st.position,
                                                      static_cast<int>(ai)});
                                ++res.metrics.laps_completed;
                            }
                            if (a.wp + 1 < a.plan.waypoints.size()) {
                                // Corner dwell for the upcoming heading change.
                                if (a.wp >= 1) {
                                    const double ang =
                                        turn_angle_deg(a.plan.waypoints[a.wp - 1],
                                                       a.plan.waypoints[a.wp],
                                                       a.plan.waypoints[a.wp + 1]);
                                    a.st.dwell_s = ang / sc.tricopter.yaw_rate_dps;
                                }
                                ++a.wp;
                            } else {
                                a.phase = Phase::ReturnFly;
                                a.st.mode = Mode::Return;
                                res.events.push_back({t, EventKind::ReturnInitiated,
                                                      a.st.position, static_cast<int>(ai)});
                            }
                        }
                        break;
                    case Phase::ReturnFly:
                        if (dist2d(a.st.position.xy(), a.st.home) <= kLandingTolM)
                            a.phase = Phase::ReturnDescend;
                        break;
                    default:
                        break;
                }

                // Emit while airborne.
                if (sc.sim.accumulate_exposure && a.st.position.z > 0.0)
                    res.exposure.accumulate(a.st.position.xy(), sc.emitter, dt);
            }

            // Acoustic removal draws, one per present pest per step.
            if (npest > 0) {
                std::fill(intens.begin(), intens.end(), 0.0);
                bool any_airborne = false;
                for (const auto& a : agents) {
                    if (a.st.position.z <= 0.0 || a.st.mode == Mode::Landed ||
                        a.st.mode == Mode::Crashed || a.st.mode == Mode::Beacon ||
                        a.st.mode == Mode::Idle)
                        continue;
                    any_airborne = true;
                    kernels::add_intensity(intens.data(), px.data(), py.data(), npest,
                                           a.st.position.x, a.st.position.y, p4pi, range2,
                                           dmin2);
                }
                if (any_airborne) {
                    for (size_t i = 0; i < npest; ++i) {
                        auto& ind = pests.individuals[i];
                        if (!ind.present) continue;
                        if (intens[i] <= 0.0) continue;
                        const double u = counter_uniform(removal_seed, i, global_step);
                        exposed_today[i] = 1;
                        const double p = repellence_probability(
                            pests.species, intens[i], sc.emitter.frequency_hz, ind.habituation,
                            rf, dt, sc.sim.k, sc.sim.i_ref);
                        if (u < p) {
                            ind.present = false;
                            ++removed_today;
                        }
                    }
                }
            }

            t += dt;
            ++global_step;
        }

        for (const auto& a : agents)
            res.metrics.energy_used_j += sc.tricopter.battery_capacity_j - a.st.battery_j;

        res.metrics.per_day_effectiveness.push_back(
            present_at_start > 0 ? static_cast<double>(removed_today) / present_at_start : 0.0);

        for (size_t i = 0; i < npest; ++i) {
            auto& ind = pests.individuals[i];
            if (ind.present && exposed_today[i])
                ind.habituation = habituate(ind.habituation, 1.0, pests.species);
        }
    }

    res.final_pests = pests;
    for (const auto& a : agents) res.final_modes.push_back(a.st.mode);

    const int before = res.initial_pests.present_count();
    res.metrics.effectiveness =
        before > 0 ? effectiveness(res.initial_pests, res.final_pests) : 0.0;

    // Union coverage across agent plans at the emitter's effect radius.
    std::vector<uint8_t> covered(static_cast<size_t>(sc.field.nx) * sc.field.ny, 0);
    for (const auto& a : agents) {
        const auto cov = coverage_map(a.plan, sc.emitter.effective_range_m, sc.field);
        for (size_t i = 0; i < covered.size(); ++i) covered[i] |= cov.covered[i];
    }
    size_t hit = 0;
    for (uint8_t c : covered) hit += c;
    res.metrics.coverage = covered.empty() ? 0.0 : static_cast<double>(hit) / covered.size();

    return res;
}

double mean_effectiveness(Scenario sc, int n_seeds) {
    double sum = 0.0;
    const std::uint64_t base = sc.sim.seed;
    for (int s = 0; s < n_seeds; ++s) {
        sc.sim.seed = base + static_cast<std::uint64_t>(s);
        sum += run(sc).metrics.effectiveness;
    }
    return sum / n_seeds;
}

CalibrationResult calibrate(const Scenario& base, const CalibrationTargets& targets,
                            int n_seeds, double tolerance) {
    if (targets.standalone <= 0.0 || targets.standalone > 1.0 || targets.coordinated <= 0.0 ||
        targets.coordinated > 1.0 || targets.system <= 0.0 || targets.system > 1.0)
        throw ConfigError("calibration targets must lie in (0, 1]");

    Scenario standalone = base;
    standalone.sim.mode = SwarmMode::Standalone;
    standalone.pests.placement = PestPlacement::NearPath;
    standalone.sim.accumulate_exposure = false;

    Scenario coordinated = base;
    coordinated.sim.mode = SwarmMode::Coordinated;
    coordinated.sim.n_agents = 4;
    coordinated.pests.placement = PestPlacement::Uniform;
    coordinated.sim.accumulate_exposure = false;

    Scenario system = base;
    system.sim.mode = SwarmMode::Standalone;
    system.pests.placement = PestPlacement::Uniform;
    system.sim.accumulate_exposure = false;

    const std::vector<double> k_grid = {0.0012, 0.0017, 0.002, 0.0023, 0.0026, 0.003, 0.0042};
    const std::vector<double> iref_grid = {0.002, 0.003, 0.004, 0.006, 0.008, 0.012, 0.024};

    CalibrationResult res;
    res.tolerance = tolerance;
    res.best.err = std::numeric_limits<double>::infinity();
    for (double iref : iref_grid) {
        for (double k : k_grid) {
            CalibrationCandidate c;
            c.k = k;
            c.i_ref = iref;
            standalone.sim.k = coordinated.sim.k = system.sim.k = k;
            standalone.sim.i_ref = coordinated.sim.i_ref = system.sim.i_ref = iref;
            c.mean_standalone = mean_effectiveness(standalone, n_seeds);
            c.mean_coordinated = mean_effectiveness(coordinated, n_seeds);
            c.mean_system = mean_effectiveness(system, n_seeds);
            const double e1 = c.mean_standalone - targets.standalone;
            const double e2 = c.mean_coordinated - targets.coordinated;
            const double e3 = c.mean_system - targets.system;
            c.err = e1 * e1 + e2 * e2 + e3 * e3;
            res.table.push_back(c);
            if (c.err < res.best.err) res.best = c;
        }
    }
    res.ok = std::abs(res.best.mean_standalone - targets.standalone) <= tolerance &&
             std::abs(res.best.mean_coordinated - targets.coordinated) <= tolerance &&
             std::abs(res.best.mean_system - targets.system) <= tolerance;
    return res;
}

HabituationSeries habituation_experiment(Scenario sc, int days) {
    sc.sim.days = days;
    sc.sim.accumulate_exposure = false;

    Scenario ultra = sc;
    ultra.sim.rf_on = false;
    Scenario with_rf = sc;
    with_rf.sim.rf_on = true;
    with_rf.emitter.rf_enabled = true;

    HabituationSeries out;
    out.ultrasonic_only = run(ultra).metrics.per_day_effectiveness;
    out.with_rf = run(with_rf).metrics.per_day_effectiveness;
    return out;
}

BaselineReport compare_baseline(const Metrics& m) {
    BaselineReport rep;
    rep.effectiveness = m.effectiveness;
    rep.gap = 0.5 * (rep.pesticide_band_lo + rep.pesticide_band_hi) - m.effectiveness;
    return rep;
}

}  // namespace abiot
