#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "abiot/acoustics.hpp"
#include "abiot/field.hpp"
#include "abiot/flight.hpp"
#include "abiot/path.hpp"
#include "abiot/swarm.hpp"

namespace abiot {

enum class SwarmMode { Standalone, Coordinated };
enum class PestPlacement { Uniform, NearPath, Explicit };

struct SimConfig {
    double dt_s = 0.5;
    int days = 1;
    std::vector<int> laps_per_day = {6};  // last entry repeats for later days
    SwarmMode mode = SwarmMode::Standalone;
    int n_agents = 1;
    int max_rounds = 10;
    bool rf_on = true;
    std::uint64_t seed = 1;
    double k = 0.0023;     // repellence calibration constants
    double i_ref = 0.006;  // W/m^2; intensity saturates above this
    bool dense = true;
    double spacing_m = 0.0;  // 0 = take from density profile
    bool accumulate_exposure = true;
};

struct PestSetup {
    int count = 200;
    PestPlacement placement = PestPlacement::Uniform;
    std::vector<Vec2> positions;  // used when placement == Explicit
};

// Everything one run needs.
struct Scenario {
    FieldSpec field;
    PestSpecies species;
    EmitterSpec emitter;
    TricopterParams tricopter;
    PestSetup pests;
    SimConfig sim;
};

struct Metrics {
    double effectiveness = 0.0;
    double coverage = 0.0;
    double energy_used_j = 0.0;
    int laps_completed = 0;
    std::vector<double> per_day_effectiveness;
};

struct RunResult {
    Metrics metrics;
    std::vector<MissionEvent> events;
    ExposureField exposure;
    PestPopulation initial_pests;
    PestPopulation final_pests;
    std::vector<Mode> final_modes;
    PartitionReport partition_report;  // coordinated mode only
};

// Deterministic per (scenario, seed). Coordinated mode refuses to fly unless
// the negotiated partition validates clean; the thrown error carries the
// report text.
struct PartitionRefused : std::runtime_error {
    PartitionReport report;
    PartitionRefused(const std::string& what, PartitionReport rep)
        : std::runtime_error(what), report(rep) {}
};

RunResult run(const Scenario& sc);

PestPopulation build_pests(const Scenario& sc);

struct CalibrationTargets {
    double standalone = 0.895;
    double coordinated = 0.83;
    double system = 0.865;
};

struct CalibrationCandidate {
    double k = 0.0;
    double i_ref = 0.0;
    double mean_standalone = 0.0;
    double mean_coordinated = 0.0;
    double mean_system = 0.0;
    double err = 0.0;
};

struct CalibrationResult {
    CalibrationCandidate best;
    bool ok = false;  // all three means within tolerance of their targets
    double tolerance = 0.03;
    std::vector<CalibrationCandidate> table;
};

// Grid search over (k, i_ref) against the three effectiveness targets, each
// scored as the mean over n_seeds seeds.
CalibrationResult calibrate(const Scenario& base, const CalibrationTargets& targets,
                            int n_seeds = 20, double tolerance = 0.03);

double mean_effectiveness(Scenario sc, int n_seeds);

struct HabituationSeries {
    std::vector<double> ultrasonic_only;
    std::vector<double> with_rf;
};

// Same seeds and field for both variants; returns per-day effectiveness.
HabituationSeries habituation_experiment(Scenario sc, int days = 20);

struct BaselineReport {
    double effectiveness = 0.0;
    double pesticide_band_lo = 0.92;
    double pesticide_band_hi = 0.93;
    double gap = 0.0;  // band midpoint minus run effectiveness
};

BaselineReport compare_baseline(const Metrics& m);

}  // namespace abiot
