#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "abiot/config.hpp"
#include "abiot/errors.hpp"
#include "abiot/io.hpp"
#include "abiot/kernels.hpp"
#include "abiot/sim.hpp"

namespace fs = std::filesystem;
using namespace abiot;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitPartition = 3;
constexpr int kExitCalibration = 4;

json resolved_doc(const std::string& config_path, const std::vector<std::string>& overrides) {
    json doc = load_config_file(config_path);
    for (const auto& kv : overrides) apply_override(doc, kv);
    return doc;
}

json report_json(const PartitionReport& rep) {
    return json{{"overlap_area_m2", rep.overlap_area_m2},
                {"gap_area_m2", rep.gap_area_m2},
                {"ok", rep.ok}};
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::vector<std::string>& overrides) {
    const json doc = resolved_doc(config_path, overrides);
    const Scenario sc = parse_scenario(doc);

    RunResult res;
    try {
        res = run(sc);
    } catch (const PartitionRefused& e) {
        std::cerr << "partition refused: " << report_json(e.report).dump() << "\n";
        return kExitPartition;
    }

    fs::create_directories(out_dir);
    atomic_write((fs::path(out_dir) / "metrics.csv").string(), metrics_csv(res.metrics));
    atomic_write((fs::path(out_dir) / "events.jsonl").string(), events_jsonl(res.events));
    atomic_write((fs::path(out_dir) / "exposure.pgm").string(), exposure_pgm(res.exposure));
    atomic_write((fs::path(out_dir) / "resolved-config.json").string(), doc.dump(2) + "\n");

    std::cout << "effectiveness " << format_double(res.metrics.effectiveness) << " coverage "
              << format_double(res.metrics.coverage) << " laps " << res.metrics.laps_completed
              << "\n";
    return 0;
}

int cmd_plan(const std::string& config_path, const std::string& out_path,
             const std::vector<std::string>& overrides) {
    const json doc = resolved_doc(config_path, overrides);
    const Scenario sc = parse_scenario(doc);
    const Rect region = sc.field.bounds();
    const double spacing =
        sc.sim.spacing_m > 0.0 ? sc.sim.spacing_m : density_spacing(sc.sim.dense);
    const int laps = sc.sim.laps_per_day.front();
    atomic_write(out_path, plan_csv(region, spacing, laps, Corner::SW));
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              const std::vector<std::string>& overrides, const std::string& param,
              const std::vector<std::string>& values, int seeds) {
    const json base_doc = resolved_doc(config_path, overrides);

    struct Job {
        std::string value;
        std::uint64_t seed;
        Metrics metrics;
    };
    std::vector<Job> jobs;
    for (const auto& v : values)
        for (int s = 0; s < seeds; ++s)
            jobs.push_back({v, static_cast<std::uint64_t>(s + 1), {}});

    // Validate every scenario before spawning workers.
    std::vector<Scenario> scenarios;
    scenarios.reserve(jobs.size());
    for (const auto& j : jobs) {
        json doc = base_doc;
        apply_override(doc, param + "=" + j.value);
        apply_override(doc, "sim.seed=" + std::to_string(j.seed));
        scenarios.push_back(parse_scenario(doc));
        scenarios.back().sim.accumulate_exposure = false;
    }

    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("ABIOT_SIM_THREADS"))
        threads = std::max(1u, static_cast<unsigned>(std::atoi(cap)));
    threads = std::min<unsigned>(threads, jobs.size());

    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1))
            jobs[i].metrics = run(scenarios[i]).metrics;
    };
    std::vector<std::thread> pool;
    for (unsigned tindex = 1; tindex < threads; ++tindex) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::string csv = "param,value,seed,effectiveness,coverage,energy_used_j,laps_completed\n";
    for (const auto& j : jobs)
        csv += param + "," + j.value + "," + std::to_string(j.seed) + "," +
               format_double(j.metrics.effectiveness) + "," + format_double(j.metrics.coverage) +
               "," + format_double(j.metrics.energy_used_j) + "," +
               std::to_string(j.metrics.laps_completed) + "\n";

    fs::create_directories(out_dir);
    atomic_write((fs::path(out_dir) / "sweep.csv").string(), csv);
    return 0;
}

int cmd_calibrate(const std::string& config_path, const std::string& out_path,
                  const std::vector<std::string>& overrides, int seeds) {
    const json doc = resolved_doc(config_path, overrides);
    const Scenario sc = parse_scenario(doc);

    const CalibrationResult res = calibrate(sc, CalibrationTargets{}, seeds);

    json out{{"k", res.best.k},
             {"i_ref", res.best.i_ref},
             {"ok", res.ok},
             {"tolerance", res.tolerance},
             {"means",
              {{"standalone", res.best.mean_standalone},
               {"coordinated", res.best.mean_coordinated},
               {"system", res.best.mean_system}}},
             {"table", json::array()}};
    for (const auto& c : res.table)
        out["table"].push_back({{"k", c.k},
                                {"i_ref", c.i_ref},
                                {"standalone", c.mean_standalone},
                                {"coordinated", c.mean_coordinated},
                                {"system", c.mean_system},
                                {"err", c.err}});
    atomic_write(out_path, out.dump(2) + "\n");
    if (!res.ok) {
        std::cerr << "calibration failed; best candidate written to " << out_path << "\n";
        return kExitCalibration;
    }
    return 0;
}

int cmd_validate_partition(const std::string& config_path, const std::string& assignments_path,
                           const std::vector<std::string>& overrides) {
    const json doc = resolved_doc(config_path, overrides);
    const Scenario sc = parse_scenario(doc);

    std::ifstream in(assignments_path);
    if (!in) throw ConfigError("cannot open assignments file: " + assignments_path);
    const json aj = json::parse(in, nullptr, false);
    if (aj.is_discarded()) throw ConfigError("assignments file is not valid JSON");

    std::vector<CellAssignment> assignments;
    for (const auto& a : aj.at("assignments")) {
        CellAssignment ca;
        ca.agent_id = a.at("agent_id").get<int>();
        const auto& cell = a.at("cell");
        ca.cell = {cell.at(0).get<double>(), cell.at(1).get<double>(), cell.at(2).get<double>(),
                   cell.at(3).get<double>()};
        assignments.push_back(ca);
    }
    const PartitionReport rep = validate_partition(assignments, sc.field);
    std::cout << report_json(rep).dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"abiot - sonic pest-control tricopter mission simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out = "out";
    std::vector<std::string> overrides;
    int seeds = 20;
    std::string param;
    std::vector<std::string> values;
    std::string assignments_path;
    std::string backend;

    app.add_option("--backend", backend, "Force kernel backend: scalar, avx2 or neon");

    auto add_common = [&](CLI::App* sub, bool with_out) {
        sub->add_option("--config", config_path, "Run config JSON")->required();
        if (with_out) sub->add_option("--out", out, "Output directory or file");
        sub->add_option("--override", overrides, "Dotted-path override key=value");
    };

    auto* s_run = app.add_subcommand("run", "Run one mission and write outputs");
    add_common(s_run, true);

    auto* s_plan = app.add_subcommand("plan", "Write the coverage waypoint CSV");
    add_common(s_plan, true);

    auto* s_sweep = app.add_subcommand("sweep", "Run a parameter sweep");
    add_common(s_sweep, true);
    s_sweep->add_option("--param", param, "Dotted config path to sweep")->required();
    s_sweep->add_option("--values", values, "Values for the swept parameter")
        ->required()
        ->delimiter(',');
    s_sweep->add_option("--seeds", seeds, "Seeds per value");

    auto* s_cal = app.add_subcommand("calibrate", "Grid-search repellence constants");
    add_common(s_cal, true);
    s_cal->add_option("--seeds", seeds, "Seeds per candidate scenario");

    auto* s_val = app.add_subcommand("validate-partition", "Check a partition for overlap/gaps");
    add_common(s_val, false);
    s_val->add_option("--assignments", assignments_path, "Assignments JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!backend.empty()) {
            if (backend == "scalar")
                kernels::set_backend(kernels::Backend::Scalar);
            else if (backend == "avx2")
                kernels::set_backend(kernels::Backend::Avx2);
            else if (backend == "neon")
                kernels::set_backend(kernels::Backend::Neon);
            else
                throw ConfigError("unknown backend: " + backend);
        }
        if (s_run->parsed()) return cmd_run(config_path, out, overrides);
        if (s_plan->parsed())
            return cmd_plan(config_path, out == "out" ? "plan.csv" : out, overrides);
        if (s_sweep->parsed()) return cmd_sweep(config_path, out, overrides, param, values, seeds);
        if (s_cal->parsed())
            return cmd_calibrate(config_path, out == "out" ? "calibration.json" : out, overrides,
                                 seeds);
        if (s_val->parsed()) return cmd_validate_partition(config_path, assignments_path, overrides);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
