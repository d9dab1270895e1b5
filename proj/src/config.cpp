#include "abiot/config.hpp"

#include <fstream>

#include "abiot/errors.hpp"

namespace abiot {

json default_config() {
    return json{
        {"field",
         {{"width_m", 30.0},
          {"length_m", 30.0},
          {"cell_size_m", 0.5},
          {"crop_height_m", 1.0},  // constant, or a row-major 2D array
          {"launch_point", {0.0, 0.0}}}},
        {"species",
         {{"name", "field_cricket"},
          {"band_lo_hz", 20000.0},
          {"band_hi_hz", 60000.0},
          {"base_susceptibility", 1.0},
          {"habituation_days", 10.0},
          {"rf_susceptible", true},
          {"count", 200},
          {"placement", "uniform"},  // uniform | near_path | explicit
          {"positions", json::array()}}},
        {"emitter",
         {{"acoustic_power_w", 12.0},
          {"frequency_hz", nullptr},  // null: derived from the oscillator
          {"rf_enabled", true},
          {"effective_range_m", 15.0}}},
        {"oscillator",
         {{"r1_ohm", 10000.0}, {"r2_ohm", 33000.0}, {"capacitance_f", 470e-12}}},
        {"tricopter",
         {{"cruise_speed_mps", 3.0},
          {"climb_rate_mps", 1.0},
          {"yaw_rate_dps", 180.0},
          {"hover_power_w", 90.0},
          {"cruise_power_w", 110.0},
          {"battery_capacity_j", 400e3},
          {"low_battery_fraction", 0.2}}},
        {"path",
         {{"density", "dense"},  // dense (2 m) | sparse (4 m)
          {"spacing_m", nullptr},
          {"laps", 6}}},
        {"swarm",
         {{"mode", "standalone"},  // standalone | coordinated
          {"n_agents", 4},
          {"max_rounds", 10}}},
        {"sim",
         {{"dt_s", 0.5},
          {"days", 1},
          {"laps_per_day", nullptr},  // null: [path.laps] every day
          {"seed", 1},
          {"rf_on", true},
          {"calibration", {{"k", 0.0023}, {"i_ref", 0.006}}}}},
    };
}

namespace {

void merge_into(json& base, const json& user, const std::string& prefix) {
    if (!user.is_object())
        throw ConfigError("config section '" + prefix + "' must be an object");
    for (auto it = user.begin(); it != user.end(); ++it) {
        const std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (!base.contains(it.key())) throw ConfigError("unknown config key: " + path);
        if (base[it.key()].is_object() && it.value().is_object())
            merge_into(base[it.key()], it.value(), path);
        else
            base[it.key()] = it.value();
    }
}

double num(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path + " must be a number");
    return j.get<double>();
}

}  // namespace

json merge_config(const json& user) {
    json base = default_config();
    merge_into(base, user, "");
    return base;
}

void apply_override(json& doc, const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must have the form section.key=value: " + kv);
    const std::string key = kv.substr(0, eq);
    const std::string raw = kv.substr(eq + 1);

    json* node = &doc;
    size_t pos = 0;
    std::string walked;
    while (true) {
        const auto dot = key.find('.', pos);
        const std::string part = key.substr(pos, dot == std::string::npos ? dot : dot - pos);
        walked = walked.empty() ? part : walked + "." + part;
        if (!node->is_object() || !node->contains(part))
            throw ConfigError("unknown config key: " + walked);
        node = &(*node)[part];
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    const json parsed = json::parse(raw, nullptr, false);
    *node = parsed.is_discarded() ? json(raw) : parsed;
}

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json user = json::parse(in, nullptr, false);
    if (user.is_discarded()) throw ConfigError("config file is not valid JSON: " + path);
    return merge_config(user);
}

Scenario parse_scenario(const json& c) {
    Scenario sc;

    const auto& f = c.at("field");
    const double w = num(f.at("width_m"), "field.width_m");
    const double l = num(f.at("length_m"), "field.length_m");
    const double cs = num(f.at("cell_size_m"), "field.cell_size_m");
    if (w <= 0.0) throw ConfigError("field.width_m must be positive");
    if (l <= 0.0) throw ConfigError("field.length_m must be positive");
    const auto& lp = f.at("launch_point");
    if (!lp.is_array() || lp.size() != 2)
        throw ConfigError("field.launch_point must be [x, y]");
    const Vec2 launch{num(lp[0], "field.launch_point[0]"), num(lp[1], "field.launch_point[1]")};
    const auto& crop = f.at("crop_height_m");
    if (crop.is_number()) {
        sc.field = make_uniform_field(w, l, cs, crop.get<double>(), launch);
    } else if (crop.is_array()) {
        std::vector<double> grid;
        for (const auto& row : crop) {
            if (!row.is_array()) throw ConfigError("field.crop_height_m grid rows must be arrays");
            for (const auto& v : row) grid.push_back(num(v, "field.crop_height_m cell"));
        }
        sc.field = make_field(w, l, cs, grid, launch);
    } else {
        throw ConfigError("field.crop_height_m must be a number or a 2D array");
    }

    const auto& sp = c.at("species");
    sc.species.name = sp.at("name").get<std::string>();
    sc.species.band_lo_hz = num(sp.at("band_lo_hz"), "species.band_lo_hz");
    sc.species.band_hi_hz = num(sp.at("band_hi_hz"), "species.band_hi_hz");
    sc.species.base_susceptibility =
        num(sp.at("base_susceptibility"), "species.base_susceptibility");
    sc.species.habituation_days = num(sp.at("habituation_days"), "species.habituation_days");
    sc.species.rf_susceptible = sp.at("rf_susceptible").get<bool>();
    validate_species(sc.species);

    sc.pests.count = sp.at("count").get<int>();
    if (sc.pests.count < 0) throw ConfigError("species.count must be >= 0");
    const std::string placement = sp.at("placement").get<std::string>();
    if (placement == "uniform")
        sc.pests.placement = PestPlacement::Uniform;
    else if (placement == "near_path")
        sc.pests.placement = PestPlacement::NearPath;
    else if (placement == "explicit")
        sc.pests.placement = PestPlacement::Explicit;
    else
        throw ConfigError("species.placement must be uniform, near_path or explicit");
    for (const auto& p : sp.at("positions")) {
        if (!p.is_array() || p.size() != 2)
            throw ConfigError("species.positions entries must be [x, y]");
        sc.pests.positions.push_back({num(p[0], "species.positions"), num(p[1], "species.positions")});
    }
    if (sc.pests.placement == PestPlacement::Explicit)
        sc.pests.count = static_cast<int>(sc.pests.positions.size());

    const auto& osc = c.at("oscillator");
    OscillatorConfig oc;
    oc.r1_ohm = num(osc.at("r1_ohm"), "oscillator.r1_ohm");
    oc.r2_ohm = num(osc.at("r2_ohm"), "oscillator.r2_ohm");
    oc.capacitance_f = num(osc.at("capacitance_f"), "oscillator.capacitance_f");

    const auto& em = c.at("emitter");
    sc.emitter.acoustic_power_w = num(em.at("acoustic_power_w"), "emitter.acoustic_power_w");
    sc.emitter.frequency_hz = em.at("frequency_hz").is_null()
                                  ? oscillator_frequency(oc)
                                  : num(em.at("frequency_hz"), "emitter.frequency_hz");
    sc.emitter.rf_enabled = em.at("rf_enabled").get<bool>();
    sc.emitter.effective_range_m = num(em.at("effective_range_m"), "emitter.effective_range_m");
    validate_emitter(sc.emitter);

    const auto& tc = c.at("tricopter");
    sc.tricopter.cruise_speed_mps = num(tc.at("cruise_speed_mps"), "tricopter.cruise_speed_mps");
    sc.tricopter.climb_rate_mps = num(tc.at("climb_rate_mps"), "tricopter.climb_rate_mps");
    sc.tricopter.yaw_rate_dps = num(tc.at("yaw_rate_dps"), "tricopter.yaw_rate_dps");
    sc.tricopter.hover_power_w = num(tc.at("hover_power_w"), "tricopter.hover_power_w");
    sc.tricopter.cruise_power_w = num(tc.at("cruise_power_w"), "tricopter.cruise_power_w");
    sc.tricopter.battery_capacity_j =
        num(tc.at("battery_capacity_j"), "tricopter.battery_capacity_j");
    sc.tricopter.low_battery_fraction =
        num(tc.at("low_battery_fraction"), "tricopter.low_battery_fraction");
    validate_tricopter(sc.tricopter);

    const auto& pa = c.at("path");
    const std::string density = pa.at("density").get<std::string>();
    if (density != "dense" && density != "sparse")
        throw ConfigError("path.density must be dense or sparse");
    sc.sim.dense = density == "dense";
    sc.sim.spacing_m =
        pa.at("spacing_m").is_null() ? 0.0 : num(pa.at("spacing_m"), "path.spacing_m");
    const int laps = pa.at("laps").get<int>();
    if (laps < 1) throw ConfigError("path.laps must be >= 1");

    const auto& sw = c.at("swarm");
    const std::string mode = sw.at("mode").get<std::string>();
    if (mode == "standalone")
        sc.sim.mode = SwarmMode::Standalone;
    else if (mode == "coordinated")
        sc.sim.mode = SwarmMode::Coordinated;
    else
        throw ConfigError("swarm.mode must be standalone or coordinated");
    sc.sim.n_agents = sw.at("n_agents").get<int>();
    if (sc.sim.n_agents < 1) throw ConfigError("swarm.n_agents must be >= 1");
    sc.sim.max_rounds = sw.at("max_rounds").get<int>();
    if (sc.sim.max_rounds < 1) throw ConfigError("swarm.max_rounds must be >= 1");

    const auto& sm = c.at("sim");
    sc.sim.dt_s = num(sm.at("dt_s"), "sim.dt_s");
    if (sc.sim.dt_s <= 0.0) throw ConfigError("sim.dt_s must be positive");
    sc.sim.days = sm.at("days").get<int>();
    if (sc.sim.days < 1) throw ConfigError("sim.days must be >= 1");
    const auto& lpd = sm.at("laps_per_day");
    if (lpd.is_null()) {
        sc.sim.laps_per_day = {laps};
    } else if (lpd.is_number_integer()) {
        sc.sim.laps_per_day = {lpd.get<int>()};
    } else if (lpd.is_array()) {
        sc.sim.laps_per_day.clear();
        for (const auto& v : lpd) sc.sim.laps_per_day.push_back(v.get<int>());
        if (sc.sim.laps_per_day.empty())
            throw ConfigError("sim.laps_per_day must not be an empty array");
    } else {
        throw ConfigError("sim.laps_per_day must be an integer or an array of integers");
    }
    for (int lp_laps : sc.sim.laps_per_day)
        if (lp_laps < 1) throw ConfigError("sim.laps_per_day entries must be >= 1");
    sc.sim.seed = sm.at("seed").get<std::uint64_t>();
    sc.sim.rf_on = sm.at("rf_on").get<bool>();
    sc.sim.k = num(sm.at("calibration").at("k"), "sim.calibration.k");
    sc.sim.i_ref = num(sm.at("calibration").at("i_ref"), "sim.calibration.i_ref");
    if (sc.sim.k <= 0.0 || sc.sim.i_ref <= 0.0)
        throw ConfigError("sim.calibration constants must be positive");

    return sc;
}

}  // namespace abiot
