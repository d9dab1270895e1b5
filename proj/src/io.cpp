#include "abiot/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "abiot/path.hpp"

namespace abiot {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
        if (!out.good()) throw std::runtime_error("short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::string metrics_csv(const Metrics& m) {
    std::string s = "metric,value\n";
    s += "effectiveness," + format_double(m.effectiveness) + "\n";
    s += "coverage," + format_double(m.coverage) + "\n";
    s += "energy_used_j," + format_double(m.energy_used_j) + "\n";
    s += "laps_completed," + std::to_string(m.laps_completed) + "\n";
    for (size_t d = 0; d < m.per_day_effectiveness.size(); ++d)
        s += "day_" + std::to_string(d + 1) + "_effectiveness," +
             format_double(m.per_day_effectiveness[d]) + "\n";
    return s;
}

std::string events_jsonl(const std::vector<MissionEvent>& events) {
    std::string s;
    for (const auto& e : events) {
        s += "{\"time_s\":" + format_double(e.time_s) + ",\"kind\":\"" + event_kind_name(e.kind) +
             "\",\"x_m\":" + format_double(e.position.x) + ",\"y_m\":" +
             format_double(e.position.y) + ",\"z_m\":" + format_double(e.position.z) +
             ",\"agent\":" + std::to_string(e.agent_id) + "}\n";
    }
    return s;
}

std::string exposure_pgm(const ExposureField& ef) {
    const double max = ef.max_dose();
    std::string s = "P2\n" + std::to_string(ef.nx()) + " " + std::to_string(ef.ny()) + "\n65535\n";
    for (int iy = ef.ny() - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < ef.nx(); ++ix) {
            const int v = max > 0.0
                              ? static_cast<int>(std::lround(ef.at(ix, iy) / max * 65535.0))
                              : 0;
            s += std::to_string(v);
            s += ix + 1 < ef.nx() ? ' ' : '\n';
        }
    }
    return s;
}

std::string plan_csv(const Rect& region, double spacing_m, int laps, Corner start_corner) {
    const auto lap = full_lap(spiral_inward(region, spacing_m, start_corner));
    std::string s = "lap,seq,x_m,y_m\n";
    for (int l = 1; l <= laps; ++l) {
        for (size_t i = 0; i < lap.size(); ++i)
            s += std::to_string(l) + "," + std::to_string(i) + "," + format_double(lap[i].x) +
                 "," + format_double(lap[i].y) + "\n";
    }
    return s;
}

}  // namespace abiot
