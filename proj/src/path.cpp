#include "abiot/path.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "abiot/errors.hpp"

namespace abiot {

namespace {

constexpr double kEps = 1e-9;

std::array<Vec2, 4> ring_corners(double lo_x, double lo_y, double hi_x, double hi_y) {
    return {Vec2{lo_x, lo_y}, Vec2{hi_x, lo_y}, Vec2{hi_x, hi_y}, Vec2{lo_x, hi_y}};
}

}  // namespace

std::vector<Vec2> spiral_inward(const Rect& region, double spacing_m, Corner start_corner) {
    const double w = region.width();
    const double h = region.height();
    if (w <= 0.0 || h <= 0.0 || spacing_m <= 0.0 || spacing_m > std::min(w, h) + kEps)
        throw DegenerateRegionError("spiral spacing exceeds region dimensions");

    // Build the spiral anchored at the SW corner, then reflect it so the
    // first waypoint lands exactly on the requested launch corner.
    const int sc = 0;
    std::vector<Vec2> local;

    // Track lines sit at offsets i*s, i = 0 .. ceil(extent/s) - 1; ring k
    // pairs track k with its mirror, and the last ring collapses to a line or
    // point when the spans cross.
    const int ntx = static_cast<int>(std::ceil(w / spacing_m - kEps));
    const int nty = static_cast<int>(std::ceil(h / spacing_m - kEps));
    for (int k = 0;; ++k) {
        const double lo = k * spacing_m;
        const double hi_x = (ntx - 1 - k) * spacing_m;
        const double hi_y = (nty - 1 - k) * spacing_m;
        if (hi_x < lo - kEps || hi_y < lo - kEps) break;

        const bool deg_x = hi_x <= lo + kEps;
        const bool deg_y = hi_y <= lo + kEps;

        if (deg_x && deg_y) {
            // Whole region one track wide in both axes: its center point.
            local.push_back(k == 0 ? Vec2{w / 2.0, h / 2.0}
                                   : Vec2{(lo + hi_x) / 2.0, (lo + hi_y) / 2.0});
            break;
        }
        if (deg_x || deg_y) {
            // Single straight pass; centered when it is the whole region.
            double cx = deg_x ? (k == 0 ? w / 2.0 : (lo + hi_x) / 2.0) : 0.0;
            double cy = deg_y ? (k == 0 ? h / 2.0 : (lo + hi_y) / 2.0) : 0.0;
            Vec2 a, b;
            if (deg_x) {
                a = {cx, lo};
                b = {cx, hi_y};
            } else {
                a = {lo, cy};
                b = {hi_x, cy};
            }
            // Enter at the end nearest the previous waypoint (or the launch
            // corner for a fully degenerate region).
            Vec2 ref = local.empty()
                           ? ring_corners(0.0, 0.0, w, h)[sc]
                           : local.back();
            if (dist2d(ref, b) < dist2d(ref, a)) std::swap(a, b);
            local.push_back(a);
            local.push_back(b);
            break;
        }

        const auto corners = ring_corners(lo, lo, hi_x, hi_y);
        for (int j = 0; j < 4; ++j) local.push_back(corners[(sc + j) % 4]);

        // Peek at the next ring; if it exists, run partway down the closing
        // edge to the point abreast of its entry corner.
        const double nlo = lo + spacing_m;
        const double nhi_x = (ntx - 2 - k) * spacing_m;
        const double nhi_y = (nty - 2 - k) * spacing_m;
        if (nhi_x < nlo - kEps || nhi_y < nlo - kEps) break;

        double next_x, next_y;
        if (nhi_x <= nlo + kEps && nhi_y <= nlo + kEps) {
            next_x = (nlo + nhi_x) / 2.0;
            next_y = (nlo + nhi_y) / 2.0;
        } else if (nhi_x <= nlo + kEps) {
            next_x = (nlo + nhi_x) / 2.0;
            next_y = nlo;
        } else if (nhi_y <= nlo + kEps) {
            next_x = nlo;
            next_y = (nlo + nhi_y) / 2.0;
        } else {
            const auto nc = ring_corners(nlo, nlo, nhi_x, nhi_y);
            next_x = nc[sc].x;
            next_y = nc[sc].y;
        }
        // Closing edge runs from corners[(sc+3)%4] back toward corners[sc];
        // it is vertical when those two share x.
        const Vec2 last = corners[(sc + 3) % 4];
        const Vec2 first = corners[sc];
        if (std::abs(last.x - first.x) < kEps)
            local.push_back({first.x, next_y});
        else
            local.push_back({next_x, first.y});
    }

    const bool flip_x = start_corner == Corner::SE || start_corner == Corner::NE;
    const bool flip_y = start_corner == Corner::NW || start_corner == Corner::NE;
    for (auto& p : local) {
        if (flip_x) p.x = w - p.x;
        if (flip_y) p.y = h - p.y;
        p.x += region.x_lo;
        p.y += region.y_lo;
    }
    return local;
}

std::vector<Vec2> full_lap(const std::vector<Vec2>& inward) {
    std::vector<Vec2> lap = inward;
    for (auto it = inward.rbegin() + 1; it != inward.rend(); ++it) lap.push_back(*it);
    return lap;
}

double density_spacing(bool dense) { return dense ? 2.0 : 4.0; }

PathPlan mission_path(const Rect& region, double spacing_m, int laps, Corner start_corner) {
    if (laps < 1) throw ConfigError("laps must be >= 1");
    const auto lap = full_lap(spiral_inward(region, spacing_m, start_corner));

    PathPlan plan;
    plan.region = region;
    plan.spacing_m = spacing_m;
    plan.laps = laps;
    plan.waypoints = lap;
    for (int i = 1; i < laps; ++i)
        plan.waypoints.insert(plan.waypoints.end(), lap.begin() + 1, lap.end());
    return plan;
}

double path_length(const std::vector<Vec2>& wps) {
    double len = 0.0;
    for (size_t i = 1; i < wps.size(); ++i) len += dist2d(wps[i - 1], wps[i]);
    return len;
}

CoverageResult coverage_map(const PathPlan& plan, double effect_radius_m,
                            const FieldSpec& field) {
    if (effect_radius_m <= 0.0) throw ConfigError("effect radius must be positive");

    CoverageResult res;
    res.covered.assign(static_cast<size_t>(field.nx) * field.ny, 0);
    if (plan.waypoints.empty()) return res;

    // Laps repeat the same geometry; one lap's segments suffice.
    const size_t per_lap = (plan.waypoints.size() - 1) / plan.laps + 1;
    const auto& wp = plan.waypoints;

    int covered_count = 0;
    for (int iy = 0; iy < field.ny; ++iy) {
        for (int ix = 0; ix < field.nx; ++ix) {
            const Vec2 c = field.cell_center(ix, iy);
            bool hit = dist2d(c, wp[0]) <= effect_radius_m;
            for (size_t i = 1; !hit && i < per_lap; ++i)
                hit = point_segment_distance(c, wp[i - 1], wp[i]) <= effect_radius_m;
            if (hit) {
                res.covered[static_cast<size_t>(iy) * field.nx + ix] = 1;
                ++covered_count;
            }
        }
    }
    res.fraction = static_cast<double>(covered_count) / (static_cast<double>(field.nx) * field.ny);
    return res;
}

}  // namespace abiot
