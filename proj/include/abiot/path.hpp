#pragma once

#include <vector>

#include "abiot/field.hpp"
#include "abiot/geometry.hpp"

namespace abiot {

// Corner ids, counter-clockwise from south-west.
enum class Corner { SW = 0, SE = 1, NE = 2, NW = 3 };

struct PathPlan {
    Rect region;
    double spacing_m = 0.0;
    int laps = 1;
    std::vector<Vec2> waypoints;  // all laps, shared endpoints merged
};

struct CoverageResult {
    double fraction = 0.0;
    std::vector<uint8_t> covered;  // per field cell, row-major
};

// Concentric rectangular rings from the perimeter inward, each inset by
// spacing_m, connected at the inset corner nearest the previous ring's end.
std::vector<Vec2> spiral_inward(const Rect& region, double spacing_m, Corner start_corner);

// Inward pass followed by its exact reverse; the turn point is not duplicated.
std::vector<Vec2> full_lap(const std::vector<Vec2>& inward);

PathPlan mission_path(const Rect& region, double spacing_m, int laps,
                      Corner start_corner = Corner::SW);

// Spacing presets for the path-density trade-off.
double density_spacing(bool dense);

// A cell is covered iff its center lies within effect_radius_m of some path
// segment.
CoverageResult coverage_map(const PathPlan& plan, double effect_radius_m,
                            const FieldSpec& field);

double path_length(const std::vector<Vec2>& wps);

}  // namespace abiot
