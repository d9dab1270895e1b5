#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "abiot/geometry.hpp"
#include "abiot/rng.hpp"

namespace abiot {

// Rectangular field with a per-cell crop height grid. Cell (ix, iy) spans
// [ix*cell, (ix+1)*cell) x [iy*cell, (iy+1)*cell), origin at the field's
// south-west corner.
struct FieldSpec {
    double width_m = 0.0;
    double length_m = 0.0;
    double cell_size_m = 0.5;
    int nx = 0;
    int ny = 0;
    std::vector<double> crop_height_m;  // row-major, ny rows of nx
    Vec2 launch_point;

    double crop_at(int ix, int iy) const { return crop_height_m[static_cast<size_t>(iy) * nx + ix]; }
    double crop_at_point(Vec2 p) const;
    Vec2 cell_center(int ix, int iy) const {
        return {(ix + 0.5) * cell_size_m, (iy + 0.5) * cell_size_m};
    }
    Rect bounds() const { return {0.0, 0.0, width_m, length_m}; }
};

struct PestSpecies {
    std::string name;
    double band_lo_hz = 0.0;
    double band_hi_hz = 0.0;
    double base_susceptibility = 1.0;
    double habituation_days = 10.0;
    bool rf_susceptible = true;
};

struct PestIndividual {
    Vec2 position;
    bool present = true;
    double habituation = 0.0;  // in [0, 1]
};

struct PestPopulation {
    PestSpecies species;
    std::vector<PestIndividual> individuals;

    int present_count() const;
};

FieldSpec make_field(double width_m, double length_m, double cell_size_m,
                     const std::vector<double>& crop_height_grid, Vec2 launch_point);
FieldSpec make_uniform_field(double width_m, double length_m, double cell_size_m,
                             double crop_height_m, Vec2 launch_point);

void validate_species(const PestSpecies& sp);

// Uniform random placement over the field, deterministic per seed.
PestPopulation seed_pests(const FieldSpec& field, const PestSpecies& species, int count,
                          std::uint64_t seed);

// Fraction of initially present pests removed. Throws UndefinedMetricError if
// nothing was present before.
double effectiveness(const PestPopulation& before, const PestPopulation& after);

}  // namespace abiot
