#include "abiot/field.hpp"

#include <cmath>

#include "abiot/errors.hpp"

namespace abiot {

namespace {

int grid_dim(double extent, double cell) {
    return static_cast<int>(std::lround(extent / cell));
}

bool on_boundary(Vec2 p, double w, double l) {
    const double eps = 1e-9;
    const bool x_edge = std::abs(p.x) < eps || std::abs(p.x - w) < eps;
    const bool y_edge = std::abs(p.y) < eps || std::abs(p.y - l) < eps;
    const bool inside = p.x >= -eps && p.x <= w + eps && p.y >= -eps && p.y <= l + eps;
    return inside && (x_edge || y_edge);
}

}  // namespace

double FieldSpec::crop_at_point(Vec2 p) const {
    int ix = static_cast<int>(p.x / cell_size_m);
    int iy = static_cast<int>(p.y / cell_size_m);
    ix = std::clamp(ix, 0, nx - 1);
    iy = std::clamp(iy, 0, ny - 1);
    return crop_at(ix, iy);
}

int PestPopulation::present_count() const {
    int n = 0;
    for (const auto& ind : individuals)
        if (ind.present) ++n;
    return n;
}

FieldSpec make_field(double width_m, double length_m, double cell_size_m,
                     const std::vector<double>& crop_height_grid, Vec2 launch_point) {
    if (width_m <= 0.0) throw ConfigError("field.width_m must be positive");
    if (length_m <= 0.0) throw ConfigError("field.length_m must be positive");
    if (cell_size_m <= 0.0 || cell_size_m > std::min(width_m, length_m))
        throw ConfigError("field.cell_size_m must be in (0, min(width_m, length_m)]");

    FieldSpec f;
    f.width_m = width_m;
    f.length_m = length_m;
    f.cell_size_m = cell_size_m;
    f.nx = grid_dim(width_m, cell_size_m);
    f.ny = grid_dim(length_m, cell_size_m);
    if (crop_height_grid.size() != static_cast<size_t>(f.nx) * f.ny)
        throw ConfigError("field.crop_height_m grid shape does not match field dimensions");
    for (double h : crop_height_grid)
        if (h < 0.0) throw ConfigError("field.crop_height_m cells must be >= 0");
    if (!on_boundary(launch_point, width_m, length_m))
        throw ConfigError("field.launch_point must lie on the field boundary");
    f.crop_height_m = crop_height_grid;
    f.launch_point = launch_point;
    return f;
}

FieldSpec make_uniform_field(double width_m, double length_m, double cell_size_m,
                             double crop_height_m, Vec2 launch_point) {
    if (width_m <= 0.0) throw ConfigError("field.width_m must be positive");
    if (length_m <= 0.0) throw ConfigError("field.length_m must be positive");
    if (cell_size_m <= 0.0 || cell_size_m > std::min(width_m, length_m))
        throw ConfigError("field.cell_size_m must be in (0, min(width_m, length_m)]");
    const size_t n = static_cast<size_t>(grid_dim(width_m, cell_size_m)) *
                     grid_dim(length_m, cell_size_m);
    return make_field(width_m, length_m, cell_size_m,
                      std::vector<double>(n, crop_height_m), launch_point);
}

void validate_species(const PestSpecies& sp) {
    if (!(sp.band_lo_hz > 0.0 && sp.band_lo_hz < sp.band_hi_hz))
        throw ConfigError("species band must satisfy 0 < band_lo_hz < band_hi_hz");
    if (sp.base_susceptibility < 0.0 || sp.base_susceptibility > 1.0)
        throw ConfigError("species.base_susceptibility must be in [0, 1]");
    if (sp.habituation_days <= 0.0)
        throw ConfigError("species.habituation_days must be positive");
}

PestPopulation seed_pests(const FieldSpec& field, const PestSpecies& species, int count,
                          std::uint64_t seed) {
    if (count < 0) throw ConfigError("pest count must be >= 0");
    validate_species(species);

    PestPopulation pop;
    pop.species = species;
    pop.individuals.reserve(count);
    Rng rng(mix_seed(seed, 0));
    for (int i = 0; i < count; ++i) {
        PestIndividual ind;
        ind.position = {rng.uniform(0.0, field.width_m), rng.uniform(0.0, field.length_m)};
        pop.individuals.push_back(ind);
    }
    return pop;
}

double effectiveness(const PestPopulation& before, const PestPopulation& after) {
    if (before.individuals.size() != after.individuals.size())
        throw UndefinedMetricError("populations differ in individual count");
    const int nb = before.present_count();
    if (nb == 0) throw UndefinedMetricError("no pests present before the run");
    const int na = after.present_count();
    return static_cast<double>(nb - na) / nb;
}

}  // namespace abiot
