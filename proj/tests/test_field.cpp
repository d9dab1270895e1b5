#include <doctest.h>

#include "abiot/errors.hpp"
#include "abiot/field.hpp"

using namespace abiot;

namespace {

PestSpecies cricket() {
    return {"field_cricket", 20000.0, 60000.0, 1.0, 10.0, true};
}

// Population of n individuals with the first `present` flagged present.
PestPopulation pop_with(int n, int present) {
    PestPopulation p;
    p.species = cricket();
    for (int i = 0; i < n; ++i) p.individuals.push_back({{0.0, 0.0}, i < present, 0.0});
    return p;
}

}  // namespace

TEST_CASE("uniform field expands a constant crop height to the full grid") {
    const FieldSpec f = make_uniform_field(30.0, 30.0, 0.5, 1.0, {0.0, 0.0});
    CHECK(f.nx == 60);
    CHECK(f.ny == 60);
    CHECK(f.crop_height_m.size() == 3600);
    for (double h : f.crop_height_m) CHECK(h == 1.0);
    CHECK(f.crop_at_point({15.1, 3.7}) == 1.0);
}

TEST_CASE("grid dimensions follow from extent and cell size") {
    const FieldSpec f = make_uniform_field(20.0, 10.0, 0.5, 0.8, {0.0, 0.0});
    CHECK(f.nx == 40);
    CHECK(f.ny == 20);
}

TEST_CASE("field construction rejects bad inputs") {
    CHECK_THROWS_AS(make_uniform_field(-1.0, 10.0, 0.5, 1.0, {0.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(make_uniform_field(10.0, 10.0, 0.0, 1.0, {0.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(make_uniform_field(10.0, 10.0, 11.0, 1.0, {0.0, 0.0}), ConfigError);
    // launch point must sit on the boundary
    CHECK_THROWS_AS(make_uniform_field(10.0, 10.0, 0.5, 1.0, {5.0, 5.0}), ConfigError);
    CHECK_NOTHROW(make_uniform_field(10.0, 10.0, 0.5, 1.0, {5.0, 10.0}));
    // grid shape mismatch
    CHECK_THROWS_AS(make_field(10.0, 10.0, 0.5, std::vector<double>(10, 1.0), {0.0, 0.0}),
                    ConfigError);
    // negative crop height cell
    std::vector<double> grid(400, 1.0);
    grid[7] = -0.1;
    CHECK_THROWS_AS(make_field(10.0, 10.0, 0.5, grid, {0.0, 0.0}), ConfigError);
}

TEST_CASE("species validation enforces band and parameter ranges") {
    CHECK_NOTHROW(validate_species(cricket()));
    PestSpecies sp = cricket();
    sp.band_lo_hz = sp.band_hi_hz;
    CHECK_THROWS_AS(validate_species(sp), ConfigError);
    sp = cricket();
    sp.base_susceptibility = 1.5;
    CHECK_THROWS_AS(validate_species(sp), ConfigError);
    sp = cricket();
    sp.habituation_days = 0.0;
    CHECK_THROWS_AS(validate_species(sp), ConfigError);
}

TEST_CASE("seed_pests: count zero gives an empty population") {
    const FieldSpec f = make_uniform_field(30.0, 30.0, 0.5, 1.0, {0.0, 0.0});
    CHECK(seed_pests(f, cricket(), 0, 7).individuals.empty());
}

TEST_CASE("seed_pests is deterministic per seed and stays in bounds") {
    const FieldSpec f = make_uniform_field(30.0, 20.0, 0.5, 1.0, {0.0, 0.0});
    const PestPopulation a = seed_pests(f, cricket(), 200, 7);
    const PestPopulation b = seed_pests(f, cricket(), 200, 7);
    const PestPopulation c = seed_pests(f, cricket(), 200, 8);
    REQUIRE(a.individuals.size() == 200);
    bool all_equal = true;
    bool any_differs_from_c = false;
    for (size_t i = 0; i < 200; ++i) {
        all_equal = all_equal && a.individuals[i].position == b.individuals[i].position;
        any_differs_from_c =
            any_differs_from_c || !(a.individuals[i].position == c.individuals[i].position);
        CHECK(f.bounds().contains(a.individuals[i].position));
        CHECK(a.individuals[i].present);
        CHECK(a.individuals[i].habituation == 0.0);
    }
    CHECK(all_equal);
    CHECK(any_differs_from_c);
}

TEST_CASE("effectiveness is the removed fraction of initially present pests") {
    CHECK(effectiveness(pop_with(200, 200), pop_with(200, 27)) == doctest::Approx(0.865));
    CHECK(effectiveness(pop_with(200, 200), pop_with(200, 200)) == 0.0);
    CHECK(effectiveness(pop_with(100, 100), pop_with(100, 0)) == 1.0);
}

TEST_CASE("effectiveness error cases") {
    CHECK_THROWS_AS(effectiveness(pop_with(10, 0), pop_with(10, 0)), UndefinedMetricError);
    CHECK_THROWS_AS(effectiveness(pop_with(10, 10), pop_with(9, 9)), UndefinedMetricError);
}

TEST_CASE("effectiveness stays in [0, 1] over random before/after pairs") {
    Rng rng(42);
    for (int it = 0; it < 100; ++it) {
        const int n = 1 + static_cast<int>(rng.uniform(0.0, 50.0));
        const int before = 1 + static_cast<int>(rng.uniform(0.0, n));
        const int after = static_cast<int>(rng.uniform(0.0, before + 1.0));
        const double e = effectiveness(pop_with(n, before), pop_with(n, after));
        CHECK(e >= 0.0);
        CHECK(e <= 1.0);
    }
}
