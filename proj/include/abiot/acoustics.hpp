#pragma once

#include <vector>

#include "abiot/field.hpp"
#include "abiot/geometry.hpp"

namespace abiot {

// Astable pulse-generator RC network; the variable capacitor is the frequency
// control.
struct OscillatorConfig {
    double r1_ohm = 0.0;
    double r2_ohm = 0.0;
    double capacitance_f = 0.0;
};

struct EmitterSpec {
    double acoustic_power_w = 0.0;
    double frequency_hz = 0.0;
    bool rf_enabled = false;
    double effective_range_m = 15.0;
};

void validate_emitter(const EmitterSpec& em);

// Per-cell accumulated acoustic dose in W*s/m^2, aligned to FieldSpec cells.
class ExposureField {
public:
    ExposureField() : nx_(0), ny_(0), cell_size_m_(1.0) {}
    explicit ExposureField(const FieldSpec& field);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double at(int ix, int iy) const { return dose_[static_cast<size_t>(iy) * nx_ + ix]; }
    const std::vector<double>& data() const { return dose_; }
    double max_dose() const;

    // Adds intensity_at(distance to each cell center) * dt within the
    // emitter's range; distances clamp to half a cell below the singularity.
    void accumulate(Vec2 agent_xy, const EmitterSpec& em, double dt_s);

private:
    int nx_;
    int ny_;
    double cell_size_m_;
    std::vector<double> dose_;
    std::vector<double> centers_x_;
    std::vector<double> centers_y_;
};

// f = 1.44 / ((r1 + 2*r2) * C)
double oscillator_frequency(const OscillatorConfig& cfg);

// Free-field inverse-square falloff with a hard cutoff at effective_range_m.
// Throws SingularDistanceError at d = 0; callers clamp to one cell radius.
double intensity_at(const EmitterSpec& em, double distance_m);

// Per-step removal probability. With RF on and a susceptible species,
// habituation drops out entirely; otherwise exposure scales by (1 - h).
double repellence_probability(const PestSpecies& sp, double intensity_w_m2, double freq_hz,
                              double habituation, bool rf_on, double dt_s, double k,
                              double i_ref);

// h' = min(1, h + exposed_days / habituation_days)
double habituate(double h, double exposed_days, const PestSpecies& sp);

}  // namespace abiot
