#include "abiot/acoustics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "abiot/errors.hpp"
#include "abiot/kernels.hpp"

namespace abiot {

namespace {
constexpr double kFourPi = 4.0 * std::numbers::pi;
}

void validate_emitter(const EmitterSpec& em) {
    if (em.acoustic_power_w <= 0.0) throw ConfigError("emitter.acoustic_power_w must be positive");
    if (em.frequency_hz <= 0.0) throw ConfigError("emitter.frequency_hz must be positive");
    if (em.effective_range_m <= 0.0)
        throw ConfigError("emitter.effective_range_m must be positive");
}

double oscillator_frequency(const OscillatorConfig& cfg) {
    if (cfg.r1_ohm <= 0.0 || cfg.r2_ohm <= 0.0 || cfg.capacitance_f <= 0.0)
        throw ConfigError("oscillator components must all be positive");
    return 1.44 / ((cfg.r1_ohm + 2.0 * cfg.r2_ohm) * cfg.capacitance_f);
}

double intensity_at(const EmitterSpec& em, double distance_m) {
    if (distance_m <= 0.0)
        throw SingularDistanceError("intensity_at: distance must be positive");
    if (distance_m > em.effective_range_m) return 0.0;
    return em.acoustic_power_w / (kFourPi * distance_m * distance_m);
}

double repellence_probability(const PestSpecies& sp, double intensity_w_m2, double freq_hz,
                              double habituation, bool rf_on, double dt_s, double k,
                              double i_ref) {
    const bool in_band = freq_hz >= sp.band_lo_hz && freq_hz <= sp.band_hi_hz;
    if (!in_band || intensity_w_m2 <= 0.0) return 0.0;
    const double g = (rf_on && sp.rf_susceptible) ? 1.0 : 1.0 - habituation;
    const double drive = std::min(intensity_w_m2 / i_ref, 1.0);
    return 1.0 - std::exp(-k * sp.base_susceptibility * drive * g * dt_s);
}

double habituate(double h, double exposed_days, const PestSpecies& sp) {
    return std::min(1.0, h + exposed_days / sp.habituation_days);
}

ExposureField::ExposureField(const FieldSpec& field)
    : nx_(field.nx),
      ny_(field.ny),
      cell_size_m_(field.cell_size_m),
      dose_(static_cast<size_t>(field.nx) * field.ny, 0.0),
      centers_x_(field.nx),
      centers_y_(field.ny) {
    for (int ix = 0; ix < nx_; ++ix) centers_x_[ix] = (ix + 0.5) * cell_size_m_;
    for (int iy = 0; iy < ny_; ++iy) centers_y_[iy] = (iy + 0.5) * cell_size_m_;
}

double ExposureField::max_dose() const {
    double m = 0.0;
    for (double d : dose_) m = std::max(m, d);
    return m;
}

void ExposureField::accumulate(Vec2 agent_xy, const EmitterSpec& em, double dt_s) {
    if (dt_s <= 0.0) return;
    const double range2 = em.effective_range_m * em.effective_range_m;
    const double dmin = 0.5 * cell_size_m_;
    const double dmin2 = dmin * dmin;
    const double dose_scale = em.acoustic_power_w / kFourPi * dt_s;

    // Skip rows entirely outside the range band.
    const int iy_lo = std::max(0, static_cast<int>((agent_xy.y - em.effective_range_m) /
                                                   cell_size_m_) - 1);
    const int iy_hi = std::min(ny_ - 1, static_cast<int>((agent_xy.y + em.effective_range_m) /
                                                         cell_size_m_) + 1);
    for (int iy = iy_lo; iy <= iy_hi; ++iy) {
        const double dy = centers_y_[iy] - agent_xy.y;
        kernels::add_dose_row(dose_.data() + static_cast<size_t>(iy) * nx_, centers_x_.data(),
                              nx_, agent_xy.x, dy * dy, dose_scale, range2, dmin2);
    }
}

}  // namespace abiot
