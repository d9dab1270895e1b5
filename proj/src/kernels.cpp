#include "abiot/kernels.hpp"

#include "abiot/errors.hpp"

namespace abiot::kernels {

namespace scalar {

void add_dose_row(double* dose, const double* cx, std::size_t n, double ax, double dy2,
                  double dose_scale, double range2, double dmin2) {
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = cx[i] - ax;
        const double d2 = dx * dx + dy2;
        const double d2c = d2 < dmin2 ? dmin2 : d2;
        const double add = d2 <= range2 ? dose_scale / d2c : 0.0;
        dose[i] += add;
    }
}

void add_intensity(double* intens, const double* px, const double* py, std::size_t n,
                   double ax, double ay, double power_over_4pi, double range2, double dmin2) {
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = px[i] - ax;
        const double dy = py[i] - ay;
        const double d2 = dx * dx + dy * dy;
        const double d2c = d2 < dmin2 ? dmin2 : d2;
        const double add = d2 <= range2 ? power_over_4pi / d2c : 0.0;
        intens[i] += add;
    }
}

}  // namespace scalar

bool backend_supported(Backend b) {
    switch (b) {
        case Backend::Scalar:
            return true;
        case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
            return __builtin_cpu_supports("avx2") != 0;
#else
            return false;
#endif
        case Backend::Neon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "?";
}

namespace {

Backend detect_backend() {
    if (backend_supported(Backend::Avx2)) return Backend::Avx2;
    if (backend_supported(Backend::Neon)) return Backend::Neon;
    return Backend::Scalar;
}

Backend g_backend = detect_backend();

}  // namespace

Backend active_backend() { return g_backend; }

void set_backend(Backend b) {
    if (!backend_supported(b))
        throw ConfigError("kernel backend '" + backend_name(b) + "' not supported on this CPU");
    g_backend = b;
}

void add_dose_row(double* dose, const double* cx, std::size_t n, double ax, double dy2,
                  double dose_scale, double range2, double dmin2) {
    switch (g_backend) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::Avx2:
            avx2::add_dose_row(dose, cx, n, ax, dy2, dose_scale, range2, dmin2);
            return;
#endif
#if defined(__aarch64__)
        case Backend::Neon:
            neon::add_dose_row(dose, cx, n, ax, dy2, dose_scale, range2, dmin2);
            return;
#endif
        default:
            scalar::add_dose_row(dose, cx, n, ax, dy2, dose_scale, range2, dmin2);
            return;
    }
}

void add_intensity(double* intens, const double* px, const double* py, std::size_t n,
                   double ax, double ay, double power_over_4pi, double range2, double dmin2) {
    switch (g_backend) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::Avx2:
            avx2::add_intensity(intens, px, py, n, ax, ay, power_over_4pi, range2, dmin2);
            return;
#endif
#if defined(__aarch64__)
        case Backend::Neon:
            neon::add_intensity(intens, px, py, n, ax, ay, power_over_4pi, range2, dmin2);
            return;
#endif
        default:
            scalar::add_intensity(intens, px, py, n, ax, ay, power_over_4pi, range2, dmin2);
            return;
    }
}

}  // namespace abiot::kernels
