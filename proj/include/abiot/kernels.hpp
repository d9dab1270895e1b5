#pragma once

#include <cstddef>
#include <string>

namespace abiot::kernels {

enum class Backend { Scalar, Avx2, Neon };

// Backend chosen at startup from CPU capabilities. set_backend lets tests and
// the CLI force a specific one; throws ConfigError if unsupported on this CPU.
Backend active_backend();
void set_backend(Backend b);
bool backend_supported(Backend b);
std::string backend_name(Backend b);

// dose[i] += (d2 <= range2) ? dose_scale / max(d2, dmin2) : 0
// with d2 = (cx[i] - ax)^2 + dy2. dose_scale folds power/(4*pi) * dt.
void add_dose_row(double* dose, const double* cx, std::size_t n, double ax, double dy2,
                  double dose_scale, double range2, double dmin2);

// intens[i] += (d2 <= range2) ? power_over_4pi / max(d2, dmin2) : 0
// with d2 = (px[i] - ax)^2 + (py[i] - ay)^2.
void add_intensity(double* intens, const double* px, const double* py, std::size_t n,
                   double ax, double ay, double power_over_4pi, double range2, double dmin2);

// Reference implementations. The dispatched variants must match these
// bit-for-bit; the equivalence tests assert exactly that.
namespace scalar {
void add_dose_row(double* dose, const double* cx, std::size_t n, double ax, double dy2,
                  double dose_scale, double range2, double dmin2);
void add_intensity(double* intens, const double* px, const double* py, std::size_t n,
                   double ax, double ay, double power_over_4pi, double range2, double dmin2);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void add_dose_row(double* dose, const double* cx, std::size_t n, double ax, double dy2,
                  double dose_scale, double range2, double dmin2);
void add_intensity(double* intens, const double* px, const double* py, std::size_t n,
                   double ax, double ay, double power_over_4pi, double range2, double dmin2);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
void add_dose_row(double* dose, const double* cx, std::size_t n, double ax, double dy2,
                  double dose_scale, double range2, double dmin2);
void add_intensity(double* intens, const double* px, const double* py, std::size_t n,
                   double ax, double ay, double power_over_4pi, double range2, double dmin2);
}  // namespace neon
#endif

}  // namespace abiot::kernels
