// NEON variants, same lane-for-lane arithmetic as the scalar reference.

#if defined(__aarch64__)

#include <arm_neon.h>

#include "abiot/kernels.hpp"

namespace abiot::kernels::neon {

void add_dose_row(double* dose, const double* cx, std::size_t n, double ax, double dy2,
                  double dose_scale, double range2, double dmin2) {
    const float64x2_t vax = vdupq_n_f64(ax);
    const float64x2_t vdy2 = vdupq_n_f64(dy2);
    const float64x2_t vscale = vdupq_n_f64(dose_scale);
    const float64x2_t vrange2 = vdupq_n_f64(range2);
    const float64x2_t vdmin2 = vdupq_n_f64(dmin2);

    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t dx = vsubq_f64(vld1q_f64(cx + i), vax);
        const float64x2_t d2 = vaddq_f64(vmulq_f64(dx, dx), vdy2);
        const float64x2_t d2c = vmaxq_f64(d2, vdmin2);
        const uint64x2_t in = vcleq_f64(d2, vrange2);
        const float64x2_t q = vdivq_f64(vscale, d2c);
        const float64x2_t add =
            vreinterpretq_f64_u64(vandq_u64(in, vreinterpretq_u64_f64(q)));
        vst1q_f64(dose + i, vaddq_f64(vld1q_f64(dose + i), add));
    }
    if (i < n) scalar::add_dose_row(dose + i, cx + i, n - i, ax, dy2, dose_scale, range2, dmin2);
}

void add_intensity(double* intens, const double* px, const double* py, std::size_t n,
                   double ax, double ay, double power_over_4pi, double range2, double dmin2) {
    const float64x2_t vax = vdupq_n_f64(ax);
    const float64x2_t vay = vdupq_n_f64(ay);
    const float64x2_t vp = vdupq_n_f64(power_over_4pi);
    const float64x2_t vrange2 = vdupq_n_f64(range2);
    const float64x2_t vdmin2 = vdupq_n_f64(dmin2);

    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t dx = vsubq_f64(vld1q_f64(px + i), vax);
        const float64x2_t dy = vsubq_f64(vld1q_f64(py + i), vay);
        const float64x2_t d2 = vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy));
        const float64x2_t d2c = vmaxq_f64(d2, vdmin2);
        const uint64x2_t in = vcleq_f64(d2, vrange2);
        const float64x2_t q = vdivq_f64(vp, d2c);
        const float64x2_t add =
            vreinterpretq_f64_u64(vandq_u64(in, vreinterpretq_u64_f64(q)));
        vst1q_f64(intens + i, vaddq_f64(vld1q_f64(intens + i), add));
    }
    if (i < n)
        scalar::add_intensity(intens + i, px + i, py + i, n - i, ax, ay, power_over_4pi,
                              range2, dmin2);
}

}  // namespace abiot::kernels::neon

#endif
