// AVX2 variants of the dose/intensity kernels. Compiled with -mavx2 and
// -ffp-contract=off in its own translation unit; each lane performs the exact
// operation sequence of the scalar reference, so results are bit-identical.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "abiot/kernels.hpp"

namespace abiot::kernels::avx2 {

void add_dose_row(double* dose, const double* cx, std::size_t n, double ax, double dy2,
                  double dose_scale, double range2, double dmin2) {
    const __m256d vax = _mm256_set1_pd(ax);
    const __m256d vdy2 = _mm256_set1_pd(dy2);
    const __m256d vscale = _mm256_set1_pd(dose_scale);
    const __m256d vrange2 = _mm256_set1_pd(range2);
    const __m256d vdmin2 = _mm256_set1_pd(dmin2);
    const __m256d vzero = _mm256_setzero_pd();

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(cx + i), vax);
        const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), vdy2);
        const __m256d d2c = _mm256_max_pd(d2, vdmin2);
        const __m256d in = _mm256_cmp_pd(d2, vrange2, _CMP_LE_OQ);
        const __m256d add = _mm256_blendv_pd(vzero, _mm256_div_pd(vscale, d2c), in);
        _mm256_storeu_pd(dose + i, _mm256_add_pd(_mm256_loadu_pd(dose + i), add));
    }
    if (i < n) scalar::add_dose_row(dose + i, cx + i, n - i, ax, dy2, dose_scale, range2, dmin2);
}

void add_intensity(double* intens, const double* px, const double* py, std::size_t n,
                   double ax, double ay, double power_over_4pi, double range2, double dmin2) {
    const __m256d vax = _mm256_set1_pd(ax);
    const __m256d vay = _mm256_set1_pd(ay);
    const __m256d vp = _mm256_set1_pd(power_over_4pi);
    const __m256d vrange2 = _mm256_set1_pd(range2);
    const __m256d vdmin2 = _mm256_set1_pd(dmin2);
    const __m256d vzero = _mm256_setzero_pd();

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(px + i), vax);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(py + i), vay);
        const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        const __m256d d2c = _mm256_max_pd(d2, vdmin2);
        const __m256d in = _mm256_cmp_pd(d2, vrange2, _CMP_LE_OQ);
        const __m256d add = _mm256_blendv_pd(vzero, _mm256_div_pd(vp, d2c), in);
        _mm256_storeu_pd(intens + i, _mm256_add_pd(_mm256_loadu_pd(intens + i), add));
    }
    if (i < n)
        scalar::add_intensity(intens + i, px + i, py + i, n - i, ax, ay, power_over_4pi,
                              range2, dmin2);
}

}  // namespace abiot::kernels::avx2

#endif
