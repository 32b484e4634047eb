#include "multstat/simd.hpp"

#include <immintrin.h>

namespace multstat::simd::avx2 {

namespace {

double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
    const std::size_t n = w.size();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d wa0 = _mm256_mul_pd(_mm256_loadu_pd(&w[i]), _mm256_loadu_pd(&a[i]));
        const __m256d wa1 =
            _mm256_mul_pd(_mm256_loadu_pd(&w[i + 4]), _mm256_loadu_pd(&a[i + 4]));
        acc0 = _mm256_fmadd_pd(wa0, _mm256_loadu_pd(&b[i]), acc0);
        acc1 = _mm256_fmadd_pd(wa1, _mm256_loadu_pd(&b[i + 4]), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d wa = _mm256_mul_pd(_mm256_loadu_pd(&w[i]), _mm256_loadu_pd(&a[i]));
        acc0 = _mm256_fmadd_pd(wa, _mm256_loadu_pd(&b[i]), acc0);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += w[i] * a[i] * b[i];
    return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[i + 4]), _mm256_loadu_pd(&b[i + 4]), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]), acc0);
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    const std::size_t n = x.size();
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_fmadd_pd(va, _mm256_loadu_pd(&x[i]), _mm256_loadu_pd(&y[i]));
        _mm256_storeu_pd(&y[i], r);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void recurrence_step(std::span<const double> x, double alpha, double b_prev,
                     double inv_b_next, std::span<const double> p_prev,
                     std::span<const double> p, std::span<double> out) {
    const std::size_t n = x.size();
    const __m256d va = _mm256_set1_pd(alpha);
    const __m256d vb = _mm256_set1_pd(b_prev);
    const __m256d vi = _mm256_set1_pd(inv_b_next);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xm = _mm256_sub_pd(_mm256_loadu_pd(&x[i]), va);
        const __m256d t = _mm256_mul_pd(vb, _mm256_loadu_pd(&p_prev[i]));
        const __m256d r = _mm256_fmsub_pd(xm, _mm256_loadu_pd(&p[i]), t);
        _mm256_storeu_pd(&out[i], _mm256_mul_pd(r, vi));
    }
    for (; i < n; ++i) out[i] = ((x[i] - alpha) * p[i] - b_prev * p_prev[i]) * inv_b_next;
}

void integrable_kernel_row(double z_i, double f_i, double g_i,
                           std::span<const double> z, std::span<const double> f,
                           std::span<const double> g, std::span<double> out) {
    const std::size_t n = z.size();
    const __m256d vz = _mm256_set1_pd(z_i);
    const __m256d vf = _mm256_set1_pd(f_i);
    const __m256d vg = _mm256_set1_pd(g_i);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d d = _mm256_sub_pd(vz, _mm256_loadu_pd(&z[j]));
        const __m256d t = _mm256_mul_pd(vg, _mm256_loadu_pd(&f[j]));
        const __m256d num = _mm256_fmsub_pd(vf, _mm256_loadu_pd(&g[j]), t);
        const __m256d q = _mm256_div_pd(num, d);
        const __m256d keep = _mm256_cmp_pd(d, zero, _CMP_NEQ_OQ);
        const __m256d old = _mm256_loadu_pd(&out[j]);
        _mm256_storeu_pd(&out[j], _mm256_blendv_pd(old, q, keep));
    }
    for (; j < n; ++j) {
        const double d = z_i - z[j];
        if (d != 0.0) out[j] = (f_i * g[j] - g_i * f[j]) / d;
    }
}

}  // namespace multstat::simd::avx2
