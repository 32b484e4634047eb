#include "multstat/simd.hpp"

namespace multstat::simd::scalar {

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * a[i] * b[i];
    return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void recurrence_step(std::span<const double> x, double alpha, double b_prev,
                     double inv_b_next, std::span<const double> p_prev,
                     std::span<const double> p, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = ((x[i] - alpha) * p[i] - b_prev * p_prev[i]) * inv_b_next;
}

void integrable_kernel_row(double z_i, double f_i, double g_i,
                           std::span<const double> z, std::span<const double> f,
                           std::span<const double> g, std::span<double> out) {
    for (std::size_t j = 0; j < z.size(); ++j) {
        const double d = z_i - z[j];
        if (d != 0.0) out[j] = (f_i * g[j] - g_i * f[j]) / d;
    }
}

}  // namespace multstat::simd::scalar
