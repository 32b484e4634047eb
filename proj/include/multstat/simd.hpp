#pragma once

// Data-parallel inner loops shared by the quadrature-heavy modules.
//
// Every kernel exists as a scalar reference (namespace `scalar`) and, on x86-64
// builds, as an AVX2/FMA variant (namespace `avx2`). The free functions in
// `multstat::simd` dispatch to the best variant the CPU supports; the choice is
// made once per process and can be pinned with MULTSTAT_SIMD=scalar|avx2 or
// `force_isa` (tests use the latter to compare variants).
//
// All spans passed to one call must have equal length.

#include <cstddef>
#include <span>
#include <string_view>

namespace multstat::simd {

enum class Isa { scalar, avx2 };

Isa active_isa();
bool isa_available(Isa isa);
void force_isa(Isa isa);
std::string_view isa_name(Isa isa);

/// Σ w_i a_i b_i
double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b);

/// Σ a_i b_i
double dot(std::span<const double> a, std::span<const double> b);

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// out_i = ((x_i - alpha) p_i - b_prev * p_prev_i) * inv_b_next
void recurrence_step(std::span<const double> x, double alpha, double b_prev,
                     double inv_b_next, std::span<const double> p_prev,
                     std::span<const double> p, std::span<double> out);

/// out_j = (f_i g_j - g_i f_j) / (z_i - z_j); entries with z_j == z_i are left
/// untouched so the caller can fill the confluent value.
void integrable_kernel_row(double z_i, double f_i, double g_i,
                           std::span<const double> z, std::span<const double> f,
                           std::span<const double> g, std::span<double> out);

namespace scalar {
double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b);
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void recurrence_step(std::span<const double> x, double alpha, double b_prev,
                     double inv_b_next, std::span<const double> p_prev,
                     std::span<const double> p, std::span<double> out);
void integrable_kernel_row(double z_i, double f_i, double g_i,
                           std::span<const double> z, std::span<const double> f,
                           std::span<const double> g, std::span<double> out);
}  // namespace scalar

#if defined(MULTSTAT_HAVE_AVX2)
namespace avx2 {
double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b);
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void recurrence_step(std::span<const double> x, double alpha, double b_prev,
                     double inv_b_next, std::span<const double> p_prev,
                     std::span<const double> p, std::span<double> out);
void integrable_kernel_row(double z_i, double f_i, double g_i,
                           std::span<const double> z, std::span<const double> f,
                           std::span<const double> g, std::span<double> out);
}  // namespace avx2
#endif

}  // namespace multstat::simd
