#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "multstat/deformation.hpp"
#include "multstat/equilibrium.hpp"

namespace multstat {

/// -(2t⁴/3π⁴)A³ - (t⁴/π⁴)A², A = sqrt(1 + π²x/t³) - 1.
double corollary_predictor(double x, double t);

struct AsymptoticPrediction {
    double value = 0.0;
    std::vector<std::pair<double, double>> order_terms;  // (exponent of n, coefficient)
    std::string error_order;
};

/// Three-term expansion of F(n) = ∫_0^a g(s) ln(1 + e^{x - n^{2/3} s}) ds with
/// g(s) = ĝ(s)/sqrt(s), x = x0 n^alpha; gt0 = ĝ(0), gt1 = ĝ'(0).
AsymptoticPrediction laplace_F(double gt0, double gt1, double x0, double alpha, int n);

/// Direct quadrature of F(n) for g(s) = s^{-1/2} on [0, a].
double laplace_direct(double x0, double alpha, int n, double a = 1.0);

/// ∫_0^x ((1+z/x)^{-1/2} + (1-z/x)^{-1/2}) ln(1 + e^{-z}) dz
double f1_zero(double x);

/// 2 sqrt(t) x0^{3/2} / (3π sqrt(a)) n^{-1/3 + 3α/2}
double g0_estimate(double t, double a, double x0, double alpha, int n);

/// -(1/2π) ∫_{-a}^0 log σ_n(s) / sqrt(|s|(s+a)) ds by Gauss–Chebyshev with doubling.
double g0_direct(const EquilibriumMeasure& meas, const DeformationSpec& spec, int n, double x);

struct GFunctionOptions {
    int panels = 32;
    int nodes_per_panel = 20;
    double eps_rel = 1e-9;  // offset from the cut, relative to a
};

/// g(z) = (z(z+a))^{1/2}/(2π) ∫_{-a}^0 log σ_n(s) / sqrt(|s|(s+a)) ds/(s - z), z off [-a, 0].
std::complex<double> g_eval(const EquilibriumMeasure& meas, const DeformationSpec& spec, int n,
                            double x, std::complex<double> z, const GFunctionOptions& opt = {});

/// |g_+(z) + g_-(z) + log σ_n(z)| for z in (-a, 0), boundary values taken at z ± i·eps_rel·a.
double g_jump_check(const EquilibriumMeasure& meas, const DeformationSpec& spec, int n, double x,
                    double z, const GFunctionOptions& opt = {});

}  // namespace multstat
