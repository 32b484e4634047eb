#pragma once

#include <complex>
#include <vector>

#include "multstat/polynomial.hpp"

namespace multstat {

/// One-cut equilibrium measure, normalised so that its support is [-a, 0].
///
/// `potential` is the input potential in the normalised variable s = z - shift,
/// i.e. potential(s) = V(s + shift). All evaluation routines below work in s.
struct EquilibriumMeasure {
    double endpoint_a = 0.0;
    Polynomial hV;
    double ell_V = 0.0;  // 2∫log|x-y|dμ(y) - V(x) on the support
    double shift = 0.0;
    PolynomialPotential potential{std::vector<double>{0.0, 0.0, 1.0}};
    int newton_iterations = 0;
    double moment_residual = 0.0;

    /// Density ψ(s) = h_V(s) sqrt(|s|(s+a)) / (2π), zero off the support.
    double density(double s) const;
    /// Constant in the large-z expansion φ(z) = V(z)/2 + const - log z + o(1);
    /// equals ell_V / 2.
    double phi_constant() const { return 0.5 * ell_V; }
};

struct EquilibriumOptions {
    int max_iterations = 200;
    double tolerance = 1e-12;
    int check_grid = 2001;
};

EquilibriumMeasure solve_one_cut(const PolynomialPotential& V, const EquilibriumOptions& opt = {});

/// ∫ log|x - y| dμ(y) for real x (normalised variable).
double log_potential(const EquilibriumMeasure& meas, double x);

/// Euler–Lagrange constant evaluated at x (defaults to the support midpoint).
double ell_V(const EquilibriumMeasure& meas);
double ell_V_at(const EquilibriumMeasure& meas, double x);

/// 2∫log|x-y|dμ(y) - V(x) - ell_V; zero on the support, negative off it.
double el_residual(const EquilibriumMeasure& meas, double x);

/// ∫ψ over the support (exact Gauss–Chebyshev).
double total_mass(const EquilibriumMeasure& meas);

enum class Side { none, upper, lower };

/// φ(z) = ∫_0^z ½ sqrt(s(s+a)) h_V(s) ds. On (-∞, 0] a side must be given.
std::complex<double> phi_eval(const EquilibriumMeasure& meas, std::complex<double> z,
                              Side side = Side::none);

/// varphi(z) = (3φ(z)/2)^{2/3}, analytic for |z| < a.
std::complex<double> varphi_eval(const EquilibriumMeasure& meas, std::complex<double> z);

struct ConformalData {
    double cV = 0.0;
    double cV_tilde = 0.0;
    std::vector<double> a_coeffs;  // a_1..a_K (index 0 holds a_1)
    std::vector<double> A_coeffs;  // A_1..A_K
    /// varphi^{-1}(w) from the truncated inverse series.
    double inverse(double w) const;
    double forward(double z) const;
};

constexpr int kMaxConformalOrder = 20;

ConformalData varphi_and_series(const EquilibriumMeasure& meas, int K);

}  // namespace multstat
