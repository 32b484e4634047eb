#pragma once

#include <functional>
#include <vector>

#include "multstat/deformation.hpp"
#include "multstat/polynomial.hpp"
#include "multstat/quadrature.hpp"

namespace multstat {

struct GridOptions {
    int panels = 96;             // uniform panels across the truncation interval
    int nodes_per_panel = 24;
    double floor_log = -700.0;
    int layer_levels = 7;        // geometric breakpoints around each Fermi-layer point
    std::vector<double> extra_breakpoints;

    GridOptions refined() const;  // twice the panels, layers one level deeper
};

/// Quadrature rule together with the log of the weight at its nodes.
struct DiscretizedWeight {
    QuadratureRule rule;
    std::vector<double> logw;

    double max_logw() const;
    double log_mass() const;
    double mass() const;
};

/// Points where n^{2/3} Q(z) = x inside [lo, hi] (the centre of the Fermi layer).
std::vector<double> fermi_layer_points(const DeformationSpec& spec, int n, double x, Interval iv);

/// Composite Gauss–Legendre discretisation of e^{-nV} (times σ_n when
/// `apply_sigma`). When `spec` is given the grid carries extra panels around the
/// Fermi layer whether or not σ_n is applied.
DiscretizedWeight discretize(const PolynomialPotential& V, int n, const DeformationSpec* spec,
                             double x, bool apply_sigma, const GridOptions& opt = {});

DiscretizedWeight discretize_rule(QuadratureRule rule, const std::function<double(double)>& logw);

/// Three-term recurrence of the orthonormal polynomials:
///   z p_k = b_{k+1} p_{k+1} + alpha_k p_k + b_k p_{k-1},  b_k = sqrt(beta_k).
/// beta[0] is the weight mass divided by e^{log_scale}; beta_1..beta_K are the
/// monic recurrence coefficients.
struct RecurrenceTable {
    std::vector<double> alpha;  // K entries
    std::vector<double> beta;   // K + 1 entries
    double log_scale = 0.0;

    int K() const { return static_cast<int>(alpha.size()); }
    double log_mass() const;
    double mass() const;
    /// log γ_k^2, γ_k the leading coefficient of the k-th orthonormal polynomial.
    double log_gamma_sq(int k) const;
    double gamma_sq(int k) const;
    std::vector<double> gamma() const;

    /// Orthonormal p_0..p_m at z (m ≤ K).
    std::vector<double> evaluate(double z, int m) const;
    /// p_0..p_m and derivatives.
    void evaluate_with_derivative(double z, int m, std::vector<double>& p,
                                  std::vector<double>& dp) const;
};

/// Orthonormal basis sampled on the grid: q[k][i] = p_k(z_i) sqrt(w_i ω(z_i)).
struct OrthoBasis {
    RecurrenceTable table;
    std::vector<std::vector<double>> q;
};

RecurrenceTable stieltjes(const DiscretizedWeight& dw, int K);
OrthoBasis stieltjes_basis(const DiscretizedWeight& dw, int K);

/// max_{j,k<K} |<p_j, p_k> - δ_jk| with p_k evaluated from the recurrence.
double gram_residual(const DiscretizedWeight& dw, const RecurrenceTable& rt);

/// Σ_{k<n} p_k(λ) p_k(μ) via the Christoffel–Darboux formula (confluent form
/// when |λ - μ| ≤ 1e-8).
double cd_kernel(const RecurrenceTable& rt, int n, double lambda, double mu);
/// Direct summation, for cross-checks.
double cd_kernel_sum(const RecurrenceTable& rt, int n, double lambda, double mu);

double gamma_sq(const RecurrenceTable& rt, int k);
double log_gamma_sq(const RecurrenceTable& rt, int k);

}  // namespace multstat
