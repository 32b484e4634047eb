#pragma once

#include <string>

#include "multstat/deformation.hpp"
#include "multstat/equilibrium.hpp"
#include "multstat/orthopoly.hpp"

namespace multstat {

struct GridMeta {
    std::size_t nodes = 0;
    std::size_t panels = 0;
    Interval truncation;
};

struct FredholmResult {
    double value = 1.0;       // 0 when below 1e-300 (log_value stays valid)
    double log_value = 0.0;
    int n = 0;
    double x = 0.0;
    GridMeta grid_meta;
    double refinement_delta = 0.0;  // |Δ log L| / max(1, |log L|) under grid refinement
    std::string route;              // "I-M" or "G_sigma"
};

struct StatOptions {
    GridOptions grid;
    bool check_refinement = true;
    double tolerance = 1e-8;
};

/// L_n^Q(x) = E[Π σ_n(λ_j)] for the unitary ensemble with weight e^{-nV}, as the
/// n×n determinant built on the orthonormal polynomials of e^{-nV}.
/// Throws ConvergenceError when refinement_delta exceeds the tolerance.
FredholmResult mult_stat(const PolynomialPotential& V, const DeformationSpec& spec, int n,
                         double x, const StatOptions& opt = {});

struct AndreiefResult {
    double value = 1.0;
    double log_value = 0.0;
    double condition = 1.0;  // 1-norm condition of the undeformed moment matrix
    bool precision_warning = false;
};

/// Ratio of Hankel moment determinants (n ≤ 6).
AndreiefResult andreief_oracle(const PolynomialPotential& V, const DeformationSpec& spec, int n,
                               double x, const GridOptions& grid = {});

/// n = 2 statistic from the joint eigenvalue density, by tensor-product
/// Gauss–Legendre over the truncation square:
///   ∫∫ (λ1-λ2)² Π e^{-2V(λi)} σ(λi) / ∫∫ (λ1-λ2)² Π e^{-2V(λi)}.
double joint_density_n2(const PolynomialPotential& V, const DeformationSpec& spec, double x,
                        int panels = 64, int nodes_per_panel = 20);

/// -∫ K_n(λ,λ;x) ω_n(λ;x) (1 - σ_n(λ;x)) dλ with the kernel of the deformed weight.
double dlogL_dx_kernel(const PolynomialPotential& V, const DeformationSpec& spec, int n, double x,
                       const GridOptions& grid = {});

struct LocalizationSplit {
    double window_mass = 0.0;
    double tail_mass = 0.0;
    double total = 0.0;
    Interval window;
};

/// Splits the integral of dlogL_dx_kernel (sign dropped) into the window
/// [-eps_lo n^{α-2/3}, eps_hi n^{2α/3-2/3}] and its complement.
LocalizationSplit localization_tail(const PolynomialPotential& V, const DeformationSpec& spec,
                                    int n, double x, double eps_lo, double eps_hi,
                                    const GridOptions& grid = {});

struct GammaCheck {
    double rescaled = 0.0;  // γ²_{n-1} e^{2n·phi_constant}
    double constant = 0.0;  // a / 8π
    double relative_gap = 0.0;
    double log_gamma_sq = 0.0;
};

/// Leading-order norming-constant check. With `spec == nullptr` the weight is
/// undeformed. `meas` must be the equilibrium measure of V (V in normalised form).
GammaCheck gamma_leading_check(const EquilibriumMeasure& meas, const DeformationSpec* spec, int n,
                               double x, const GridOptions& grid = {});

}  // namespace multstat
