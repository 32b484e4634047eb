#pragma once

#include "multstat/quadrature.hpp"

namespace multstat {

struct KpzDomain {
    double L = 0.0;  // domain is [-L, R]
    double R = 0.0;
};

/// Default truncation: L = 14 + 2 max(s, 0), R = 10.
KpzDomain default_kpz_domain(double s);

struct KpzStatResult {
    double s = 0.0;
    double T = 1.0;
    double log_value = 0.0;
    int m_nodes = 0;
    KpzDomain domain;
    double refinement_delta = 0.0;  // |log L(m) - log L(2m)| / max(1, |log L|)
};

/// log det(I - ŵ^{1/2} K_Ai ŵ^{1/2}) by Nyström with m Gauss–Legendre nodes on
/// [-L, R], ŵ(ζ) = 1 / (1 + e^{-T^{1/3}(ζ + s)}). No refinement.
double kpz_log_det(double s, double T, int m, const KpzDomain& dom);

/// Same, with m and 2m; returns the 2m value. Throws ConvergenceError when the
/// relative change exceeds `tolerance`.
KpzStatResult kpz_mult_stat(double s, double T, int m, const KpzDomain& dom,
                            double tolerance = 1e-7);
KpzStatResult kpz_mult_stat(double s, double T, int m);

/// Centred difference of kpz_log_det in s on a fixed domain.
double kpz_dlogL_ds_fd(double s, double T, int m, const KpzDomain& dom, double h = 1e-3);

/// Closed-form large-s behaviour of ∂_s log L(s, T).
double cc_tail_dlogL_ds(double s, double T);

}  // namespace multstat
