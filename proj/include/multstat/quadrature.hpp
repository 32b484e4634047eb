#pragma once

#include <functional>
#include <span>
#include <vector>

#include "multstat/polynomial.hpp"

namespace multstat {

enum class RuleKind { legendre, chebyshev_first_kind, composite };

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
    bool contains(double z) const { return z >= lo && z <= hi; }
};

struct QuadratureRule {
    std::vector<double> nodes;    // strictly increasing
    std::vector<double> weights;  // positive
    Interval domain;
    RuleKind kind = RuleKind::legendre;

    std::size_t size() const { return nodes.size(); }
    double integrate(const std::function<double(double)>& f) const;
};

/// m-point Gauss–Legendre rule on [lo, hi].
QuadratureRule gauss_legendre(int m, double lo, double hi);

/// m-point Gauss–Chebyshev rule (first kind) on [-1, 1], weight 1/sqrt(1-x^2).
QuadratureRule gauss_chebyshev(int m);

/// Gauss–Legendre with m nodes on each panel between consecutive breakpoints.
/// Breakpoints are sorted and deduplicated; at least two distinct values needed.
QuadratureRule composite_legendre(std::vector<double> breakpoints, int m);

/// `panels` equal panels on [lo, hi].
QuadratureRule uniform_composite(double lo, double hi, int panels, int m);

/// Interval outside of which n(V(z) - min V) exceeds |floor_log|, widened by 5%.
Interval truncation_for_weight(const PolynomialPotential& V, int n, double floor_log = -700.0);

}  // namespace multstat
