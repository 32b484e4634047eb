#pragma once

#include <complex>
#include <span>
#include <vector>

namespace multstat {

/// Real polynomial with coefficients c_0..c_d (ascending powers).
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coeffs() const { return c_; }
    double coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : 0.0; }

    double operator()(double z) const;
    std::complex<double> operator()(std::complex<double> z) const;

    Polynomial derivative() const;
    /// q(z) = p(z + c)
    Polynomial translated(double c) const;
    Polynomial operator+(double c) const;

private:
    std::vector<double> c_;  // trailing zeros trimmed, never empty
};

/// Confining potential: even degree ≥ 2 with positive leading coefficient.
class PolynomialPotential : public Polynomial {
public:
    explicit PolynomialPotential(std::vector<double> coeffs);
    explicit PolynomialPotential(const Polynomial& p);

    PolynomialPotential translated(double c) const;

    /// Global minimiser and minimum value.
    double argmin() const;
    double min_value() const;
};

/// Truncated power series helpers. All series are coefficient vectors starting
/// at z^0 and truncated to the length of the shorter operand / requested order.
namespace series {

std::vector<double> multiply(std::span<const double> a, std::span<const double> b, int order);

/// (1 + Σ_{k≥1} a_k z^k)^p for real p; requires a[0] == 1.
std::vector<double> power(std::span<const double> a, double p, int order);

/// Σ_j q_j (inner(z))^j where inner has inner[0] == 0.
std::vector<double> compose(std::span<const double> outer, std::span<const double> inner,
                            int order);

/// Inverse series of y = Σ_{k≥1} a_k z^k, a[0] == 0, a[1] != 0.
std::vector<double> revert(std::span<const double> a, int order);

/// Coefficients of (1 + s/a)^{p}.
std::vector<double> binomial(double p, double a, int order);

}  // namespace series

}  // namespace multstat
