#include "multstat/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "multstat/errors.hpp"

namespace multstat {

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    for (double v : c_)
        if (!std::isfinite(v)) throw DomainError("polynomial coefficient is not finite");
    while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
    if (c_.empty()) c_.push_back(0.0);
}

double Polynomial::operator()(double z) const {
    double s = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * z + *it;
    return s;
}

std::complex<double> Polynomial::operator()(std::complex<double> z) const {
    std::complex<double> s = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * z + *it;
    return s;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return Polynomial({0.0});
    std::vector<double> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::translated(double c) const {
    // Taylor shift by repeated synthetic division.
    std::vector<double> t = c_;
    const std::size_t n = t.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j > i; --j) t[j - 1] += c * t[j];
    return Polynomial(std::move(t));
}

Polynomial Polynomial::operator+(double c) const {
    std::vector<double> t = c_;
    t[0] += c;
    return Polynomial(std::move(t));
}

namespace {

void check_potential(const Polynomial& p) {
    const int d = p.degree();
    if (d < 2 || d % 2 != 0) throw DomainError("potential must have even degree >= 2");
    if (p.coeffs().back() <= 0.0) throw DomainError("potential must have a positive leading coefficient");
}

// Bound on |roots| of p (Cauchy).
double root_bound(const Polynomial& p) {
    const auto& c = p.coeffs();
    const double lead = std::abs(c.back());
    double m = 0.0;
    for (std::size_t k = 0; k + 1 < c.size(); ++k) m = std::max(m, std::abs(c[k]) / lead);
    return 1.0 + m;
}

}  // namespace

PolynomialPotential::PolynomialPotential(std::vector<double> coeffs)
    : Polynomial(std::move(coeffs)) {
    check_potential(*this);
}

PolynomialPotential::PolynomialPotential(const Polynomial& p) : Polynomial(p) {
    check_potential(*this);
}

PolynomialPotential PolynomialPotential::translated(double c) const {
    return PolynomialPotential(Polynomial::translated(c));
}

double PolynomialPotential::argmin() const {
    const Polynomial d1 = derivative();
    const Polynomial d2 = d1.derivative();
    const double R = root_bound(d1);
    // All critical points lie in [-R, R]; scan then polish each sign change of V'.
    const int N = 4000;
    double best = 0.0, best_v = std::numeric_limits<double>::infinity();
    double zl = -R, fl = d1(zl);
    for (int i = 1; i <= N; ++i) {
        const double zr = -R + 2.0 * R * i / N;
        const double fr = d1(zr);
        if (fl < 0.0 && fr >= 0.0) {
            double lo = zl, hi = zr;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
                const double mid = 0.5 * (lo + hi);
                (d1(mid) < 0.0 ? lo : hi) = mid;
            }
            double z = 0.5 * (lo + hi);
            for (int it = 0; it < 3; ++it) {
                const double h = d2(z);
                if (h > 0.0) z -= d1(z) / h;
            }
            const double v = (*this)(z);
            if (v < best_v) best_v = v, best = z;
        }
        zl = zr;
        fl = fr;
    }
    return best;
}

double PolynomialPotential::min_value() const { return (*this)(argmin()); }

namespace series {

std::vector<double> multiply(std::span<const double> a, std::span<const double> b, int order) {
    std::vector<double> r(order, 0.0);
    for (int i = 0; i < order && i < static_cast<int>(a.size()); ++i)
        for (int j = 0; i + j < order && j < static_cast<int>(b.size()); ++j) r[i + j] += a[i] * b[j];
    return r;
}

std::vector<double> power(std::span<const double> a, double p, int order) {
    if (a.empty() || a[0] != 1.0) throw DomainError("series::power needs a[0] == 1");
    std::vector<double> b(order, 0.0);
    if (order == 0) return b;
    b[0] = 1.0;
    for (int k = 1; k < order; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k && j < static_cast<int>(a.size()); ++j)
            s += ((p + 1.0) * j - k) * a[j] * b[k - j];
        b[k] = s / k;
    }
    return b;
}

std::vector<double> compose(std::span<const double> outer, std::span<const double> inner,
                            int order) {
    if (!inner.empty() && inner[0] != 0.0) throw DomainError("series::compose needs inner[0] == 0");
    std::vector<double> r(order, 0.0);
    std::vector<double> pw(order, 0.0);
    if (order > 0) pw[0] = 1.0;
    for (std::size_t j = 0; j < outer.size(); ++j) {
        for (int k = 0; k < order; ++k) r[k] += outer[j] * pw[k];
        pw = multiply(pw, inner, order);
    }
    return r;
}

std::vector<double> revert(std::span<const double> a, int order) {
    if (a.size() < 2 || a[0] != 0.0 || a[1] == 0.0)
        throw DomainError("series::revert needs a[0] == 0 and a[1] != 0");
    std::vector<double> A(order, 0.0);
    if (order < 2) return A;
    A[1] = 1.0 / a[1];
    for (int n = 2; n < order; ++n) {
        // [y^n] Σ_{k≥2} a_k Z^k with Z = Σ_{j<n} A_j y^j
        std::vector<double> Z(A.begin(), A.begin() + n);
        Z.resize(n + 1, 0.0);
        std::vector<double> pw = multiply(Z, Z, n + 1);
        double s = 0.0;
        for (int k = 2; k <= n && k < static_cast<int>(a.size()); ++k) {
            s += a[k] * pw[n];
            pw = multiply(pw, Z, n + 1);
        }
        A[n] = -s / a[1];
    }
    return A;
}

std::vector<double> binomial(double p, double a, int order) {
    std::vector<double> r(order, 0.0);
    double c = 1.0;
    for (int k = 0; k < order; ++k) {
        r[k] = c;
        c *= (p - k) / ((k + 1) * a);
    }
    return r;
}

}  // namespace series

}  // namespace multstat
