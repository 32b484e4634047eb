#include "multstat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "multstat/errors.hpp"

namespace multstat {

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
}

namespace {

struct Reference {
    std::vector<double> x, w;  // on [-1, 1], increasing
};

Reference legendre_reference(int m) {
    Reference r;
    r.x.resize(m);
    r.w.resize(m);
    const double pi = std::numbers::pi;
    for (int i = 0; i < (m + 1) / 2; ++i) {
        // Tricomi initial guess for the i-th largest root.
        const double th = pi * (4.0 * i + 3.0) / (4.0 * m + 2.0);
        double x = (1.0 - (m - 1.0) / (8.0 * m * m * m)) * std::cos(th);
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (m == 1) p0 = 1.0;
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-15) {
                // refresh derivative at the converged node
                p0 = 1.0, p1 = x;
                for (int k = 2; k <= m; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                if (m == 1) p0 = 1.0;
                dp = m * (x * p1 - p0) / (x * x - 1.0);
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.x[m - 1 - i] = x;
        r.w[m - 1 - i] = w;
        r.x[i] = -x;
        r.w[i] = w;
    }
    if (m % 2 == 1) r.x[m / 2] = 0.0;
    return r;
}

const Reference& cached_legendre(int m) {
    static std::mutex mu;
    static std::map<int, Reference> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, legendre_reference(m)).first;
    return it->second;
}

}  // namespace

QuadratureRule gauss_legendre(int m, double lo, double hi) {
    if (m < 1) throw DomainError("gauss_legendre: m must be >= 1");
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("gauss_legendre: bounds must be finite");
    if (!(lo < hi)) throw DomainError("gauss_legendre: need lo < hi");
    const Reference& ref = cached_legendre(m);
    QuadratureRule r;
    r.domain = {lo, hi};
    r.kind = RuleKind::legendre;
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    r.nodes.resize(m);
    r.weights.resize(m);
    for (int i = 0; i < m; ++i) {
        r.nodes[i] = c + h * ref.x[i];
        r.weights[i] = h * ref.w[i];
    }
    return r;
}

QuadratureRule gauss_chebyshev(int m) {
    if (m < 1) throw DomainError("gauss_chebyshev: m must be >= 1");
    QuadratureRule r;
    r.domain = {-1.0, 1.0};
    r.kind = RuleKind::chebyshev_first_kind;
    r.nodes.resize(m);
    r.weights.assign(m, std::numbers::pi / m);
    for (int k = 1; k <= m; ++k)
        r.nodes[m - k] = std::cos((2.0 * k - 1.0) * std::numbers::pi / (2.0 * m));
    if (m % 2 == 1) r.nodes[m / 2] = 0.0;
    return r;
}

QuadratureRule composite_legendre(std::vector<double> bp, int m) {
    if (m < 1) throw DomainError("composite_legendre: m must be >= 1");
    for (double b : bp)
        if (!std::isfinite(b)) throw DomainError("composite_legendre: breakpoint not finite");
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    if (bp.size() < 2) throw DomainError("composite_legendre: need two distinct breakpoints");
    const Reference& ref = cached_legendre(m);
    QuadratureRule r;
    r.domain = {bp.front(), bp.back()};
    r.kind = RuleKind::composite;
    r.nodes.reserve((bp.size() - 1) * m);
    r.weights.reserve((bp.size() - 1) * m);
    for (std::size_t p = 0; p + 1 < bp.size(); ++p) {
        const double c = 0.5 * (bp[p] + bp[p + 1]), h = 0.5 * (bp[p + 1] - bp[p]);
        for (int i = 0; i < m; ++i) {
            r.nodes.push_back(c + h * ref.x[i]);
            r.weights.push_back(h * ref.w[i]);
        }
    }
    return r;
}

QuadratureRule uniform_composite(double lo, double hi, int panels, int m) {
    if (panels < 1) throw DomainError("uniform_composite: panels must be >= 1");
    if (!(lo < hi)) throw DomainError("uniform_composite: need lo < hi");
    std::vector<double> bp(panels + 1);
    for (int i = 0; i <= panels; ++i) bp[i] = lo + (hi - lo) * i / panels;
    bp.back() = hi;
    return composite_legendre(std::move(bp), m);
}

Interval truncation_for_weight(const PolynomialPotential& V, int n, double floor_log) {
    if (n < 1) throw DomainError("truncation_for_weight: n must be >= 1");
    if (!(floor_log < 0.0)) throw DomainError("truncation_for_weight: floor_log must be negative");
    const double z0 = V.argmin();
    const double vmin = V(z0);
    const double level = -floor_log;
    auto excess = [&](double z) { return n * (V(z) - vmin) - level; };

    // Outermost crossing on each side: march outward until the excess is positive
    // and V is monotone beyond, then bisect against the last non-positive sample.
    const Polynomial d1 = V.derivative();
    double R = 1.0;
    for (double c : d1.coeffs()) R = std::max(R, 1.0 + std::abs(c / d1.coeffs().back()));
    auto outer = [&](double dir) {
        double far = z0 + dir * std::max(1.0, std::abs(z0) + R);
        while (excess(far) <= 0.0) far = z0 + 2.0 * (far - z0);
        const int N = 2000;
        double inner = z0;
        for (int i = N; i >= 0; --i) {
            const double z = z0 + (far - z0) * i / N;
            if (excess(z) <= 0.0) {
                inner = z;
                break;
            }
        }
        double lo = inner, hi = inner + (far - z0) / N;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (excess(mid) <= 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double left = outer(-1.0), right = outer(1.0);
    const double pad = 0.025 * (right - left);
    return {left - pad, right + pad};
}

}  // namespace multstat
