#include "multstat/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "multstat/errors.hpp"
#include "multstat/quadrature.hpp"
#include "multstat/orthopoly.hpp"

namespace multstat {

namespace {

constexpr double kPi = std::numbers::pi;

double log1p_exp(double v) { return std::max(v, 0.0) + std::log1p(std::exp(-std::abs(v))); }

// Composite Gauss–Legendre over the given breakpoints, doubling every panel until
// the result settles.
double settle(const std::function<double(double)>& f, std::vector<double> bp, double rtol = 1e-14) {
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    if (bp.size() < 2) return 0.0;
    double prev = composite_legendre(bp, 32).integrate(f);
    for (int it = 0; it < 10; ++it) {
        std::vector<double> nb;
        for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
            nb.push_back(bp[i]);
            nb.push_back(0.5 * (bp[i] + bp[i + 1]));
        }
        nb.push_back(bp.back());
        bp = std::move(nb);
        const double cur = composite_legendre(bp, 32).integrate(f);
        if (std::abs(cur - prev) <= rtol * std::abs(cur) + 1e-300) return cur;
        prev = cur;
    }
    return prev;
}

std::vector<double> linspace(double lo, double hi, int k) {
    std::vector<double> v;
    for (int i = 0; i <= k; ++i) v.push_back(lo + (hi - lo) * i / k);
    return v;
}

}  // namespace

double corollary_predictor(double x, double t) {
    if (!(t > 0.0)) throw DomainError("corollary_predictor: t must be positive");
    if (x < 0.0) throw DomainError("corollary_predictor: x must be non-negative");
    const double pi2 = kPi * kPi, pi4 = pi2 * pi2;
    const double A = std::sqrt(1.0 + pi2 * x / (t * t * t)) - 1.0;
    const double t4 = t * t * t * t;
    return -(2.0 * t4 / (3.0 * pi4)) * A * A * A - (t4 / pi4) * A * A;
}

double f1_zero(double x) {
    if (!(x > 0.0)) throw DomainError("f1_zero: x must be positive");
    const double half = 0.5 * x;
    // Regular part: both factors on [0, x/2], the (1+z/x)^{-1/2} factor on [x/2, x].
    auto lead = [x](double z) { return (1.0 / std::sqrt(1.0 + z / x) + 1.0 / std::sqrt(1.0 - z / x)) * std::log1p(std::exp(-z)); };
    auto plus = [x](double z) { return std::log1p(std::exp(-z)) / std::sqrt(1.0 + z / x); };
    auto panels = [](double lo, double hi) {
        std::vector<double> bp{lo};
        for (double b = std::floor(lo) + 1.0; b < std::min(hi, 60.0); b += 1.0) bp.push_back(b);
        bp.push_back(hi);
        return bp;
    };
    double s = settle(lead, panels(0.0, half)) + settle(plus, panels(half, x));
    // Singular factor on [x/2, x] with z = x - v²: (1-z/x)^{-1/2} dz = 2 sqrt(x) dv.
    const double vmax = std::sqrt(half);
    auto sing = [x](double v) { return 2.0 * std::sqrt(x) * std::log1p(std::exp(-(x - v * v))); };
    std::vector<double> vb = linspace(0.0, vmax, 8);
    s += settle(sing, vb);
    return s;
}

AsymptoticPrediction laplace_F(double gt0, double gt1, double x0, double alpha, int n) {
    if (n < 2) throw DomainError("laplace_F: n must be >= 2");
    if (!(x0 > 0.0)) throw DomainError("laplace_F: x0 must be positive");
    const double nn = static_cast<double>(n);
    const double x = x0 * std::pow(nn, alpha);
    AsymptoticPrediction p;
    p.order_terms = {
        {-1.0 / 3.0 + 1.5 * alpha, gt0 * 4.0 * std::pow(x0, 1.5) / 3.0},
        {-1.0 / 3.0 - 0.5 * alpha, std::pow(x0, -0.5) * gt0 * f1_zero(x)},
        {-1.0 + 2.5 * alpha, gt1 * 4.0 * std::pow(x0, 2.5) / 15.0},
    };
    for (const auto& [e, c] : p.order_terms) p.value += c * std::pow(nn, e);
    p.error_order = "O(n^{-1/3})";
    return p;
}

double laplace_direct(double x0, double alpha, int n, double a) {
    if (!(a > 0.0)) throw DomainError("laplace_direct: a must be positive");
    const double nn = static_cast<double>(n);
    const double x = x0 * std::pow(nn, alpha);
    const double k = std::pow(nn, 2.0 / 3.0);
    // s = u²: ∫_0^a s^{-1/2} ln(1+e^{x-ks}) ds = 2∫_0^{√a} ln(1+e^{x-ku²}) du
    auto f = [&](double u) { return 2.0 * log1p_exp(x - k * u * u); };
    const double ua = std::sqrt(a);
    std::vector<double> bp = linspace(0.0, ua, 16);
    const double us = std::sqrt(std::max(x, 0.0) / k);
    const double w = 1.0 / (k * std::max(us, 1.0 / std::sqrt(k)));
    for (int j = 0; j < 8; ++j)
        for (double b : {us - w * std::ldexp(1.0, j), us + w * std::ldexp(1.0, j)})
            if (b > 0.0 && b < ua) bp.push_back(b);
    if (us > 0.0 && us < ua) bp.push_back(us);
    return settle(f, bp, 1e-13);
}

double g0_estimate(double t, double a, double x0, double alpha, int n) {
    if (!(t > 0.0) || !(a > 0.0)) throw DomainError("g0_estimate: t and a must be positive");
    return 2.0 * std::sqrt(t) * std::pow(x0, 1.5) / (3.0 * kPi * std::sqrt(a)) *
           std::pow(static_cast<double>(n), -1.0 / 3.0 + 1.5 * alpha);
}

double g0_direct(const EquilibriumMeasure& meas, const DeformationSpec& spec, int n, double x) {
    const double r = 0.5 * meas.endpoint_a, c = -r;
    auto eval = [&](int m) {
        const QuadratureRule q = gauss_chebyshev(m);
        double s = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * log_sigma_n(spec, c + r * q.nodes[i], n, x);
        return -s / (2.0 * kPi);
    };
    double prev = eval(64);
    for (int m = 128; m <= (1 << 22); m *= 2) {
        const double cur = eval(m);
        if (std::abs(cur - prev) <= 1e-12 * std::abs(cur) || (cur == 0.0 && prev == 0.0)) return cur;
        prev = cur;
    }
    throw ConvergenceError("g0_direct: Gauss-Chebyshev doubling did not settle");
}

std::complex<double> g_eval(const EquilibriumMeasure& meas, const DeformationSpec& spec, int n,
                            double x, std::complex<double> z, const GFunctionOptions& opt) {
    using cplx = std::complex<double>;
    const double a = meas.endpoint_a, r = 0.5 * a, c = -r;
    if (z.imag() == 0.0 && z.real() >= -a && z.real() <= 0.0)
        throw DomainError("g_eval: z lies on the cut [-a, 0]");
    auto L = [&](double th) { return log_sigma_n(spec, c + r * std::cos(th), n, x); };

    // Subtract the value at the projection of z onto the cut; the remainder is
    // bounded near the cut and ∫_0^π dθ/(c + r cosθ - z) = -π/R(z).
    const double X = std::clamp((z.real() - c) / r, -1.0, 1.0);
    const double th0 = std::acos(X);
    const double L0 = L(th0);

    std::vector<double> bp = linspace(0.0, kPi, opt.panels);
    auto graded = [&](double centre) {
        for (int k = 1; k <= 34; ++k) {
            const double d = kPi * std::ldexp(1.0, -k);
            if (centre - d > 0.0) bp.push_back(centre - d);
            if (centre + d < kPi) bp.push_back(centre + d);
        }
        if (centre > 0.0 && centre < kPi) bp.push_back(centre);
    };
    graded(th0);
    graded(0.0);
    const Interval support{-a, 0.0};
    for (double zs : fermi_layer_points(spec, n, x, support)) {
        graded(std::acos(std::clamp((zs - c) / r, -1.0, 1.0)));
    }
    const QuadratureRule q = composite_legendre(bp, opt.nodes_per_panel);
    cplx J = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double th = q.nodes[i];
        J += q.weights[i] * (L(th) - L0) / (c + r * std::cos(th) - z);
    }
    const cplx R = std::sqrt(z) * std::sqrt(z + a);
    return R * J / (2.0 * kPi) - 0.5 * L0;
}

double g_jump_check(const EquilibriumMeasure& meas, const DeformationSpec& spec, int n, double x,
                    double z, const GFunctionOptions& opt) {
    const double a = meas.endpoint_a;
    if (!(z > -a && z < 0.0)) throw DomainError("g_jump_check: z must lie in (-a, 0)");
    if (z < -a + 1e-3 * a || z > -1e-3 * a)
        throw DomainError("g_jump_check: z within 1e-3 a of an endpoint");
    const double eps = opt.eps_rel * a;
    const std::complex<double> gp = g_eval(meas, spec, n, x, {z, eps}, opt);
    const std::complex<double> gm = g_eval(meas, spec, n, x, {z, -eps}, opt);
    return std::abs(gp + gm + log_sigma_n(spec, z, n, x));
}

}  // namespace multstat
