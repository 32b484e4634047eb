#include "multstat/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "multstat/errors.hpp"
#include "multstat/quadrature.hpp"

namespace multstat {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

struct Moments {
    double F1, F2;        // residuals
    double J11, J12, J21, J22;  // Jacobian w.r.t. (c, log r)
};

Moments moments(const Polynomial& d1, const Polynomial& d2, const QuadratureRule& gc,
                double c, double r) {
    double m0 = 0, m1 = 0, h0 = 0, h1 = 0, h2 = 0;
    for (double u : gc.nodes) {
        const double z = c + r * u;
        const double v1 = d1(z), v2 = d2(z);
        m0 += v1;
        m1 += u * v1;
        h0 += v2;
        h1 += u * v2;
        h2 += u * u * v2;
    }
    const double inv = 1.0 / static_cast<double>(gc.size());
    m0 *= inv, m1 *= inv, h0 *= inv, h1 *= inv, h2 *= inv;
    return {m0, r * m1 - 2.0, h0, r * h1, r * h1, r * m1 + r * r * h2};
}

// Chebyshev cosine coefficients of g(θ) = ψ(c + r cosθ) r sinθ (the density in θ).
std::vector<double> theta_density_coeffs(const EquilibriumMeasure& m) {
    const double r = 0.5 * m.endpoint_a, c = -r;
    const int M = 2 * (m.hV.degree() + 2) + 16;
    std::vector<double> g(M), out(M, 0.0);
    for (int j = 0; j < M; ++j) {
        const double th = (j + 0.5) * kPi / M;
        const double s = std::sin(th);
        g[j] = r * r / (2.0 * kPi) * m.hV(c + r * std::cos(th)) * s * s;
    }
    for (int k = 0; k < M; ++k) {
        double acc = 0.0;
        for (int j = 0; j < M; ++j) acc += g[j] * std::cos(k * (j + 0.5) * kPi / M);
        out[k] = (k == 0 ? 1.0 : 2.0) * acc / M;
    }
    // The series is a trig polynomial of degree deg(h) + 2; drop aliasing noise.
    out.resize(m.hV.degree() + 3);
    return out;
}

// Laurent polynomial part of W'(s) / sqrt(s(s+a)).
Polynomial laurent_h(const Polynomial& dW, double a) {
    const int d1 = dW.degree();  // deg V - 1
    const int dh = d1 - 1;
    if (dh < 0) return Polynomial({0.0});
    const std::vector<double> bin = series::binomial(-0.5, 1.0, d1 + 1);
    std::vector<double> h(dh + 1, 0.0);
    for (int mdeg = 0; mdeg <= dh; ++mdeg) {
        double s = 0.0, ak = 1.0;
        for (int k = 0; mdeg + 1 + k <= d1; ++k) {
            s += dW.coeff(mdeg + 1 + k) * bin[k] * ak;
            ak *= a;
        }
        h[mdeg] = s;
    }
    return Polynomial(std::move(h));
}

// ∫_0^1 u^2 sqrt(z u^2 + a) h(z u^2) du for z off (-∞, -a].
cplx phi_integral(const EquilibriumMeasure& m, cplx z) {
    const double a = m.endpoint_a;
    std::vector<double> bp{0.0, 0.25, 0.5, 0.75, 1.0};
    if (z.real() < -a) {
        const double ub = std::sqrt(a / std::abs(z.real()));
        for (int k = 1; k <= 40; ++k) {
            const double d = std::ldexp(1.0, -k);
            if (ub - d > 0.0) bp.push_back(ub - d);
            if (ub + d < 1.0) bp.push_back(ub + d);
        }
        bp.push_back(ub);
    }
    const QuadratureRule q = composite_legendre(bp, 24);
    cplx s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double u = q.nodes[i];
        const cplx w = z * (u * u);
        s += q.weights[i] * u * u * std::sqrt(w + a) * m.hV(w);
    }
    return s;
}

// Same integral split at the branch point for real x, returned as the real and
// imaginary (upper-side) parts; see phi_eval.
void phi_boundary_parts(const EquilibriumMeasure& m, double x, double& J1, double& J2) {
    const double a = m.endpoint_a, ax = std::abs(x);
    auto integrand = [&](double u) { return u * u * m.hV(x * u * u); };
    J1 = J2 = 0.0;
    const double ub = std::sqrt(a / ax);
    // J1 on [0, min(ub, 1)] with u = ub - w^2
    {
        const double w0 = ub > 1.0 ? std::sqrt(ub - 1.0) : 0.0, w1 = std::sqrt(ub);
        std::vector<double> bp;
        for (int k = 0; k <= 4; ++k) bp.push_back(w0 + (w1 - w0) * k / 4.0);
        const QuadratureRule q = composite_legendre(bp, 24);
        for (std::size_t i = 0; i < q.size(); ++i) {
            const double w = q.nodes[i];
            const double u = ub - w * w;
            const double root = w * std::sqrt(ax * (2.0 * ub - w * w));
            J1 += q.weights[i] * 2.0 * w * integrand(u) * root;
        }
    }
    if (ub < 1.0) {
        const double wmax = std::sqrt(1.0 - ub);
        const QuadratureRule q =
            composite_legendre({0.0, 0.25 * wmax, 0.5 * wmax, 0.75 * wmax, wmax}, 24);
        for (std::size_t i = 0; i < q.size(); ++i) {
            const double w = q.nodes[i];
            const double u = ub + w * w;
            const double root = w * std::sqrt(ax * (2.0 * ub + w * w));
            J2 += q.weights[i] * 2.0 * w * integrand(u) * root;
        }
    }
}

}  // namespace

double EquilibriumMeasure::density(double s) const {
    const double a = endpoint_a;
    if (s <= -a || s >= 0.0) return 0.0;
    return hV(s) * std::sqrt(-s * (s + a)) / (2.0 * kPi);
}

EquilibriumMeasure solve_one_cut(const PolynomialPotential& V, const EquilibriumOptions& opt) {
    const Polynomial d1 = V.derivative();
    const Polynomial d2 = d1.derivative();
    const QuadratureRule gc = gauss_chebyshev(2 * V.degree() + 16);

    double c = V.argmin();
    // Initial radius: bracket the root of the second condition with c fixed.
    auto f2 = [&](double r) { return moments(d1, d2, gc, c, r).F2; };
    double rlo = 1e-6, rhi = 1e-6;
    while (f2(rhi) < 0.0 && rhi < 1e12) rlo = rhi, rhi *= 2.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = std::sqrt(rlo * rhi);
        (f2(mid) < 0.0 ? rlo : rhi) = mid;
    }
    double rho = std::log(std::sqrt(rlo * rhi));

    auto norm = [](const Moments& m) { return std::hypot(m.F1, m.F2); };
    Moments mo = moments(d1, d2, gc, c, std::exp(rho));
    int it = 0;
    for (; it < opt.max_iterations; ++it) {
        const double scale = 1.0 + std::abs(mo.J11) * std::exp(rho);
        if (norm(mo) <= opt.tolerance * scale) break;
        const double det = mo.J11 * mo.J22 - mo.J12 * mo.J21;
        if (det == 0.0 || !std::isfinite(det)) throw SolverError("solve_one_cut: singular Jacobian");
        const double dc = -(mo.J22 * mo.F1 - mo.J12 * mo.F2) / det;
        const double dr = -(-mo.J21 * mo.F1 + mo.J11 * mo.F2) / det;
        double lam = 1.0;
        const double n0 = norm(mo);
        Moments trial{};
        for (int k = 0; k < 40; ++k, lam *= 0.5) {
            trial = moments(d1, d2, gc, c + lam * dc, std::exp(rho + lam * dr));
            if (norm(trial) < n0) break;
        }
        c += lam * dc;
        rho += lam * dr;
        mo = trial;
    }
    if (it >= opt.max_iterations)
        throw SolverError("solve_one_cut: Newton did not converge in " +
                          std::to_string(opt.max_iterations) + " iterations");

    const double r = std::exp(rho);
    EquilibriumMeasure m;
    m.endpoint_a = 2.0 * r;
    m.shift = c + r;
    m.potential = V.translated(m.shift);
    m.hV = laurent_h(m.potential.derivative(), m.endpoint_a);
    m.newton_iterations = it;
    m.moment_residual = norm(mo);

    const double a = m.endpoint_a;
    for (int i = 0; i < opt.check_grid; ++i) {
        const double s = -a + a * i / (opt.check_grid - 1);
        if (!(m.hV(s) > 0.0))
            throw NotOneCutRegular("h_V vanishes on the support at s = " + std::to_string(s));
    }
    m.ell_V = ell_V_at(m, -0.5 * a);

    // Strict Euler–Lagrange inequality off the support, out past every critical point.
    double reach = 3.0 * a;
    const Polynomial dW = m.potential.derivative();
    for (double cf : dW.coeffs()) reach = std::max(reach, 1.0 + a + std::abs(cf / dW.coeffs().back()));
    for (int i = 1; i <= opt.check_grid; ++i) {
        const double d = 1e-3 * a + (reach - 1e-3 * a) * (i - 1) / (opt.check_grid - 1);
        for (double x : {-a - d, d}) {
            if (!(el_residual(m, x) < 0.0))
                throw NotOneCutRegular("Euler-Lagrange inequality fails at s = " + std::to_string(x));
        }
    }
    return m;
}

double log_potential(const EquilibriumMeasure& meas, double x) {
    const std::vector<double> g = theta_density_coeffs(meas);
    const double r = 0.5 * meas.endpoint_a, c = -r;
    const double X = (x - c) / r;
    const double mass = kPi * g[0];
    double U = 0.0;
    if (std::abs(X) <= 1.0) {
        const double th0 = std::acos(X);
        U = std::log(r / 2.0) * mass;
        for (std::size_t k = 1; k < g.size(); ++k) U -= kPi * g[k] * std::cos(k * th0) / k;
    } else {
        const double ax = std::abs(X);
        const double rho = ax - std::sqrt(X * X - 1.0);
        const double sr = X > 0 ? rho : -rho;
        U = (std::log(r) - std::log(2.0 * rho)) * mass;
        double p = 1.0;
        for (std::size_t k = 1; k < g.size(); ++k) {
            p *= sr;
            U -= kPi * p * g[k] / k;
        }
    }
    return U;
}

double ell_V_at(const EquilibriumMeasure& meas, double x) {
    return 2.0 * log_potential(meas, x) - meas.potential(x);
}

double ell_V(const EquilibriumMeasure& meas) { return ell_V_at(meas, -0.5 * meas.endpoint_a); }

double el_residual(const EquilibriumMeasure& meas, double x) {
    return 2.0 * log_potential(meas, x) - meas.potential(x) - meas.ell_V;
}

double total_mass(const EquilibriumMeasure& meas) {
    const double r = 0.5 * meas.endpoint_a, c = -r;
    const QuadratureRule gc = gauss_chebyshev(meas.hV.degree() + 8);
    double s = 0.0;
    for (std::size_t i = 0; i < gc.size(); ++i) {
        const double u = gc.nodes[i];
        s += gc.weights[i] * meas.hV(c + r * u) * (1.0 - u * u);
    }
    return r * r / (2.0 * kPi) * s;
}

std::complex<double> phi_eval(const EquilibriumMeasure& meas, std::complex<double> z, Side side) {
    if (z == cplx(0.0, 0.0)) return 0.0;
    const bool on_cut = z.imag() == 0.0 && z.real() <= 0.0;
    if (on_cut) {
        if (side == Side::none) throw DomainError("phi_eval: z on (-inf, 0] needs a side");
        const double x = z.real(), ax = -x;
        double J1, J2;
        phi_boundary_parts(meas, x, J1, J2);
        const double p = std::pow(ax, 1.5);
        const double sg = side == Side::upper ? 1.0 : -1.0;
        return {p * J2, -sg * p * J1};
    }
    return std::pow(z, 1.5) * phi_integral(meas, z);
}

std::complex<double> varphi_eval(const EquilibriumMeasure& meas, std::complex<double> z) {
    if (std::abs(z) >= meas.endpoint_a) throw DomainError("varphi_eval: need |z| < a");
    const cplx I = phi_integral(meas, z);
    return z * std::pow(1.5 * I, 2.0 / 3.0);
}

double ConformalData::forward(double z) const {
    double s = 0.0;
    for (std::size_t k = a_coeffs.size(); k-- > 0;) s = (s + a_coeffs[k]) * z;
    return s;
}

double ConformalData::inverse(double w) const {
    double s = 0.0;
    for (std::size_t k = A_coeffs.size(); k-- > 0;) s = (s + A_coeffs[k]) * w;
    return s;
}

ConformalData varphi_and_series(const EquilibriumMeasure& meas, int K) {
    if (K < 3) throw DomainError("varphi_and_series: K must be >= 3");
    if (K > kMaxConformalOrder)
        throw TruncationError("varphi_and_series: K = " + std::to_string(K) + " exceeds the supported order " +
                              std::to_string(kMaxConformalOrder));
    const double a = meas.endpoint_a;
    const int N = K + 1;
    const std::vector<double> root = series::binomial(0.5, a, N);
    const std::vector<double> e = series::multiply(root, meas.hV.coeffs(), N);
    std::vector<double> f(N);
    for (int k = 0; k < N; ++k) f[k] = std::sqrt(a) * e[k] / (2.0 * k + 3.0);
    if (!(f[0] > 0.0)) throw NotOneCutRegular("varphi_and_series: h_V(0) <= 0");
    std::vector<double> P(N);
    for (int k = 0; k < N; ++k) P[k] = f[k] / f[0];
    P[0] = 1.0;
    const std::vector<double> B = series::power(P, 2.0 / 3.0, K);

    ConformalData cd;
    cd.cV = std::pow(1.5 * f[0], 2.0 / 3.0);
    cd.a_coeffs.resize(K);
    for (int k = 0; k < K; ++k) cd.a_coeffs[k] = cd.cV * B[k];
    cd.cV_tilde = cd.a_coeffs[1];
    std::vector<double> fwd(K + 1, 0.0);
    for (int k = 0; k < K; ++k) fwd[k + 1] = cd.a_coeffs[k];
    const std::vector<double> inv = series::revert(fwd, K + 1);
    cd.A_coeffs.assign(inv.begin() + 1, inv.end());
    return cd;
}

}  // namespace multstat
