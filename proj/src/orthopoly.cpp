#include "multstat/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "multstat/errors.hpp"
#include "multstat/simd.hpp"

namespace multstat {

GridOptions GridOptions::refined() const {
    GridOptions g = *this;
    g.panels *= 2;
    g.layer_levels += 1;
    return g;
}

double DiscretizedWeight::max_logw() const {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : logw) m = std::max(m, v);
    return m;
}

double DiscretizedWeight::log_mass() const {
    const double L = max_logw();
    double s = 0.0;
    for (std::size_t i = 0; i < logw.size(); ++i) s += rule.weights[i] * std::exp(logw[i] - L);
    return L + std::log(s);
}

double DiscretizedWeight::mass() const { return std::exp(log_mass()); }

std::vector<double> fermi_layer_points(const DeformationSpec& spec, int n, double x, Interval iv) {
    const double s = std::pow(static_cast<double>(n), 2.0 / 3.0);
    auto f = [&](double z) { return s * spec.Q(z) - x; };
    std::vector<double> roots;
    const int N = 4000;
    double zl = iv.lo, fl = f(zl);
    for (int i = 1; i <= N; ++i) {
        const double zr = iv.lo + iv.width() * i / N;
        const double fr = f(zr);
        if (fl == 0.0) roots.push_back(zl);
        else if ((fl < 0.0) != (fr < 0.0) && fr != 0.0) {
            double lo = zl, hi = zr, flo = fl;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid);
                if ((fm < 0.0) == (flo < 0.0)) lo = mid, flo = fm;
                else hi = mid;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        zl = zr;
        fl = fr;
    }
    return roots;
}

DiscretizedWeight discretize(const PolynomialPotential& V, int n, const DeformationSpec* spec,
                             double x, bool apply_sigma, const GridOptions& opt) {
    if (n < 1) throw DomainError("discretize: n must be >= 1");
    if (apply_sigma && spec == nullptr) throw DomainError("discretize: sigma requested without a deformation");
    const Interval iv = truncation_for_weight(V, n, opt.floor_log);
    std::vector<double> bp;
    for (int i = 0; i <= opt.panels; ++i) bp.push_back(iv.lo + iv.width() * i / opt.panels);
    bp.back() = iv.hi;
    if (spec != nullptr) {
        const double s = std::pow(static_cast<double>(n), 2.0 / 3.0);
        for (double zs : fermi_layer_points(*spec, n, x, iv)) {
            const double slope = std::max(std::abs(spec->dQ(zs)) * s, 1e-300);
            const double w = 1.0 / slope;
            bp.push_back(zs);
            for (int k = 0; k < opt.layer_levels; ++k) {
                const double d = w * std::ldexp(1.0, k);
                if (zs - d > iv.lo) bp.push_back(zs - d);
                if (zs + d < iv.hi) bp.push_back(zs + d);
            }
        }
    }
    for (double b : opt.extra_breakpoints)
        if (b > iv.lo && b < iv.hi) bp.push_back(b);

    DiscretizedWeight dw;
    dw.rule = composite_legendre(std::move(bp), opt.nodes_per_panel);
    dw.logw.resize(dw.rule.size());
    for (std::size_t i = 0; i < dw.rule.size(); ++i) {
        const double z = dw.rule.nodes[i];
        double lw = -n * V(z);
        if (apply_sigma) lw += log_sigma_n(*spec, z, n, x);
        dw.logw[i] = lw;
    }
    return dw;
}

DiscretizedWeight discretize_rule(QuadratureRule rule, const std::function<double(double)>& logw) {
    DiscretizedWeight dw;
    dw.logw.resize(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) dw.logw[i] = logw(rule.nodes[i]);
    dw.rule = std::move(rule);
    return dw;
}

double RecurrenceTable::log_mass() const { return std::log(beta[0]) + log_scale; }
double RecurrenceTable::mass() const { return std::exp(log_mass()); }

double RecurrenceTable::log_gamma_sq(int k) const {
    if (k < 0 || k >= K()) throw DomainError("log_gamma_sq: index out of range");
    double s = log_mass();
    for (int j = 1; j <= k; ++j) s += std::log(beta[j]);
    return -s;
}

double RecurrenceTable::gamma_sq(int k) const { return std::exp(log_gamma_sq(k)); }

std::vector<double> RecurrenceTable::gamma() const {
    std::vector<double> g(K());
    for (int k = 0; k < K(); ++k) g[k] = std::exp(0.5 * log_gamma_sq(k));
    return g;
}

std::vector<double> RecurrenceTable::evaluate(double z, int m) const {
    if (m < 0 || m > K()) throw DomainError("RecurrenceTable::evaluate: degree out of range");
    std::vector<double> p(m + 1);
    p[0] = std::exp(-0.5 * log_mass());
    if (m >= 1) p[1] = (z - alpha[0]) * p[0] / std::sqrt(beta[1]);
    for (int k = 1; k < m; ++k)
        p[k + 1] = ((z - alpha[k]) * p[k] - std::sqrt(beta[k]) * p[k - 1]) / std::sqrt(beta[k + 1]);
    return p;
}

void RecurrenceTable::evaluate_with_derivative(double z, int m, std::vector<double>& p,
                                               std::vector<double>& dp) const {
    if (m < 0 || m > K()) throw DomainError("RecurrenceTable::evaluate: degree out of range");
    p.assign(m + 1, 0.0);
    dp.assign(m + 1, 0.0);
    p[0] = std::exp(-0.5 * log_mass());
    for (int k = 0; k < m; ++k) {
        const double bk = k > 0 ? std::sqrt(beta[k]) : 0.0;
        const double pm = k > 0 ? p[k - 1] : 0.0, dpm = k > 0 ? dp[k - 1] : 0.0;
        const double inv = 1.0 / std::sqrt(beta[k + 1]);
        p[k + 1] = ((z - alpha[k]) * p[k] - bk * pm) * inv;
        dp[k + 1] = ((z - alpha[k]) * dp[k] + p[k] - bk * dpm) * inv;
    }
}

namespace {

OrthoBasis lanczos(const DiscretizedWeight& dw, int K, bool keep_basis) {
    const std::size_t N = dw.rule.size();
    if (K < 1) throw DomainError("stieltjes: K must be >= 1");
    if (static_cast<std::size_t>(K) * 4 > N)
        throw DomainError("stieltjes: K = " + std::to_string(K) + " exceeds nodes/4 = " +
                          std::to_string(N / 4));
    for (double v : dw.logw)
        if (!std::isfinite(v)) throw DomainError("stieltjes: non-finite log-weight");

    const double L = dw.max_logw();
    const std::vector<double>& x = dw.rule.nodes;
    std::vector<double> s(N);
    for (std::size_t i = 0; i < N; ++i) s[i] = std::sqrt(dw.rule.weights[i] * std::exp(dw.logw[i] - L));

    OrthoBasis out;
    RecurrenceTable& rt = out.table;
    rt.log_scale = L;
    rt.alpha.resize(K);
    rt.beta.resize(K + 1);
    const double m0 = simd::dot(s, s);
    if (!(m0 > 0.0)) throw PrecisionError("stieltjes: weight has zero mass");
    rt.beta[0] = m0;

    std::vector<std::vector<double>> Q;
    Q.reserve(K + 1);
    std::vector<double> q0(N);
    const double inv0 = 1.0 / std::sqrt(m0);
    for (std::size_t i = 0; i < N; ++i) q0[i] = s[i] * inv0;
    Q.push_back(std::move(q0));

    std::vector<double> zero(N, 0.0), r(N);
    for (int k = 0; k < K; ++k) {
        const std::vector<double>& qk = Q[k];
        const std::vector<double>& qp = k > 0 ? Q[k - 1] : zero;
        const double ak = simd::weighted_dot(x, qk, qk);
        rt.alpha[k] = ak;
        const double bk = k > 0 ? std::sqrt(rt.beta[k]) : 0.0;
        simd::recurrence_step(x, ak, bk, 1.0, qp, qk, r);
        // Two passes of full re-orthogonalisation.
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j <= k; ++j) simd::axpy(-simd::dot(r, Q[j]), Q[j], r);
        const double b2 = simd::dot(r, r);
        const double scale = ak * ak + (k > 0 ? rt.beta[k] : 0.0) + 1e-300;
        if (!(b2 > 1e-28 * scale))
            throw PrecisionError("stieltjes: recurrence coefficient beta_" + std::to_string(k + 1) +
                                 " lost positivity; reduce K or refine the grid");
        rt.beta[k + 1] = b2;
        if (k + 1 < K || keep_basis) {
            std::vector<double> qn(N);
            const double inv = 1.0 / std::sqrt(b2);
            for (std::size_t i = 0; i < N; ++i) qn[i] = r[i] * inv;
            Q.push_back(std::move(qn));
        }
    }
    if (keep_basis) {
        Q.resize(K);
        out.q = std::move(Q);
    }
    return out;
}

}  // namespace

RecurrenceTable stieltjes(const DiscretizedWeight& dw, int K) { return lanczos(dw, K, false).table; }

OrthoBasis stieltjes_basis(const DiscretizedWeight& dw, int K) { return lanczos(dw, K, true); }

double gram_residual(const DiscretizedWeight& dw, const RecurrenceTable& rt) {
    const int K = rt.K();
    const std::size_t N = dw.rule.size();
    std::vector<std::vector<double>> P(K, std::vector<double>(N));
    std::vector<double> w(N);
    const double L = rt.log_scale;
    for (std::size_t i = 0; i < N; ++i) {
        const std::vector<double> p = rt.evaluate(dw.rule.nodes[i], K - 1);
        // p_k^true sqrt(w) = p_k^scaled sqrt(w_scaled): fold e^{L} into the weight
        w[i] = dw.rule.weights[i] * std::exp(dw.logw[i] - L);
        const double f = std::exp(0.5 * L);
        for (int k = 0; k < K; ++k) P[k][i] = p[k] * f;
    }
    double worst = 0.0;
    for (int j = 0; j < K; ++j)
        for (int k = 0; k <= j; ++k) {
            const double g = simd::weighted_dot(w, P[j], P[k]);
            worst = std::max(worst, std::abs(g - (j == k ? 1.0 : 0.0)));
        }
    return worst;
}

double cd_kernel(const RecurrenceTable& rt, int n, double lambda, double mu) {
    if (n < 1 || n > rt.K()) throw DomainError("cd_kernel: need 1 <= n <= K");
    const double bn = std::sqrt(rt.beta[n]);
    if (std::abs(lambda - mu) > 1e-8) {
        const std::vector<double> pl = rt.evaluate(lambda, n), pm = rt.evaluate(mu, n);
        return bn * (pl[n] * pm[n - 1] - pl[n - 1] * pm[n]) / (lambda - mu);
    }
    std::vector<double> p, dp;
    rt.evaluate_with_derivative(0.5 * (lambda + mu), n, p, dp);
    return bn * (dp[n] * p[n - 1] - dp[n - 1] * p[n]);
}

double cd_kernel_sum(const RecurrenceTable& rt, int n, double lambda, double mu) {
    if (n < 1 || n > rt.K()) throw DomainError("cd_kernel_sum: need 1 <= n <= K");
    const std::vector<double> pl = rt.evaluate(lambda, n - 1), pm = rt.evaluate(mu, n - 1);
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += pl[k] * pm[k];
    return s;
}

double gamma_sq(const RecurrenceTable& rt, int k) { return rt.gamma_sq(k); }
double log_gamma_sq(const RecurrenceTable& rt, int k) { return rt.log_gamma_sq(k); }

}  // namespace multstat
