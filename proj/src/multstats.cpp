#include "multstat/multstats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "multstat/errors.hpp"
#include "multstat/linalg.hpp"
#include "multstat/simd.hpp"

namespace multstat {

namespace {

struct SigmaNodes {
    std::vector<double> sigma, one_minus;
};

SigmaNodes sigma_at_nodes(const DeformationSpec& spec, const DiscretizedWeight& dw, int n, double x) {
    SigmaNodes s;
    const std::size_t N = dw.rule.size();
    s.sigma.resize(N);
    s.one_minus.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double u = fermi_exponent(spec, dw.rule.nodes[i], n, x);
        s.sigma[i] = std::exp(log_sigma_of_u(u));
        s.one_minus[i] = std::exp(log_one_minus_sigma_of_u(u));
    }
    return s;
}

FredholmResult mult_stat_once(const PolynomialPotential& V, const DeformationSpec& spec, int n,
                              double x, const GridOptions& grid) {
    const DiscretizedWeight dw = discretize(V, n, &spec, x, false, grid);
    const OrthoBasis B = stieltjes_basis(dw, n);
    const SigmaNodes sn = sigma_at_nodes(spec, dw, n, x);

    Matrix M(n), G(n);
    double trM = 0.0;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k <= j; ++k) {
            M(j, k) = M(k, j) = simd::weighted_dot(sn.one_minus, B.q[j], B.q[k]);
            G(j, k) = G(k, j) = simd::weighted_dot(sn.sigma, B.q[j], B.q[k]);
        }
    for (int j = 0; j < n; ++j) trM += M(j, j);

    FredholmResult r;
    r.n = n;
    r.x = x;
    r.grid_meta.nodes = dw.rule.size();
    r.grid_meta.panels = dw.rule.size() / grid.nodes_per_panel;
    r.grid_meta.truncation = dw.rule.domain;
    LogDet ld;
    if (trM <= 1.0) {
        Matrix A = Matrix::identity(n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) A(j, k) -= M(j, k);
        ld = lu_logdet(std::move(A));
        r.route = "I-M";
    } else {
        ld = lu_logdet(std::move(G));
        r.route = "G_sigma";
    }
    if (ld.sign <= 0) throw PrecisionError("mult_stat: determinant is not positive");
    r.log_value = ld.log_abs;
    r.value = r.log_value < std::log(1e-300) ? 0.0 : std::exp(r.log_value);
    return r;
}

}  // namespace

FredholmResult mult_stat(const PolynomialPotential& V, const DeformationSpec& spec, int n, double x,
                         const StatOptions& opt) {
    if (n < 1) throw DomainError("mult_stat: n must be >= 1");
    if (!opt.check_refinement) return mult_stat_once(V, spec, n, x, opt.grid);
    const FredholmResult coarse = mult_stat_once(V, spec, n, x, opt.grid);
    FredholmResult fine = mult_stat_once(V, spec, n, x, opt.grid.refined());
    fine.refinement_delta =
        std::abs(fine.log_value - coarse.log_value) / std::max(1.0, std::abs(fine.log_value));
    if (fine.refinement_delta > opt.tolerance) {
        std::ostringstream os;
        os.precision(6);
        os << "mult_stat: grid refinement changed log L by " << fine.refinement_delta
           << " (relative) at n=" << n << ", x=" << x << ", nodes " << coarse.grid_meta.nodes << " -> "
           << fine.grid_meta.nodes;
        throw ConvergenceError(os.str());
    }
    return fine;
}

AndreiefResult andreief_oracle(const PolynomialPotential& V, const DeformationSpec& spec, int n,
                               double x, const GridOptions& grid) {
    if (n < 1 || n > 6) throw DomainError("andreief_oracle: need 1 <= n <= 6");
    const DiscretizedWeight dw = discretize(V, n, &spec, x, false, grid);
    const std::size_t N = dw.rule.size();
    const double L = dw.max_logw();
    std::vector<double> w(N), ws(N);
    double m0 = 0, m1 = 0, m2 = 0;
    for (std::size_t i = 0; i < N; ++i) {
        w[i] = dw.rule.weights[i] * std::exp(dw.logw[i] - L);
        ws[i] = w[i] * std::exp(log_sigma_n(spec, dw.rule.nodes[i], n, x));
        m0 += w[i];
        m1 += w[i] * dw.rule.nodes[i];
    }
    const double c = m1 / m0;
    for (std::size_t i = 0; i < N; ++i) m2 += w[i] * (dw.rule.nodes[i] - c) * (dw.rule.nodes[i] - c);
    const double sd = std::sqrt(m2 / m0);

    // Moments of the shifted, scaled monomials; the determinant ratio is unchanged.
    std::vector<double> mu0(2 * n - 1, 0.0), mus(2 * n - 1, 0.0);
    for (std::size_t i = 0; i < N; ++i) {
        const double xi = (dw.rule.nodes[i] - c) / sd;
        double p = 1.0;
        for (int k = 0; k < 2 * n - 1; ++k) {
            mu0[k] += w[i] * p;
            mus[k] += ws[i] * p;
            p *= xi;
        }
    }
    Matrix H0(n), Hs(n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            H0(j, k) = mu0[j + k];
            Hs(j, k) = mus[j + k];
        }
    AndreiefResult r;
    r.condition = condition_1(H0);
    r.precision_warning = r.condition > 1e12;
    const LogDet d0 = lu_logdet(H0), ds = lu_logdet(Hs);
    if (d0.sign <= 0 || ds.sign <= 0) throw PrecisionError("andreief_oracle: moment determinant not positive");
    r.log_value = ds.log_abs - d0.log_abs;
    r.value = std::exp(r.log_value);
    return r;
}

double joint_density_n2(const PolynomialPotential& V, const DeformationSpec& spec, double x,
                        int panels, int nodes_per_panel) {
    const int n = 2;
    const Interval iv = truncation_for_weight(V, n);
    std::vector<double> bp;
    for (int i = 0; i <= panels; ++i) bp.push_back(iv.lo + iv.width() * i / panels);
    for (double zs : fermi_layer_points(spec, n, x, iv))
        for (int k = -4; k <= 4; ++k) {
            const double b = zs + 0.05 * k;
            if (b > iv.lo && b < iv.hi) bp.push_back(b);
        }
    const QuadratureRule q = composite_legendre(bp, nodes_per_panel);
    const std::size_t N = q.size();
    const double vmin = V.min_value();
    std::vector<double> w(N), ws(N);
    for (std::size_t i = 0; i < N; ++i) {
        w[i] = q.weights[i] * std::exp(-n * (V(q.nodes[i]) - vmin));
        ws[i] = w[i] * sigma_n(spec, q.nodes[i], n, x);
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        double rn = 0.0, rd = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            const double d = q.nodes[i] - q.nodes[j];
            rn += ws[j] * d * d;
            rd += w[j] * d * d;
        }
        num += ws[i] * rn;
        den += w[i] * rd;
    }
    return num / den;
}

namespace {

struct KernelIntegrand {
    std::vector<double> nodes, values;  // values already include quadrature weights
    Interval domain;
};

KernelIntegrand kernel_integrand(const PolynomialPotential& V, const DeformationSpec& spec, int n,
                                 double x, const GridOptions& grid) {
    const DiscretizedWeight dw = discretize(V, n, &spec, x, true, grid);
    const OrthoBasis B = stieltjes_basis(dw, n);
    const SigmaNodes sn = sigma_at_nodes(spec, dw, n, x);
    KernelIntegrand ki;
    ki.nodes = dw.rule.nodes;
    ki.domain = dw.rule.domain;
    ki.values.assign(dw.rule.size(), 0.0);
    for (int j = 0; j < n; ++j)
        for (std::size_t i = 0; i < ki.values.size(); ++i) ki.values[i] += B.q[j][i] * B.q[j][i];
    for (std::size_t i = 0; i < ki.values.size(); ++i) ki.values[i] *= sn.one_minus[i];
    return ki;
}

}  // namespace

double dlogL_dx_kernel(const PolynomialPotential& V, const DeformationSpec& spec, int n, double x,
                       const GridOptions& grid) {
    if (n < 1) throw DomainError("dlogL_dx_kernel: n must be >= 1");
    const KernelIntegrand ki = kernel_integrand(V, spec, n, x, grid);
    double s = 0.0;
    for (double v : ki.values) s += v;
    return -s;
}

LocalizationSplit localization_tail(const PolynomialPotential& V, const DeformationSpec& spec, int n,
                                    double x, double eps_lo, double eps_hi, const GridOptions& grid) {
    if (n < 1) throw DomainError("localization_tail: n must be >= 1");
    if (!(eps_lo > 0.0) || !(eps_hi > 0.0)) throw DomainError("localization_tail: window constants must be positive");
    const double nn = static_cast<double>(n);
    LocalizationSplit out;
    out.window = {-eps_lo * std::pow(nn, spec.alpha - 2.0 / 3.0),
                  eps_hi * std::pow(nn, 2.0 * spec.alpha / 3.0 - 2.0 / 3.0)};
    const Interval iv = truncation_for_weight(V, n, grid.floor_log);
    if (out.window.lo <= iv.lo || out.window.hi >= iv.hi)
        throw DomainError("localization_tail: window extends beyond the truncation interval");
    GridOptions g = grid;
    g.extra_breakpoints.push_back(out.window.lo);
    g.extra_breakpoints.push_back(out.window.hi);
    const KernelIntegrand ki = kernel_integrand(V, spec, n, x, g);
    for (std::size_t i = 0; i < ki.nodes.size(); ++i) {
        if (out.window.contains(ki.nodes[i])) out.window_mass += ki.values[i];
        else out.tail_mass += ki.values[i];
    }
    out.total = out.window_mass + out.tail_mass;
    return out;
}

GammaCheck gamma_leading_check(const EquilibriumMeasure& meas, const DeformationSpec* spec, int n,
                               double x, const GridOptions& grid) {
    if (n < 1) throw DomainError("gamma_leading_check: n must be >= 1");
    const DiscretizedWeight dw = discretize(meas.potential, n, spec, x, spec != nullptr, grid);
    const RecurrenceTable rt = stieltjes(dw, n);
    GammaCheck g;
    g.log_gamma_sq = rt.log_gamma_sq(n - 1);
    g.rescaled = std::exp(g.log_gamma_sq + 2.0 * n * meas.phi_constant());
    g.constant = meas.endpoint_a / (8.0 * std::numbers::pi);
    g.relative_gap = std::abs(g.rescaled - g.constant) / g.constant;
    return g;
}

}  // namespace multstat
