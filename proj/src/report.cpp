#include "multstat/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "multstat/airy.hpp"
#include "multstat/asymptotics.hpp"
#include "multstat/deformation.hpp"
#include "multstat/equilibrium.hpp"
#include "multstat/errors.hpp"
#include "multstat/kpz.hpp"
#include "multstat/multstats.hpp"
#include "multstat/orthopoly.hpp"

namespace multstat {

ReportRow make_row(std::string experiment, std::string criterion, double measured, double reference,
                   double gap, double tolerance) {
    ReportRow r{std::move(experiment), std::move(criterion), measured, reference, gap, tolerance, false};
    r.pass = std::isfinite(gap) && gap <= tolerance;
    return r;
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvTable::add(std::vector<std::string> row) {
    if (row.size() != columns.size()) throw std::logic_error(file + ": row width does not match header");
    rows.push_back(std::move(row));
}

void CsvTable::write(const std::string& dir) const {
    std::ofstream out(std::filesystem::path(dir) / file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file + " in " + dir);
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const std::string& c = cells[i];
            out << (i ? "," : "");
            if (c.find_first_of(",\"\n") == std::string::npos) {
                out << c;
                continue;
            }
            out << '"';
            for (char ch : c) out << (ch == '"' ? "\"\"" : std::string(1, ch));
            out << '"';
        }
        out << '\n';
    };
    line(columns);
    for (const auto& r : rows) line(r);
}

const std::vector<ExperimentInfo>& list_experiments() {
    static const std::vector<ExperimentInfo> v{
        {"equilibrium-exactness", "one-cut endpoint, h_V, unit mass and Euler-Lagrange equality", "equilibrium.csv"},
        {"conformal-constant", "c_V of the local conformal map and its inverse-series identities", "equilibrium.csv"},
        {"orthonormality", "Stieltjes recurrence Gram residual; Hermite and Legendre regressions", "recurrence.csv"},
        {"determinant-oracle", "multiplicative statistic vs Andreief moment determinant and n=2 joint density", "oracles.csv"},
        {"log-derivative-identity", "finite-difference d/dx log L_n^Q vs the kernel integral against 1 - sigma_n", "multstats.csv"},
        {"localization", "kernel integral concentrates in a shrinking window near the edge", "localization.csv"},
        {"corollary-tail", "tail formula for d/dx log L_n^Q at x = x0 n^alpha", "asymptotics.csv"},
        {"kpz-tail", "closed-form large-s tail of d/ds log L(s,T) for the KPZ Fredholm determinant", "kpz.csv"},
        {"algebraic-identity", "tail predictor equals the KPZ tail under s = x/t, T = t^3", "identity.csv"},
        {"norming-constant", "gamma_{n-1}^2 e^{2n l} tends to a/(8 pi)", "norming.csv"},
        {"laplace-lemma", "Laplace-type expansion of F(n) and the g_0 estimate", "laplace.csv"},
        {"airy", "Ai(0), Ai'(0) and the Wronskian", "airy.csv"},
    };
    return v;
}

std::string list_text() {
    std::ostringstream os;
    for (const auto& e : list_experiments()) os << e.id << "\t" << e.checks << "\t" << e.file << "\n";
    return os.str();
}

const std::vector<std::pair<std::string, std::vector<std::string>>>& csv_schemas() {
    static const std::vector<std::pair<std::string, std::vector<std::string>>> s{
        {"equilibrium.csv", {"quantity", "value", "reference", "abs_gap"}},
        {"recurrence.csv", {"weight", "n", "x", "k", "alpha", "beta", "log_gamma_sq", "gram_residual"}},
        {"oracles.csv", {"n", "x", "method", "log_mult_stat", "log_oracle", "condition", "rel_gap"}},
        {"multstats.csv",
         {"n", "x", "alpha", "t", "log_value", "dlogL_dx_kernel", "window_mass", "tail_mass", "refinement_delta"}},
        {"asymptotics.csv", {"n", "x", "predictor", "measured", "gap", "gap_over_x3n23"}},
        {"corollary_variants.csv", {"n", "x", "measured", "predictor", "predictor_over_t", "predictor_cv_scaled"}},
        {"localization.csv",
         {"n", "x", "eps_lo", "eps_hi", "window_lo", "window_hi", "window_mass", "tail_mass", "tail_ratio"}},
        {"kpz.csv", {"s", "T", "m", "L_left", "R_right", "log_value", "dlogL_ds_fd", "cc_tail", "abs_gap"}},
        {"identity.csv", {"x", "t", "predictor", "cc_tail", "rel_gap"}},
        {"norming.csv", {"n", "log_gamma_sq", "rescaled", "constant", "rel_gap"}},
        {"laplace.csv", {"n", "x", "prediction", "direct", "rel_gap", "g0_direct", "g0_estimate", "g0_ratio"}},
        {"airy.csv", {"quantity", "x", "value", "reference", "abs_gap"}},
        {"summary.csv", {"experiment", "criterion", "measured", "reference", "gap", "tolerance", "pass"}},
    };
    return s;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPi = std::numbers::pi;

CsvTable table(const std::string& file) {
    for (const auto& [f, cols] : csv_schemas())
        if (f == file) return CsvTable{f, cols, {}};
    throw std::logic_error("no schema for " + file);
}

struct Family {
    std::vector<CsvTable> tables;
    std::vector<ReportRow> rows;
};

struct Context {
    const RunConfig& cfg;
    PolynomialPotential V;
    EquilibriumMeasure meas;
    ConformalData conf;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Largest ratio between consecutive entries (≤ 1 means non-increasing).
double worst_step(const std::vector<double>& v) {
    double w = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) w = std::max(w, v[i] / v[i - 1]);
    return w;
}

Family fam_equilibrium(const Context& c) {
    const RunConfig& cfg = c.cfg;
    const EquilibriumMeasure& m = c.meas;
    Family f;
    CsvTable t = table("equilibrium.csv");
    auto expect = [&](const std::string& k) {
        auto it = cfg.expect.find(k);
        return it == cfg.expect.end() ? kNaN : it->second;
    };
    auto put = [&](const std::string& q, double v, double ref) {
        t.add({q, fmt(v), fmt(ref), fmt(std::isnan(ref) ? kNaN : std::abs(v - ref))});
    };
    const double a = m.endpoint_a;
    put("endpoint_a", a, expect("endpoint_a"));
    put("shift", m.shift, expect("shift"));
    double h_gap = 0.0;
    const bool have_h = cfg.expect.count("h0") > 0;
    for (int k = 0; k <= m.hV.degree(); ++k) {
        const std::string key = "h" + std::to_string(k);
        double ref = expect(key);
        if (have_h && std::isnan(ref)) ref = 0.0;
        put(key, m.hV.coeff(k), ref);
        if (have_h) h_gap = std::max(h_gap, std::abs(m.hV.coeff(k) - ref));
    }
    const double mass = total_mass(m);
    put("mass", mass, 1.0);
    double el_in = 0.0, el_out = -std::numeric_limits<double>::infinity();
    for (int i = 1; i < 400; ++i) el_in = std::max(el_in, std::abs(el_residual(m, -a + a * i / 400.0)));
    for (int i = 1; i <= 50; ++i) {
        const double d = a * (0.01 + 0.02 * i);
        el_out = std::max({el_out, el_residual(m, -a - d), el_residual(m, d)});
    }
    put("el_residual_support_max", el_in, 0.0);
    put("el_residual_outside_max", el_out, kNaN);
    put("ell_V", m.ell_V, expect("ell_V"));
    put("newton_iterations", m.newton_iterations, kNaN);

    const auto& ac = c.conf.a_coeffs;
    const auto& Ac = c.conf.A_coeffs;
    put("cV", c.conf.cV, expect("cV"));
    put("cV_tilde", c.conf.cV_tilde, kNaN);
    const double a1 = ac[0], a2 = ac[1], a3 = ac[2];
    const double id1 = std::abs(Ac[0] - 1.0 / a1);
    const double id2 = std::abs(Ac[1] + a2 / (a1 * a1 * a1));
    const double id3 = std::abs(Ac[2] - (2.0 * a2 * a2 - a1 * a3) / std::pow(a1, 5));
    put("A1", Ac[0], 1.0 / a1);
    put("A2", Ac[1], -a2 / (a1 * a1 * a1));
    put("A3", Ac[2], (2.0 * a2 * a2 - a1 * a3) / std::pow(a1, 5));

    const std::string E = "equilibrium-exactness";
    if (cfg.expect.count("endpoint_a"))
        f.rows.push_back(make_row(E, "endpoint a", a, expect("endpoint_a"), std::abs(a - expect("endpoint_a")), cfg.tol("endpoint")));
    if (have_h) f.rows.push_back(make_row(E, "h_V coefficients", m.hV.coeff(0), expect("h0"), h_gap, cfg.tol("endpoint")));
    f.rows.push_back(make_row(E, "total mass", mass, 1.0, std::abs(mass - 1.0), cfg.tol("mass")));
    f.rows.push_back(make_row(E, "Euler-Lagrange residual on support", el_in, 0.0, el_in, cfg.tol("el_residual")));
    const std::string C = "conformal-constant";
    if (cfg.expect.count("cV"))
        f.rows.push_back(make_row(C, "c_V", c.conf.cV, expect("cV"), std::abs(c.conf.cV - expect("cV")), cfg.tol("cV")));
    const double idmax = std::max({id1, id2, id3});
    f.rows.push_back(make_row(C, "inverse series A1..A3", idmax, 0.0, idmax, cfg.tol("inverse_series")));
    f.tables.push_back(std::move(t));
    return f;
}

Family fam_recurrence(const Context& c) {
    const RunConfig& cfg = c.cfg;
    Family f;
    CsvTable t = table("recurrence.csv");
    constexpr int K = 40;
    double worst = 0.0;
    const auto xs = cfg.x_values();
    auto emit = [&](const std::string& w, int n, double x, const RecurrenceTable& rt, double g) {
        for (int k = 0; k < rt.K(); ++k)
            t.add({w, std::to_string(n), fmt(x), std::to_string(k), fmt(rt.alpha[k]), fmt(rt.beta[k]),
                   fmt(rt.log_gamma_sq(k)), fmt(g)});
    };
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
        const int n = cfg.n_list[i];
        const double x = xs[i];
        for (bool deformed : {false, true}) {
            const DiscretizedWeight dw = discretize(c.V, n, deformed ? &cfg.deformation : nullptr, x, deformed);
            const RecurrenceTable rt = stieltjes(dw, K);
            const double g = gram_residual(dw, rt);
            worst = std::max(worst, g);
            emit(deformed ? "deformed" : "undeformed", n, x, rt, g);
        }
    }
    // Hermite: e^{-z²} on [-8, 8]
    const DiscretizedWeight hw = discretize_rule(uniform_composite(-8.0, 8.0, 32, 24), [](double z) { return -z * z; });
    const RecurrenceTable ht = stieltjes(hw, 11);
    double hgap = 0.0;
    for (int k = 0; k < 10; ++k) hgap = std::max(hgap, std::abs(ht.alpha[k]));
    for (int k = 1; k <= 10; ++k) hgap = std::max(hgap, std::abs(ht.beta[k] - 0.5 * k));
    emit("hermite", 0, 0.0, ht, gram_residual(hw, ht));
    const DiscretizedWeight lw = discretize_rule(gauss_legendre(40, -1.0, 1.0), [](double) { return 0.0; });
    const RecurrenceTable lt = stieltjes(lw, 6);
    double lgap = 0.0;
    for (int k = 0; k < 5; ++k) lgap = std::max(lgap, std::abs(lt.alpha[k]));
    for (int k = 1; k <= 5; ++k) lgap = std::max(lgap, std::abs(lt.beta[k] - k * k / (4.0 * k * k - 1.0)));
    emit("legendre", 0, 0.0, lt, gram_residual(lw, lt));

    const std::string E = "orthonormality";
    f.rows.push_back(make_row(E, "Gram residual K=40", worst, 0.0, worst, cfg.tol("gram")));
    f.rows.push_back(make_row(E, "Hermite recurrence", hgap, 0.0, hgap, cfg.tol("gram")));
    f.rows.push_back(make_row(E, "Legendre recurrence", lgap, 0.0, lgap, cfg.tol("gram")));
    f.tables.push_back(std::move(t));
    return f;
}

Family fam_oracles(const Context& c) {
    const RunConfig& cfg = c.cfg;
    Family f;
    CsvTable t = table("oracles.csv");
    double worst = 0.0, worst_joint = kNaN, worst_cond = 0.0;
    for (int n : cfg.oracle_n_list)
        for (double x : cfg.oracle_x_list) {
            const FredholmResult ms = mult_stat(c.V, cfg.deformation, n, x);
            const AndreiefResult ao = andreief_oracle(c.V, cfg.deformation, n, x);
            const double g = std::abs(std::expm1(ms.log_value - ao.log_value));
            worst = std::max(worst, g);
            worst_cond = std::max(worst_cond, ao.condition);
            t.add({std::to_string(n), fmt(x), "andreief", fmt(ms.log_value), fmt(ao.log_value), fmt(ao.condition), fmt(g)});
        }
    for (double x : cfg.oracle_x_list) {
        const FredholmResult ms = mult_stat(c.V, cfg.deformation, 2, x);
        const double jd = joint_density_n2(c.V, cfg.deformation, x);
        const double g = std::abs(std::expm1(ms.log_value - std::log(jd)));
        worst_joint = std::isnan(worst_joint) ? g : std::max(worst_joint, g);
        t.add({"2", fmt(x), "joint_density", fmt(ms.log_value), fmt(std::log(jd)), fmt(kNaN), fmt(g)});
    }
    const std::string E = "determinant-oracle";
    f.rows.push_back(make_row(E, "mult_stat vs Andreief", worst, 0.0, worst, cfg.tol("oracle")));
    if (!cfg.oracle_x_list.empty())
        f.rows.push_back(make_row(E, "mult_stat vs joint density n=2", worst_joint, 0.0, worst_joint, cfg.tol("oracle")));
    f.tables.push_back(std::move(t));
    return f;
}

Family fam_multstats(const Context& c) {
    const RunConfig& cfg = c.cfg;
    const DeformationSpec& spec = cfg.deformation;
    Family f;
    CsvTable t = table("multstats.csv");
    CsvTable a = table("asymptotics.csv");
    CsvTable v = table("corollary_variants.csv");
    auto row = [&](int n, double x, double logv, double dl, double wm, double tm, double rd) {
        t.add({std::to_string(n), fmt(x), fmt(spec.alpha), fmt(spec.t), fmt(logv), fmt(dl), fmt(wm), fmt(tm), fmt(rd)});
    };

    // log-derivative identity on the configured (n, x) grid
    const double h = cfg.fd_step;
    double worst = 0.0;
    for (int n : cfg.identity_n_list)
        for (double x : cfg.identity_x_list) {
            const FredholmResult lo = mult_stat(c.V, spec, n, x - h);
            const FredholmResult hi = mult_stat(c.V, spec, n, x + h);
            const FredholmResult mid = mult_stat(c.V, spec, n, x);
            const double dk = dlogL_dx_kernel(c.V, spec, n, x);
            const double fd = (hi.log_value - lo.log_value) / (2.0 * h);
            worst = std::max(worst, std::abs(fd - dk) / std::abs(dk));
            row(n, x - h, lo.log_value, kNaN, kNaN, kNaN, lo.refinement_delta);
            row(n, x, mid.log_value, dk, kNaN, kNaN, mid.refinement_delta);
            row(n, x + h, hi.log_value, kNaN, kNaN, kNaN, hi.refinement_delta);
        }
    f.rows.push_back(make_row("log-derivative-identity", "|FD - kernel| / |kernel|", worst, 0.0, worst, cfg.tol("identity")));

    // main sweep x = x0 n^alpha, compared with the corollary tail formula
    const auto xs = cfg.x_values();
    std::vector<double> gaps, norm;
    const double tau = spec.t / c.conf.cV;
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
        const int n = cfg.n_list[i];
        const double x = xs[i];
        const FredholmResult ms = mult_stat(c.V, spec, n, x);
        const double dk = dlogL_dx_kernel(c.V, spec, n, x);
        double wm = kNaN, tm = kNaN;
        try {
            const LocalizationSplit ls =
                localization_tail(c.V, spec, n, x, cfg.localization.eps_lo, cfg.localization.eps_hi);
            wm = ls.window_mass;
            tm = ls.tail_mass;
        } catch (const DomainError&) {
        }
        row(n, x, ms.log_value, dk, wm, tm, ms.refinement_delta);
        const double p = corollary_predictor(x, spec.t);
        const double gap = std::abs(dk - p);
        const double scale = x * x * x * std::pow(static_cast<double>(n), -2.0 / 3.0);
        gaps.push_back(gap);
        norm.push_back(gap / scale);
        a.add({std::to_string(n), fmt(x), fmt(p), fmt(dk), fmt(gap), fmt(gap / scale)});
        v.add({std::to_string(n), fmt(x), fmt(dk), fmt(p), fmt(p / spec.t), fmt(cc_tail_dlogL_ds(x / tau, tau * tau * tau) / tau)});
    }
    const std::string E = "corollary-tail";
    const double spread = *std::max_element(norm.begin(), norm.end()) / *std::min_element(norm.begin(), norm.end());
    f.rows.push_back(make_row(E, "max/min of gap/(x^3 n^-2/3)", spread, 1.0, spread, cfg.tol("corollary_spread")));
    if (gaps.size() >= 2) {
        const double r = gaps.back() / gaps.front();
        f.rows.push_back(make_row(E, "raw gap last/first n", r, 1.0, r, 1.0));
    }
    f.tables.push_back(std::move(t));
    f.tables.push_back(std::move(a));
    f.tables.push_back(std::move(v));
    return f;
}

Family fam_localization(const Context& c) {
    const RunConfig& cfg = c.cfg;
    const LocalizationConfig& lc = cfg.localization;
    Family f;
    CsvTable t = table("localization.csv");
    const PolynomialPotential W(lc.potential);
    DeformationSpec spec = cfg.deformation;
    spec.form = QForm::linear;
    spec.t = lc.t;
    std::vector<double> ratio, tail;
    for (int n : lc.n_pair) {
        const double x = spec.x_of_n(n);
        const LocalizationSplit s = localization_tail(W, spec, n, x, lc.eps_lo, lc.eps_hi);
        const double r = std::abs(s.tail_mass / s.total);
        ratio.push_back(r);
        tail.push_back(std::abs(s.tail_mass));
        t.add({std::to_string(n), fmt(x), fmt(lc.eps_lo), fmt(lc.eps_hi), fmt(s.window.lo), fmt(s.window.hi),
               fmt(s.window_mass), fmt(s.tail_mass), fmt(r)});
    }
    const std::string E = "localization";
    const double d = ratio[1] / ratio[0];
    f.rows.push_back(make_row(E, "tail ratio n2 / tail ratio n1", d, 0.0, d, cfg.tol("localization_ratio")));
    f.rows.push_back(make_row(E, "absolute tail at n2", tail[1], 0.0, tail[1], cfg.tol("localization_tail")));
    f.tables.push_back(std::move(t));
    return f;
}

Family fam_kpz(const Context& c) {
    const RunConfig& cfg = c.cfg;
    const KpzConfig& kc = cfg.kpz;
    Family f;
    CsvTable t = table("kpz.csv");
    std::map<double, double> err_T1;
    for (double T : kc.T_list)
        for (double s : kc.s_list) {
            KpzDomain dom = default_kpz_domain(s);
            if (kc.L) dom.L = *kc.L;
            dom.R = kc.R;
            const KpzStatResult r = kpz_mult_stat(s, T, kc.m, dom);
            const double fd = kpz_dlogL_ds_fd(s, T, kc.m, dom);
            const double cc = cc_tail_dlogL_ds(s, T);
            t.add({fmt(s), fmt(T), std::to_string(kc.m), fmt(dom.L), fmt(dom.R), fmt(r.log_value), fmt(fd), fmt(cc),
                   fmt(std::abs(fd - cc))});
            if (T == 1.0) err_T1[s] = rel(fd, cc);
        }
    const std::string E = "kpz-tail";
    if (err_T1.count(8.0)) f.rows.push_back(make_row(E, "relative error s=8, T=1", err_T1[8.0], 0.0, err_T1[8.0], cfg.tol("kpz_s8")));
    if (err_T1.count(12.0))
        f.rows.push_back(make_row(E, "relative error s=12, T=1", err_T1[12.0], 0.0, err_T1[12.0], cfg.tol("kpz_s12")));
    if (err_T1.size() >= 2) {
        const double d = err_T1.rbegin()->second / err_T1.begin()->second;
        f.rows.push_back(make_row(E, "error(s_max) / error(s_min), T=1", d, 0.0, d, cfg.tol("kpz_decay")));
    }
    f.tables.push_back(std::move(t));
    return f;
}

Family fam_algebraic(const Context& c) {
    Family f;
    CsvTable t = table("identity.csv");
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> ux(0.0, 20.0), ut(0.25, 4.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double x = ux(rng), tt = ut(rng);
        const double p = corollary_predictor(x, tt);
        const double q = cc_tail_dlogL_ds(x / tt, tt * tt * tt);
        const double g = std::abs(p - q) / std::max(1.0, std::abs(q));
        worst = std::max(worst, g);
        t.add({fmt(x), fmt(tt), fmt(p), fmt(q), fmt(g)});
    }
    f.rows.push_back(make_row("algebraic-identity", "predictor vs KPZ tail, 20 pairs", worst, 0.0, worst, c.cfg.tol("algebraic")));
    f.tables.push_back(std::move(t));
    return f;
}

Family fam_norming(const Context& c) {
    const RunConfig& cfg = c.cfg;
    Family f;
    CsvTable t = table("norming.csv");
    std::vector<double> gaps;
    for (int n : cfg.norming_n_list) {
        const GammaCheck g = gamma_leading_check(c.meas, nullptr, n, 0.0);
        gaps.push_back(g.relative_gap);
        t.add({std::to_string(n), fmt(g.log_gamma_sq), fmt(g.rescaled), fmt(g.constant), fmt(g.relative_gap)});
    }
    const std::string E = "norming-constant";
    f.rows.push_back(make_row(E, "relative gap at largest n", gaps.back(), 0.0, gaps.back(), cfg.tol("norming")));
    if (gaps.size() >= 2) {
        const double d = gaps.back() / gaps.front();
        // strict decrease required
        ReportRow r = make_row(E, "gap largest n / gap smallest n", d, 1.0, d, 1.0);
        r.pass = d < 1.0;
        f.rows.push_back(r);
    }
    f.tables.push_back(std::move(t));
    return f;
}

Family fam_laplace(const Context& c) {
    const RunConfig& cfg = c.cfg;
    const DeformationSpec& spec = cfg.deformation;
    Family f;
    CsvTable t = table("laplace.csv");
    std::vector<double> gaps, g0dev, ratios;
    for (int n : cfg.laplace_n_list) {
        const double x = spec.x_of_n(n);
        const AsymptoticPrediction p = laplace_F(1.0, 0.0, spec.x0, spec.alpha, n);
        const double d = laplace_direct(spec.x0, spec.alpha, n, 1.0);
        const double gd = g0_direct(c.meas, spec, n, x);
        const double ge = g0_estimate(spec.t, c.meas.endpoint_a, spec.x0, spec.alpha, n);
        gaps.push_back(rel(p.value, d));
        ratios.push_back(gd / ge);
        g0dev.push_back(std::abs(gd / ge - 1.0));
        t.add({std::to_string(n), fmt(x), fmt(p.value), fmt(d), fmt(gaps.back()), fmt(gd), fmt(ge), fmt(gd / ge)});
    }
    const std::string E = "laplace-lemma";
    f.rows.push_back(make_row(E, "laplace_F vs direct at smallest n", gaps.front(), 0.0, gaps.front(), cfg.tol("laplace")));
    if (gaps.size() >= 2) {
        const double w = worst_step(gaps);
        f.rows.push_back(make_row(E, "laplace gap shrinks as n doubles", w, 1.0, w, 1.0));
        const double wg = worst_step(g0dev);
        f.rows.push_back(make_row(E, "g0 ratio trends to 1", wg, 1.0, wg, 1.0));
    }
    f.rows.push_back(make_row(E, "g0_direct/g0_estimate at largest n", ratios.back(), 1.0, g0dev.back(), cfg.tol("g0_band")));
    f.tables.push_back(std::move(t));
    return f;
}

Family fam_airy(const Context& c) {
    const RunConfig& cfg = c.cfg;
    Family f;
    CsvTable t = table("airy.csv");
    const double ai0 = 1.0 / (std::pow(3.0, 2.0 / 3.0) * std::tgamma(2.0 / 3.0));
    const double aip0 = -1.0 / (std::cbrt(3.0) * std::tgamma(1.0 / 3.0));
    const AiryEval z = airy_ai(0.0);
    t.add({"Ai", "0", fmt(z.value), fmt(ai0), fmt(std::abs(z.value - ai0))});
    t.add({"Ai'", "0", fmt(z.derivative), fmt(aip0), fmt(std::abs(z.derivative - aip0))});
    double wr = 0.0;
    for (double x : {-5.0, 1.0, 5.0}) {
        const AiryEval a = airy_ai(x), b = detail::airy_bi(x);
        const double w = a.value * b.derivative - a.derivative * b.value;
        wr = std::max(wr, std::abs(w - 1.0 / kPi));
        t.add({"wronskian", fmt(x), fmt(w), fmt(1.0 / kPi), fmt(std::abs(w - 1.0 / kPi))});
    }
    const std::string E = "airy";
    f.rows.push_back(make_row(E, "Ai(0)", z.value, ai0, std::abs(z.value - ai0), cfg.tol("airy")));
    f.rows.push_back(make_row(E, "Ai'(0)", z.derivative, aip0, std::abs(z.derivative - aip0), cfg.tol("airy")));
    f.rows.push_back(make_row(E, "Wronskian at -5, 1, 5", wr, 0.0, wr, cfg.tol("wronskian")));
    f.tables.push_back(std::move(t));
    return f;
}

std::size_t order_of(const std::string& id) {
    const auto& v = list_experiments();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i].id == id) return i;
    return v.size();
}

}  // namespace

RunResult run(const RunConfig& cfg, std::ostream& log) {
    RunResult res;
    std::string dir = cfg.output_dir;
    if (const char* env = std::getenv("MULTSTAT_OUTPUT_DIR"); env && *env) dir = env;

    std::optional<Context> ctx;
    try {
        check_config(cfg);
        PolynomialPotential V(cfg.potential);
        EquilibriumMeasure meas = solve_one_cut(V);
        ConformalData conf = varphi_and_series(meas, 10);
        const ValidationReport vr = validate(cfg.deformation, meas, conf);
        if (!vr.ok()) {
            res.status = kConfigError;
            res.failed_experiment = "deformation";
            res.message = "deformation validation failed: " + vr.summary();
            log << res.message << "\n";
            return res;
        }
        ctx.emplace(Context{cfg, std::move(V), std::move(meas), std::move(conf)});
    } catch (const ConfigError& e) {
        res.status = kConfigError;
        res.message = e.what();
        log << "config error: " << e.what() << "\n";
        return res;
    } catch (const std::exception& e) {
        res.status = kNumericalError;
        res.failed_experiment = "equilibrium-exactness";
        res.message = e.what();
        log << "numerical failure in equilibrium-exactness: " << e.what() << "\n";
        return res;
    }
    std::filesystem::create_directories(dir);

    using Fn = Family (*)(const Context&);
    const std::vector<std::pair<std::string, Fn>> fams{
        {"equilibrium-exactness", fam_equilibrium}, {"orthonormality", fam_recurrence},
        {"determinant-oracle", fam_oracles},        {"log-derivative-identity", fam_multstats},
        {"localization", fam_localization},         {"kpz-tail", fam_kpz},
        {"algebraic-identity", fam_algebraic},      {"norming-constant", fam_norming},
        {"laplace-lemma", fam_laplace},             {"airy", fam_airy},
    };
    std::vector<std::future<Family>> futs;
    for (const auto& [id, fn] : fams) {
        futs.push_back(std::async(std::launch::async, [&ctx, &dir, fn = fn] {
            Family f = fn(*ctx);
            for (const auto& t : f.tables) t.write(dir);
            return f;
        }));
    }
    for (std::size_t i = 0; i < fams.size(); ++i) {
        try {
            Family f = futs[i].get();
            res.rows.insert(res.rows.end(), f.rows.begin(), f.rows.end());
        } catch (const std::exception& e) {
            if (res.failed_experiment.empty()) {
                res.failed_experiment = fams[i].first;
                res.message = e.what();
            }
            log << "numerical failure in " << fams[i].first << ": " << e.what() << "\n";
        }
    }
    std::stable_sort(res.rows.begin(), res.rows.end(),
                     [](const ReportRow& a, const ReportRow& b) { return order_of(a.experiment) < order_of(b.experiment); });

    CsvTable s = table("summary.csv");
    for (const auto& r : res.rows) {
        s.add({r.experiment, r.criterion, fmt(r.measured), fmt(r.reference), fmt(r.gap), fmt(r.tolerance),
               r.pass ? "true" : "false"});
        char buf[64];
        std::snprintf(buf, sizeof buf, " = %.6g (tol %.3g)\n", r.gap, r.tolerance);
        log << (r.pass ? "PASS " : "FAIL ") << r.experiment << ": " << r.criterion << buf;
    }
    s.write(dir);

    if (!res.failed_experiment.empty()) res.status = kNumericalError;
    else if (std::any_of(res.rows.begin(), res.rows.end(), [](const ReportRow& r) { return !r.pass; }))
        res.status = kSomeFail;
    return res;
}

void dump_recurrence(const RunConfig& cfg, std::ostream& out) {
    check_config(cfg);
    const PolynomialPotential V(cfg.potential);
    const auto xs = cfg.x_values();
    out << "weight,n,x,k,alpha,beta,log_gamma_sq\n";
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
        const int n = cfg.n_list[i];
        for (bool deformed : {false, true}) {
            const DiscretizedWeight dw = discretize(V, n, &cfg.deformation, xs[i], deformed);
            const RecurrenceTable rt = stieltjes(dw, n);
            for (int k = 0; k < rt.K(); ++k)
                out << (deformed ? "deformed" : "undeformed") << ',' << n << ',' << fmt(xs[i]) << ',' << k << ','
                    << fmt(rt.alpha[k]) << ',' << fmt(rt.beta[k]) << ',' << fmt(rt.log_gamma_sq(k)) << '\n';
        }
    }
}

}  // namespace multstat
