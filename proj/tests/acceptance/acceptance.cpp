// Acceptance run: one PASS/FAIL line per criterion. Tolerances and runtime
// budgets are pinned here and do not read any configuration file.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "multstat/airy.hpp"
#include "multstat/asymptotics.hpp"
#include "multstat/equilibrium.hpp"
#include "multstat/kpz.hpp"
#include "multstat/multstats.hpp"
#include "multstat/orthopoly.hpp"
#include "multstat/quadrature.hpp"
#include "multstat/simd.hpp"
#include "oracles.hpp"

using namespace multstat;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> notes;

    void require(bool ok, const char* what, double value, double limit) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s%s=%.3g (limit %.3g)", detail.empty() ? "" : ", ", what, value, limit);
        detail += buf;
        pass = pass && ok;
    }
    void le(const char* what, double value, double limit) { require(std::isfinite(value) && value <= limit, what, value, limit); }
    void lt(const char* what, double value, double limit) { require(std::isfinite(value) && value < limit, what, value, limit); }
    void note(const std::string& s) { notes.push_back(s); }
};

struct Criterion {
    const char* id;
    double budget_s;
    std::function<Outcome()> body;
};

std::string format(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const PolynomialPotential& semicircle() {
    static const PolynomialPotential V({2.0, 4.0, 2.0});
    return V;
}

DeformationSpec linear_q(double t = 1.0) {
    DeformationSpec s;
    s.form = QForm::linear;
    s.t = t;
    s.x0 = 1.0;
    s.alpha = 0.15;
    return s;
}

Outcome equilibrium_exactness() {
    Outcome o;
    const EquilibriumMeasure m = solve_one_cut(semicircle());
    const double a = m.endpoint_a;
    double h = 0.0;
    for (int k = 0; k <= m.hV.degree(); ++k) h = std::max(h, std::abs(m.hV.coeff(k) - (k == 0 ? 4.0 : 0.0)));
    double el = 0.0;
    for (int i = 1; i < 1000; ++i) el = std::max(el, std::abs(el_residual(m, -a + a * i / 1000.0)));
    o.le("|a-2|", std::abs(a - 2.0), 1e-8);
    o.le("|h_V-4|", h, 1e-8);
    o.le("|mass-1|", std::abs(total_mass(m) - 1.0), 1e-10);
    o.le("EL residual", el, 1e-6);
    return o;
}

Outcome conformal_constant() {
    Outcome o;
    const EquilibriumMeasure m = solve_one_cut(semicircle());
    const ConformalData c = varphi_and_series(m, 6);
    const double exact = std::pow(2.0 * std::sqrt(2.0), 2.0 / 3.0);
    const auto& a = c.a_coeffs;
    const auto& A = c.A_coeffs;
    const double id = std::max({std::abs(A[0] - 1.0 / a[0]), std::abs(A[1] + a[1] / std::pow(a[0], 3)),
                                std::abs(A[2] - (2.0 * a[1] * a[1] - a[0] * a[2]) / std::pow(a[0], 5))});
    o.le("|c_V-2|", std::abs(c.cV - 2.0), 1e-8);
    o.le("|c_V-(2sqrt2)^(2/3)|", std::abs(c.cV - exact), 1e-8);
    o.le("A1..A3 identities", id, 1e-10);
    return o;
}

Outcome orthonormality() {
    Outcome o;
    constexpr int K = 40;
    const DeformationSpec q = linear_q();
    double worst = 0.0;
    for (int n : {10, 20, 30})
        for (double x : {q.x_of_n(n), 6.0})
            for (bool deformed : {false, true}) {
                const DiscretizedWeight dw = discretize(semicircle(), n, deformed ? &q : nullptr, x, deformed);
                worst = std::max(worst, gram_residual(dw, stieltjes(dw, K)));
            }
    const DiscretizedWeight hw = discretize_rule(uniform_composite(-8.0, 8.0, 32, 24), [](double z) { return -z * z; });
    const RecurrenceTable ht = stieltjes(hw, 13);
    double hg = 0.0;
    for (int k = 0; k < 12; ++k) hg = std::max(hg, std::abs(ht.alpha[k]));
    for (int k = 1; k <= 12; ++k) hg = std::max(hg, std::abs(ht.beta[k] - oracle::hermite_beta(k)));
    const DiscretizedWeight lw = discretize_rule(gauss_legendre(40, -1.0, 1.0), [](double) { return 0.0; });
    const RecurrenceTable lt = stieltjes(lw, 9);
    double lg = 0.0;
    for (int k = 0; k < 8; ++k) lg = std::max(lg, std::abs(lt.alpha[k]));
    for (int k = 1; k <= 8; ++k) lg = std::max(lg, std::abs(lt.beta[k] - oracle::legendre_beta(k)));
    o.le("Gram K=40", worst, 1e-8);
    o.le("Hermite", hg, 1e-8);
    o.le("Legendre", lg, 1e-8);
    return o;
}

Outcome determinant_oracle() {
    Outcome o;
    const DeformationSpec q = linear_q();
    double worst = 0.0, joint = 0.0;
    for (int n : {2, 3, 4, 5})
        for (double x : {-2.0, 0.0, 1.0, 2.0}) {
            const double l = mult_stat(semicircle(), q, n, x).log_value;
            worst = std::max(worst, std::abs(std::expm1(l - andreief_oracle(semicircle(), q, n, x).log_value)));
        }
    for (double x : {-2.0, 0.0, 1.0, 2.0}) {
        const double l = mult_stat(semicircle(), q, 2, x).log_value;
        joint = std::max(joint, std::abs(std::expm1(l - std::log(joint_density_n2(semicircle(), q, x)))));
    }
    o.le("vs Andreief", worst, 1e-7);
    o.le("vs joint density n=2", joint, 1e-7);
    return o;
}

Outcome log_derivative_identity() {
    Outcome o;
    const DeformationSpec q = linear_q();
    const double h = 1e-4;
    double worst = 0.0;
    for (int n : {8, 12, 16})
        for (double x : {0.5, 1.0, 2.0}) {
            const double fd = (mult_stat(semicircle(), q, n, x + h).log_value -
                               mult_stat(semicircle(), q, n, x - h).log_value) / (2.0 * h);
            const double k = dlogL_dx_kernel(semicircle(), q, n, x);
            worst = std::max(worst, rel(fd, k));
        }
    o.le("max rel gap", worst, 1e-5);
    return o;
}

Outcome localization() {
    Outcome o;
    // (z+2)²/2 on [-4, 0], t = 2
    const PolynomialPotential W({2.0, 2.0, 0.5});
    const DeformationSpec q = linear_q(2.0);
    std::vector<double> ratio, tail;
    for (int n : {15, 30}) {
        const LocalizationSplit s = localization_tail(W, q, n, q.x_of_n(n), 10.0, 4.0);
        ratio.push_back(std::abs(s.tail_mass / s.total));
        tail.push_back(std::abs(s.tail_mass));
    }
    o.le("ratio(30)/ratio(15)", ratio[1] / ratio[0], 0.2);
    o.le("|tail| at n=30", tail[1], 1e-8);

    const DeformationSpec q1 = linear_q();
    std::vector<double> r1;
    for (int n : {15, 30}) {
        const LocalizationSplit s = localization_tail(semicircle(), q1, n, q1.x_of_n(n), 10.0, 4.0);
        r1.push_back(std::abs(s.tail_mass / s.total));
    }
    o.note(format("2(z+1)^2 with t=1: ratio(15)=%.3g ratio(30)=%.3g quotient=%.3g", r1[0], r1[1], r1[1] / r1[0]));
    return o;
}

Outcome corollary_tail() {
    Outcome o;
    const DeformationSpec q = linear_q();
    std::vector<double> gaps, norm;
    for (int n : {10, 16, 24, 32}) {
        const double x = q.x_of_n(n);
        const double measured = dlogL_dx_kernel(semicircle(), q, n, x);
        const double p = corollary_predictor(x, 1.0);
        const double tau = 0.5;  // t / c_V
        const double scaled = cc_tail_dlogL_ds(x / tau, tau * tau * tau) / tau;
        gaps.push_back(std::abs(measured - p));
        norm.push_back(gaps.back() / (x * x * x * std::pow(n, -2.0 / 3.0)));
        o.note(format("n=%.0f x=%.4f measured=%.5g predictor=%.5g", n, x, measured, p) +
               format(" raw gap=%.4g  c_V-scaled predictor=%.5g", gaps.back(), scaled));
    }
    const auto [lo, hi] = std::minmax_element(norm.begin(), norm.end());
    o.le("normalized gap max/min", *hi / *lo, 10.0);
    o.lt("raw gap(32)/gap(10)", gaps.back() / gaps.front(), 1.0);
    return o;
}

Outcome kpz_tail() {
    Outcome o;
    constexpr int m = 160;
    std::vector<double> err;
    for (double s : {4.0, 8.0, 12.0}) {
        const KpzDomain dom = default_kpz_domain(s);
        err.push_back(rel(kpz_dlogL_ds_fd(s, 1.0, m, dom), cc_tail_dlogL_ds(s, 1.0)));
    }
    o.le("rel err s=8", err[1], 0.10);
    o.le("rel err s=12", err[2], 0.05);
    o.le("err(12)/err(4)", err[2] / err[0], 0.6);
    return o;
}

Outcome algebraic_identity() {
    Outcome o;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(0.0, 25.0), ut(0.2, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double x = ux(rng), t = ut(rng);
        const double q = cc_tail_dlogL_ds(x / t, t * t * t);
        worst = std::max(worst, std::abs(corollary_predictor(x, t) - q) / std::max(1.0, std::abs(q)));
    }
    o.le("max gap", worst, 1e-12);
    return o;
}

Outcome norming_constant() {
    Outcome o;
    const EquilibriumMeasure m = solve_one_cut(semicircle());
    const GammaCheck g10 = gamma_leading_check(m, nullptr, 10, 0.0);
    const GammaCheck g30 = gamma_leading_check(m, nullptr, 30, 0.0);
    o.le("|a/8pi - 1/4pi|", std::abs(g30.constant - oracle::quarter_over_pi), 1e-12);
    o.le("rel gap n=30", rel(g30.rescaled, oracle::quarter_over_pi), 0.10);
    o.lt("gap(30)/gap(10)", rel(g30.rescaled, oracle::quarter_over_pi) / rel(g10.rescaled, oracle::quarter_over_pi), 1.0);
    return o;
}

Outcome laplace_lemma() {
    Outcome o;
    const EquilibriumMeasure m = solve_one_cut(semicircle());
    const DeformationSpec q = linear_q();
    std::vector<double> gap, dev;
    double ratio = 0.0;
    for (int n : {200, 400, 800}) {
        gap.push_back(rel(laplace_F(1.0, 0.0, 1.0, 0.15, n).value, laplace_direct(1.0, 0.15, n)));
        ratio = g0_direct(m, q, n, q.x_of_n(n)) / g0_estimate(1.0, m.endpoint_a, 1.0, 0.15, n);
        dev.push_back(std::abs(ratio - 1.0));
        o.note(format("n=%.0f laplace gap=%.4g g0 ratio=%.4f", n, gap.back(), ratio));
    }
    o.le("laplace gap n=200", gap[0], 0.05);
    o.lt("gap(400)/gap(200)", gap[1] / gap[0], 1.0);
    o.lt("gap(800)/gap(400)", gap[2] / gap[1], 1.0);
    o.le("|g0 ratio-1| n=800", dev[2], 0.2);
    o.lt("g0 deviation 400/200", dev[1] / dev[0], 1.0);
    o.lt("g0 deviation 800/400", dev[2] / dev[1], 1.0);
    return o;
}

Outcome airy() {
    Outcome o;
    const AiryEval z = airy_ai(0.0);
    const auto s = oracle::airy_series(0.0L);
    o.le("|Ai(0)-series|", std::abs(z.value - static_cast<double>(s.ai)), 1e-12);
    o.le("|Ai'(0)-series|", std::abs(z.derivative - static_cast<double>(s.aip)), 1e-12);
    o.le("|Ai(0)-frozen|", std::abs(z.value - oracle::ai0), 1e-12);
    double wr = 0.0;
    for (double x : {-5.0, 1.0, 5.0}) {
        const AiryEval a = airy_ai(x), b = detail::airy_bi(x);
        wr = std::max(wr, std::abs(a.value * b.derivative - a.derivative * b.value - 1.0 / oracle::pi));
    }
    o.le("Wronskian", wr, 1e-11);
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"equilibrium-exactness", 1.0, equilibrium_exactness},
        {"conformal-constant", 1.0, conformal_constant},
        {"orthonormality", 10.0, orthonormality},
        {"determinant-oracle", 30.0, determinant_oracle},
        {"log-derivative-identity", 60.0, log_derivative_identity},
        {"localization", 60.0, localization},
        {"corollary-tail", 300.0, corollary_tail},
        {"kpz-tail", 120.0, kpz_tail},
        {"algebraic-identity", 1.0, algebraic_identity},
        {"norming-constant", 30.0, norming_constant},
        {"laplace-lemma", 60.0, laplace_lemma},
        {"airy", 1.0, airy},
    };
    std::printf("kernel ISA: %s\n", std::string(simd::isa_name(simd::active_isa())).c_str());
    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = dt < c.budget_s;
        const bool ok = o.pass && in_time;
        failed += !ok;
        std::printf("%s %-24s %s; runtime %.3f s (budget %.0f s%s)\n", ok ? "PASS" : "FAIL", c.id, o.detail.c_str(), dt,
                    c.budget_s, in_time ? "" : ", exceeded");
        for (const auto& n : o.notes) std::printf("     %s\n", n.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
