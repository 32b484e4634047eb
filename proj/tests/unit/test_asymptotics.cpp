#include <doctest.h>

#include <cmath>
#include <random>

#include "multstat/asymptotics.hpp"
#include "multstat/errors.hpp"
#include "multstat/kpz.hpp"
#include "oracles.hpp"

using namespace multstat;

namespace {

// F1 by adaptive Simpson; the (1 - z/x)^{-1/2} part through z = x - v².
double f1_oracle(double x) {
    auto reg = [x](double z) { return std::log1p(std::exp(-z)) / std::sqrt(1.0 + z / x); };
    auto sing = [x](double v) { return 2.0 * std::sqrt(x) * std::log1p(std::exp(-(x - v * v))); };
    return oracle::simpson(reg, 0.0, x, 1e-13) + oracle::simpson(sing, 0.0, std::sqrt(x), 1e-13);
}

DeformationSpec linear_q() {
    DeformationSpec s;
    s.t = 1.0;
    return s;
}

}  // namespace

TEST_CASE("corollary predictor") {
    CHECK(corollary_predictor(0.0, 1.0) == 0.0);
    CHECK(corollary_predictor(3.0 / (oracle::pi * oracle::pi), 1.0) ==
          doctest::Approx(-oracle::five_thirds_pi4).epsilon(1e-13));
    for (double t : {0.5, 1.0, 3.0}) {
        double prev = corollary_predictor(0.0, t);
        for (double x = 0.1; x < 20.0; x += 0.1) {
            const double v = corollary_predictor(x, t);
            CHECK(v < prev);
            prev = v;
        }
    }
    CHECK_THROWS_AS(corollary_predictor(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(corollary_predictor(-1.0, 1.0), DomainError);
}

TEST_CASE("predictor equals the KPZ tail under s = x/t, T = t^3") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ux(0.0, 30.0), ut(0.2, 5.0);
    for (int i = 0; i < 20; ++i) {
        const double x = ux(rng), t = ut(rng);
        const double p = corollary_predictor(x, t), q = cc_tail_dlogL_ds(x / t, t * t * t);
        CHECK(std::abs(p - q) <= 1e-12 * std::max(1.0, std::abs(q)));
    }
}

TEST_CASE("laplace expansion structure") {
    const AsymptoticPrediction p = laplace_F(1.0, 0.0, 1.0, 0.15, 200);
    REQUIRE(p.order_terms.size() == 3);
    CHECK(p.order_terms[2].second == 0.0);
    for (std::size_t i = 1; i < p.order_terms.size(); ++i) CHECK(p.order_terms[i].first < p.order_terms[i - 1].first);
    CHECK(laplace_F(2.0, 0.6, 1.0, 0.15, 200).value == doctest::Approx(2.0 * laplace_F(1.0, 0.3, 1.0, 0.15, 200).value));
    CHECK(p.error_order == "O(n^{-1/3})");
    CHECK_THROWS_AS(laplace_F(1.0, 0.0, 1.0, 0.15, 1), DomainError);
}

TEST_CASE("laplace expansion against direct quadrature") {
    double prev_gap = INFINITY, lo = INFINITY, hi = 0.0;
    for (int n : {100, 200, 400, 800}) {
        const double d = laplace_direct(1.0, 0.15, n);
        const double p = laplace_F(1.0, 0.0, 1.0, 0.15, n).value;
        const double gap = std::abs(p - d) / d;
        if (n == 200) CHECK(gap <= 0.05);
        CHECK(gap < prev_gap);
        prev_gap = gap;
        const double scaled = std::abs(d - p) / std::pow(n, -1.0 / 3.0);
        lo = std::min(lo, scaled);
        hi = std::max(hi, scaled);
    }
    CHECK(hi / lo < 10.0);
    // direct quadrature vs an independent integrator
    const double k = std::pow(200.0, 2.0 / 3.0), x = std::pow(200.0, 0.15);
    const double ref = oracle::simpson([&](double u) { return 2.0 * std::log1p(std::exp(x - k * u * u)); }, 0.0, 1.0, 1e-14);
    CHECK(laplace_direct(1.0, 0.15, 200) == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("F1 auxiliary integral") {
    for (double x : {0.3, 1.0, 2.5, 7.0}) CHECK(f1_zero(x) == doctest::Approx(f1_oracle(x)).epsilon(1e-10));
    double prev = 0.0;
    for (double x = 0.1; x <= 3.0; x += 0.1) {
        const double v = f1_zero(x);
        CHECK(v > prev);
        prev = v;
    }
    prev = f1_zero(4.0);
    for (double x = 5.0; x <= 100.0; x += 5.0) {
        const double v = f1_zero(x);
        CHECK(v < prev);
        prev = v;
    }
    // approach to π²/6 like c/x²
    const double c20 = (f1_zero(20.0) - oracle::pi_sq_over_6) * 400.0;
    const double c100 = (f1_zero(100.0) - oracle::pi_sq_over_6) * 1e4;
    CHECK(c100 == doctest::Approx(c20).epsilon(0.05));
    CHECK(std::abs(f1_zero(2000.0) - oracle::f1_limit()) < 1e-6);
    CHECK_THROWS_AS(f1_zero(0.0), DomainError);
}

TEST_CASE("g0 estimate and direct form") {
    for (int n : {10, 100, 1000})
        CHECK(g0_estimate(1.0, 2.0, 1.0, 0.15, n) ==
              doctest::Approx(2.0 / (3.0 * oracle::pi * std::sqrt(2.0)) * std::pow(n, -1.0 / 3.0 + 0.225)).epsilon(1e-14));
    const EquilibriumMeasure m = solve_one_cut(PolynomialPotential({2, 4, 2}));
    const DeformationSpec q = linear_q();
    CHECK(std::abs(g0_direct(m, q, 100, -1e3)) < 1e-300);
    // against Simpson in θ
    const int n = 100;
    const double x = q.x_of_n(n);
    auto f = [&](double th) { return log_sigma_n(q, -1.0 + std::cos(th), n, x); };
    const double ref = -oracle::simpson(f, 0.0, oracle::pi, 1e-14) / (2.0 * oracle::pi);
    CHECK(g0_direct(m, q, n, x) == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("g-function jump") {
    const EquilibriumMeasure m = solve_one_cut(PolynomialPotential({2, 4, 2}));
    const DeformationSpec q = linear_q();
    const double a = m.endpoint_a;
    CHECK(g_jump_check(m, q, 50, 2.0, -a / 2) <= 1e-6);
    for (double z : {-0.9 * a, -0.3 * a, -0.05 * a}) CHECK(g_jump_check(m, q, 50, 2.0, z) <= 1e-6);
    CHECK(g_jump_check(m, q, 50, -1e3, -a / 2) == 0.0);
    CHECK(std::abs(g_eval(m, q, 50, -1e3, {0.5, 0.0})) == 0.0);

    GFunctionOptions fine;
    fine.panels = 64;
    const std::complex<double> z{-a / 2, 1e-9 * a};
    CHECK(std::abs(g_eval(m, q, 50, 2.0, z) - g_eval(m, q, 50, 2.0, z, fine)) <= 1e-8);
    CHECK_THROWS_AS(g_jump_check(m, q, 50, 2.0, -1e-4 * a), DomainError);
    CHECK_THROWS_AS(g_jump_check(m, q, 50, 2.0, 0.5), DomainError);
    CHECK_THROWS_AS(g_eval(m, q, 50, 2.0, {-1.0, 0.0}), DomainError);
}
