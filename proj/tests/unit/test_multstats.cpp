#include <doctest.h>

#include <cmath>

#include "multstat/errors.hpp"
#include "multstat/multstats.hpp"
#include "oracles.hpp"

using namespace multstat;

namespace {

const PolynomialPotential& V2() {
    static const PolynomialPotential v({2, 4, 2});
    return v;
}

DeformationSpec linear_q(double t = 1.0) {
    DeformationSpec s;
    s.t = t;
    return s;
}

}  // namespace

TEST_CASE("mult_stat limits and bounds") {
    const DeformationSpec q = linear_q();
    const FredholmResult r = mult_stat(V2(), q, 6, -1e3);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.refinement_delta <= 1e-8);
    CHECK(r.grid_meta.nodes > 0);

    double prev = 1.0;
    for (double x = -4.0; x <= 4.0; x += 1.0) {
        const FredholmResult f = mult_stat(V2(), q, 5, x);
        CHECK(f.value > 0.0);
        CHECK(f.value <= 1.0);
        CHECK(f.value < prev);
        prev = f.value;
    }
    CHECK(mult_stat(V2(), q, 4, 1.0).value < mult_stat(V2(), q, 4, 0.0).value);

    const FredholmResult deep = mult_stat(V2(), q, 10, 400.0);
    CHECK(deep.value == 0.0);
    CHECK(std::isfinite(deep.log_value));
    CHECK(deep.log_value < -600.0);
    CHECK(deep.route == "G_sigma");
}

TEST_CASE("mult_stat vs joint density and Andreief") {
    const DeformationSpec q = linear_q();
    const double jd = joint_density_n2(V2(), q, 0.0);
    CHECK(mult_stat(V2(), q, 2, 0.0).value == doctest::Approx(jd).epsilon(1e-7));
    CHECK(mult_stat(V2(), q, 3, 0.0).value == doctest::Approx(andreief_oracle(V2(), q, 3, 0.0).value).epsilon(1e-7));

    CHECK(andreief_oracle(V2(), q, 4, -1e3).value == doctest::Approx(1.0).epsilon(1e-13));
    // n = 1: plain ratio of integrals
    const PolynomialPotential W({0, 0, 0.5});
    auto num = [&](double z) { return std::exp(-W(z)) / (1.0 + std::exp(0.5 + z)); };
    auto den = [&](double z) { return std::exp(-W(z)); };
    const double ratio = oracle::simpson(num, -40, 40, 1e-14) / oracle::simpson(den, -40, 40, 1e-14);
    CHECK(andreief_oracle(W, q, 1, 0.5).value == doctest::Approx(ratio).epsilon(1e-10));
    const AndreiefResult a5 = andreief_oracle(V2(), q, 5, 1.0);
    CHECK(a5.condition >= 1.0);
    CHECK_THROWS_AS(andreief_oracle(V2(), q, 7, 0.0), DomainError);
}

TEST_CASE("coarse grid triggers a convergence error") {
    StatOptions opt;
    opt.grid.panels = 8;
    opt.grid.nodes_per_panel = 8;
    opt.grid.layer_levels = 0;
    CHECK_THROWS_AS(mult_stat(V2(), linear_q(), 12, 1.0, opt), ConvergenceError);
}

TEST_CASE("log-derivative identity") {
    const DeformationSpec q = linear_q();
    const double h = 1e-4;
    const double fd = (mult_stat(V2(), q, 10, 1.0 + h).log_value - mult_stat(V2(), q, 10, 1.0 - h).log_value) / (2 * h);
    const double k = dlogL_dx_kernel(V2(), q, 10, 1.0);
    CHECK(fd == doctest::Approx(k).epsilon(1e-5));
    CHECK(std::abs(dlogL_dx_kernel(V2(), q, 10, -60.0)) < 1e-15);
    for (double x = -3.0; x <= 5.0; x += 1.0) CHECK(dlogL_dx_kernel(V2(), q, 8, x) <= 0.0);
}

TEST_CASE("localization split") {
    const DeformationSpec q = linear_q();
    const double x = q.x_of_n(20);
    const LocalizationSplit s = localization_tail(V2(), q, 20, x, 3.0, 2.0);
    CHECK(s.total == doctest::Approx(s.window_mass + s.tail_mass).epsilon(1e-12));
    CHECK(-s.total == doctest::Approx(dlogL_dx_kernel(V2(), q, 20, x)).epsilon(1e-10));
    const LocalizationSplit w = localization_tail(V2(), q, 20, x, 6.0, 2.0);
    CHECK(w.tail_mass <= s.tail_mass);
    CHECK(w.window.lo < s.window.lo);
    CHECK_THROWS_AS(localization_tail(V2(), q, 20, x, 1e6, 2.0), DomainError);
}

TEST_CASE("norming constant leading order") {
    const EquilibriumMeasure m = solve_one_cut(V2());
    double prev = INFINITY;
    for (int n : {10, 20, 30}) {
        const GammaCheck g = gamma_leading_check(m, nullptr, n, 0.0);
        CHECK(g.constant == doctest::Approx(oracle::quarter_over_pi).epsilon(1e-15));
        CHECK(std::isfinite(g.log_gamma_sq));
        CHECK(g.relative_gap < prev);
        prev = g.relative_gap;
    }
    const DeformationSpec q = linear_q();
    const GammaCheck d = gamma_leading_check(m, &q, 12, -1e3);
    CHECK(d.rescaled == doctest::Approx(gamma_leading_check(m, nullptr, 12, 0.0).rescaled).epsilon(1e-10));
}
