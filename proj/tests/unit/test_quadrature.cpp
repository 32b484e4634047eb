#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "multstat/errors.hpp"
#include "multstat/quadrature.hpp"
#include "oracles.hpp"

using namespace multstat;

TEST_CASE("gauss_legendre small rules") {
    const QuadratureRule r1 = gauss_legendre(1, -1, 1);
    REQUIRE(r1.size() == 1);
    CHECK(r1.nodes[0] == doctest::Approx(0.0));
    CHECK(r1.weights[0] == doctest::Approx(2.0));

    const QuadratureRule r2 = gauss_legendre(2, -1, 1);
    CHECK(r2.nodes[0] == doctest::Approx(-oracle::gl2_node).epsilon(1e-15));
    CHECK(r2.nodes[1] == doctest::Approx(oracle::gl2_node).epsilon(1e-15));
    CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r2.integrate([](double x) { return x * x; }) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("gauss_legendre errors") {
    CHECK_THROWS_AS(gauss_legendre(0, -1, 1), DomainError);
    CHECK_THROWS_AS(gauss_legendre(4, -1, std::numeric_limits<double>::infinity()), DomainError);
    CHECK_THROWS_AS(gauss_legendre(4, 1, 1), DomainError);
    CHECK_THROWS_AS(gauss_chebyshev(0), DomainError);
}

TEST_CASE("rule invariants") {
    for (int m : {1, 2, 5, 24, 100, 301}) {
        CAPTURE(m);
        const QuadratureRule q = gauss_legendre(m, -0.5, 3.0);
        double s = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            CHECK(q.weights[i] > 0.0);
            CHECK(q.domain.contains(q.nodes[i]));
            if (i) CHECK(q.nodes[i] > q.nodes[i - 1]);
            s += q.weights[i];
        }
        CHECK(s == doctest::Approx(3.5).epsilon(1e-13));
        const QuadratureRule c = gauss_chebyshev(m);
        double sc = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) CHECK(c.nodes[i] > c.nodes[i - 1]);
            sc += c.weights[i];
        }
        CHECK(sc == doctest::Approx(oracle::pi).epsilon(1e-13));
    }
}

TEST_CASE("polynomial exactness on random polynomials") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int m : {2, 5, 10, 20}) {
        std::vector<double> c(2 * m);
        for (auto& v : c) v = u(rng);
        const double lo = -1.3, hi = 2.1;
        auto p = [&](double x) {
            double s = 0.0;
            for (std::size_t k = c.size(); k-- > 0;) s = s * x + c[k];
            return s;
        };
        double exact = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k)
            exact += c[k] * (std::pow(hi, k + 1.0) - std::pow(lo, k + 1.0)) / (k + 1.0);
        CHECK(gauss_legendre(m, lo, hi).integrate(p) == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("refinement consistency on a smooth integrand") {
    auto f = [](double x) { return std::exp(-x * x) * std::cos(3 * x); };
    const double a = gauss_legendre(40, -2, 2).integrate(f);
    const double b = gauss_legendre(80, -2, 2).integrate(f);
    CHECK(std::abs(a - b) < 1e-12);
    CHECK(b == doctest::Approx(oracle::simpson(f, -2, 2, 1e-14)).epsilon(1e-10));
}

TEST_CASE("gauss_chebyshev") {
    const QuadratureRule c1 = gauss_chebyshev(1);
    CHECK(c1.nodes[0] == doctest::Approx(0.0).scale(1.0));
    CHECK(c1.weights[0] == doctest::Approx(oracle::pi));
    CHECK(gauss_chebyshev(7).integrate([](double) { return 1.0; }) == doctest::Approx(oracle::pi).epsilon(1e-15));
    CHECK(gauss_chebyshev(2).integrate([](double x) { return x * x; }) == doctest::Approx(oracle::pi / 2).epsilon(1e-14));
    const int m = 12;
    const QuadratureRule c = gauss_chebyshev(m);
    for (int j = 1; j < 2 * m; ++j) {
        const double v = c.integrate([j](double x) { return std::cos(j * std::acos(x)); });
        CHECK(std::abs(v) < 1e-12);
    }
}

TEST_CASE("composite rules") {
    const QuadratureRule q = composite_legendre({1.0, 0.0, 0.5, 0.5, 2.0}, 6);
    CHECK(q.size() == 18);
    CHECK(q.integrate([](double x) { return std::exp(x); }) == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-14));
    CHECK_THROWS_AS(composite_legendre({1.0, 1.0}, 4), DomainError);
    const QuadratureRule u = uniform_composite(0, 1, 10, 4);
    CHECK(u.size() == 40);
}

TEST_CASE("truncation_for_weight") {
    const Interval iv = truncation_for_weight(PolynomialPotential({2, 4, 2}), 10, -700.0);
    CHECK(iv.lo <= -2.0);
    CHECK(iv.hi >= 0.0);
    const double r = std::sqrt(35.0);  // 20(z+1)² = 700
    CHECK(iv.lo == doctest::Approx(-1 - r).epsilon(0.1));
    CHECK(iv.hi == doctest::Approx(-1 + r).epsilon(0.1));

    const Interval unit = truncation_for_weight(PolynomialPotential({0, 0, 1}), 1, -1.0);
    CHECK(unit.lo == doctest::Approx(-1.0).epsilon(0.1));
    CHECK(unit.hi == doctest::Approx(1.0).epsilon(0.1));

    const Interval wide = truncation_for_weight(PolynomialPotential({2, 4, 2}), 10, -1400.0);
    CHECK(wide.lo < iv.lo);
    CHECK(wide.hi > iv.hi);

    // -n V below the floor just outside
    const PolynomialPotential V({0, 0, 0.5, 0, 0.25});
    const Interval q = truncation_for_weight(V, 7, -300.0);
    CHECK(7 * (V(q.lo) - V.min_value()) >= 300.0);
    CHECK(7 * (V(q.hi) - V.min_value()) >= 300.0);
}
