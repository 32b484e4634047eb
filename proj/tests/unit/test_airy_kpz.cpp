#include <doctest.h>

#include <cmath>

#include "multstat/airy.hpp"
#include "multstat/errors.hpp"
#include "multstat/kpz.hpp"
#include "oracles.hpp"

using namespace multstat;

TEST_CASE("Airy values at the origin") {
    const AiryEval z = airy_ai(0.0);
    CHECK(std::abs(z.value - oracle::ai0) < 1e-15);
    CHECK(std::abs(z.derivative - oracle::aip0) < 1e-15);
    CHECK(z.abs_err_bound <= 1e-12);
}

TEST_CASE("Airy against the long-double series") {
    for (double x = -5.0; x <= 5.0; x += 0.25) {
        const AiryEval a = airy_ai(x);
        const oracle::AiryPair r = oracle::airy_series(x);
        CHECK(std::abs(a.value - static_cast<double>(r.ai)) < 1e-12);
        CHECK(std::abs(a.derivative - static_cast<double>(r.aip)) < 1e-12);
    }
}

TEST_CASE("Wronskian") {
    for (double x : {-150.0, -40.0, -12.0, -8.5, -5.0, -1.0, 0.0, 3.0, 5.0, 8.5, 12.0}) {
        CAPTURE(x);
        const AiryEval a = airy_ai(x), b = detail::airy_bi(x);
        const double w = a.value * b.derivative - a.derivative * b.value;
        CHECK(std::abs(w - 1.0 / oracle::pi) < 1e-11);
    }
}

TEST_CASE("Airy branch continuity and range") {
    for (double x : {-8.0, 8.0}) {
        const AiryEval l = airy_ai(std::nextafter(x, -100.0)), r = airy_ai(std::nextafter(x, 100.0));
        CHECK(std::abs(l.value - r.value) < 1e-12);
        CHECK(std::abs(l.derivative - r.derivative) < 1e-12);
    }
    CHECK(airy_ai(30.0).value > 0.0);
    CHECK_THROWS_AS(airy_ai(kAiryMin - 1.0), DomainError);
    CHECK_THROWS_AS(airy_ai(kAiryMax + 1.0), DomainError);
}

TEST_CASE("Airy kernel") {
    CHECK(airy_kernel(0.0, 0.0) == doctest::Approx(oracle::aip0_sq).epsilon(1e-14));
    for (double l = -6.0; l <= 3.0; l += 0.7)
        for (double m = -5.0; m <= 3.0; m += 0.9) CHECK(std::abs(airy_kernel(l, m) - airy_kernel(m, l)) < 1e-13);
    for (double l = -10.0; l <= 2.0; l += 0.1) CHECK(airy_kernel(l, l) > 0.0);
    // near-diagonal agrees with the confluent form
    CHECK(airy_kernel(1.0, 1.0 + 2e-6) == doctest::Approx(airy_kernel(1.0 + 1e-6, 1.0 + 1e-6)).epsilon(1e-8));
}

TEST_CASE("KPZ Fredholm determinant") {
    const KpzDomain d40 = default_kpz_domain(-40.0);
    CHECK(d40.L == 14.0);
    CHECK(std::abs(kpz_log_det(-40.0, 1.0, 80, d40)) < 1e-9);

    const KpzDomain d5 = default_kpz_domain(5.0);
    const double a = kpz_log_det(5.0, 1.0, 80, d5), b = kpz_log_det(5.0, 1.0, 160, d5);
    CHECK(std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(b)));

    const KpzDomain d2 = default_kpz_domain(2.0);
    CHECK(kpz_log_det(2.0, 1.0, 120, d2) < kpz_log_det(0.0, 1.0, 120, d2));

    for (double s : {-5.0, 0.0, 4.0, 10.0})
        for (double T : {0.5, 2.0, 8.0}) {
            const KpzStatResult r = kpz_mult_stat(s, T, 160);
            CHECK(r.log_value <= 0.0);
            CHECK(r.refinement_delta <= 1e-7);
        }
    CHECK_THROWS_AS(kpz_log_det(0.0, 1.0, 39, d5), DomainError);
    CHECK_THROWS_AS(kpz_log_det(0.0, 1.0, 80, {9.0, 10.0}), DomainError);
    CHECK_THROWS_AS(kpz_log_det(0.0, 0.0, 80, d5), DomainError);
}

TEST_CASE("Nystrom convergence") {
    const KpzDomain d = default_kpz_domain(3.0);
    double prev = INFINITY;
    double last = kpz_log_det(3.0, 2.0, 20 * 2, d);
    for (int m : {80, 160}) {
        const double v = kpz_log_det(3.0, 2.0, m, d);
        const double delta = std::abs(v - last);
        CHECK((delta <= prev / 10.0 || delta < 1e-8));
        prev = delta;
        last = v;
    }
}

TEST_CASE("closed-form tail") {
    CHECK(cc_tail_dlogL_ds(0.0, 1.0) == 0.0);
    const double s = 3.0 / (oracle::pi * oracle::pi);
    CHECK(cc_tail_dlogL_ds(s, 1.0) == doctest::Approx(-oracle::five_thirds_pi4).epsilon(1e-13));
    CHECK_THROWS_AS(cc_tail_dlogL_ds(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(cc_tail_dlogL_ds(1.0, 0.0), DomainError);
}
