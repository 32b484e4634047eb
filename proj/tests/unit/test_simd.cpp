#include <doctest.h>

#include <random>
#include <vector>

#include "multstat/simd.hpp"

using namespace multstat;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

}  // namespace

TEST_CASE("isa selection") {
    CHECK(simd::isa_available(simd::Isa::scalar));
    CHECK(simd::isa_name(simd::Isa::scalar) == "scalar");
    const simd::Isa before = simd::active_isa();
    simd::force_isa(simd::Isa::scalar);
    CHECK(simd::active_isa() == simd::Isa::scalar);
    simd::force_isa(before);
}

#if defined(MULTSTAT_HAVE_AVX2)
TEST_CASE("avx2 kernels match scalar kernels") {
    if (!simd::isa_available(simd::Isa::avx2)) return;
    std::mt19937_64 rng(7);
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 17u, 64u, 1001u}) {
        CAPTURE(n);
        const auto w = random_vec(rng, n), a = random_vec(rng, n), b = random_vec(rng, n);
        const double ref = simd::scalar::weighted_dot(w, a, b);
        CHECK(simd::avx2::weighted_dot(w, a, b) == doctest::Approx(ref).epsilon(1e-13).scale(1.0));
        CHECK(simd::avx2::dot(a, b) == doctest::Approx(simd::scalar::dot(a, b)).epsilon(1e-13).scale(1.0));

        auto y1 = b, y2 = b;
        simd::scalar::axpy(0.37, a, y1);
        simd::avx2::axpy(0.37, a, y2);
        for (std::size_t i = 0; i < n; ++i) CHECK(y2[i] == doctest::Approx(y1[i]).epsilon(1e-15));

        std::vector<double> o1(n), o2(n);
        simd::scalar::recurrence_step(w, 0.1, 0.7, 1.3, a, b, o1);
        simd::avx2::recurrence_step(w, 0.1, 0.7, 1.3, a, b, o2);
        for (std::size_t i = 0; i < n; ++i) CHECK(o2[i] == doctest::Approx(o1[i]).epsilon(1e-14));

        if (n == 0) continue;
        auto z = random_vec(rng, n);
        z[n / 2] = z[0];  // equal abscissa must be left untouched
        std::vector<double> k1(n, -99.0), k2(n, -99.0);
        simd::scalar::integrable_kernel_row(z[0], a[0], b[0], z, a, b, k1);
        simd::avx2::integrable_kernel_row(z[0], a[0], b[0], z, a, b, k2);
        for (std::size_t i = 0; i < n; ++i) CHECK(k2[i] == doctest::Approx(k1[i]).epsilon(1e-13));
        CHECK(k1[0] == -99.0);
        CHECK(k2[n / 2] == -99.0);
    }
}

TEST_CASE("dispatch follows force_isa") {
    if (!simd::isa_available(simd::Isa::avx2)) return;
    std::mt19937_64 rng(11);
    const auto a = random_vec(rng, 513), b = random_vec(rng, 513);
    const simd::Isa before = simd::active_isa();
    simd::force_isa(simd::Isa::scalar);
    const double s = simd::dot(a, b);
    simd::force_isa(simd::Isa::avx2);
    const double v = simd::dot(a, b);
    simd::force_isa(before);
    CHECK(s == simd::scalar::dot(a, b));
    CHECK(v == simd::avx2::dot(a, b));
}
#endif
