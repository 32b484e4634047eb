#include "multstat/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace multstat::simd {

namespace {

bool cpu_has_avx2() {
#if defined(MULTSTAT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa detect() {
    const bool have = cpu_has_avx2();
    if (const char* env = std::getenv("MULTSTAT_SIMD")) {
        const std::string v(env);
        if (v == "scalar") return Isa::scalar;
        if (v == "avx2" && have) return Isa::avx2;
    }
    return have ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

}  // namespace

Isa active_isa() { return current().load(std::memory_order_relaxed); }

bool isa_available(Isa isa) { return isa == Isa::scalar || cpu_has_avx2(); }

void force_isa(Isa isa) {
    current().store(isa_available(isa) ? isa : Isa::scalar, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

#if defined(MULTSTAT_HAVE_AVX2)
#define MULTSTAT_DISPATCH(fn, ...) \
    (active_isa() == Isa::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define MULTSTAT_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
    return MULTSTAT_DISPATCH(weighted_dot, w, a, b);
}

double dot(std::span<const double> a, std::span<const double> b) {
    return MULTSTAT_DISPATCH(dot, a, b);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    MULTSTAT_DISPATCH(axpy, alpha, x, y);
}

void recurrence_step(std::span<const double> x, double alpha, double b_prev,
                     double inv_b_next, std::span<const double> p_prev,
                     std::span<const double> p, std::span<double> out) {
    MULTSTAT_DISPATCH(recurrence_step, x, alpha, b_prev, inv_b_next, p_prev, p, out);
}

void integrable_kernel_row(double z_i, double f_i, double g_i,
                           std::span<const double> z, std::span<const double> f,
                           std::span<const double> g, std::span<double> out) {
    MULTSTAT_DISPATCH(integrable_kernel_row, z_i, f_i, g_i, z, f, g, out);
}

#undef MULTSTAT_DISPATCH

}  // namespace multstat::simd
