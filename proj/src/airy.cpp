#include "multstat/airy.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

#include "multstat/errors.hpp"

namespace multstat {

namespace {

constexpr double kSwitch = 8.0;

struct Pair {
    double f, df, err;
};

void check_range(double x) {
    if (!(x >= kAiryMin && x <= kAiryMax))
        throw DomainError("airy: x = " + std::to_string(x) + " outside the supported range [" +
                          std::to_string(kAiryMin) + ", " + std::to_string(kAiryMax) + "]");
}

// f = Σ 3^k (1/3)_k x^{3k}/(3k)!, g = Σ 3^k (2/3)_k x^{3k+1}/(3k+1)! and derivatives.
struct Maclaurin {
    long double f, g, df, dg, mag;
};

Maclaurin maclaurin(double xd) {
    const long double x = xd, x3 = x * x * x;
    long double t = 1.0L, u = x;          // terms of f and g
    long double dt = 0.0L, du = 1.0L;     // terms of f' and g'
    Maclaurin m{t, u, 0.0L, du, std::fabs(t) + std::fabs(u)};
    for (int k = 1; k < 200; ++k) {
        t *= x3 / ((3.0L * k) * (3.0L * k - 1.0L));
        u *= x3 / ((3.0L * k) * (3.0L * k + 1.0L));
        // f' terms: x^{3k-1}/(3k-1)! pattern; derive from t: d/dx t_k = 3k t_k / x
        dt = (xd != 0.0) ? 3.0L * k * t / x : 0.0L;
        du = (3.0L * k + 1.0L) * u / (xd != 0.0 ? x : 1.0L);
        if (xd == 0.0) du = 0.0L;
        m.f += t;
        m.g += u;
        m.df += dt;
        m.dg += du;
        m.mag += std::fabs(t) + std::fabs(u) + std::fabs(dt) + std::fabs(du);
        if (std::fabs(t) + std::fabs(u) + std::fabs(dt) + std::fabs(du) <
            1e-22L * (std::fabs(m.f) + std::fabs(m.g) + 1e-300L))
            break;
    }
    return m;
}

long double c1() { return 1.0L / (std::cbrt(9.0L) * std::tgamma(2.0L / 3.0L)); }
long double c2() { return 1.0L / (std::cbrt(3.0L) * std::tgamma(1.0L / 3.0L)); }

// Coefficients u_k, v_k of the asymptotic expansions.
struct UV {
    double u[64], v[64];
    UV() {
        u[0] = v[0] = 1.0;
        for (int k = 1; k < 64; ++k) {
            u[k] = (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k) * u[k - 1];
            v[k] = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u[k];
        }
    }
};

const UV& uv() {
    static const UV t;
    return t;
}

// Σ s^k c_k / ζ^k truncated at the smallest term; returns last-term magnitude in err.
double asym_sum(const double* c, double zeta, double sgn, double& err) {
    double s = 0.0, p = 1.0, prev = INFINITY;
    err = 0.0;
    for (int k = 0; k < 64; ++k) {
        const double term = c[k] * p;
        if (std::abs(term) > prev) break;
        s += term;
        prev = std::abs(term);
        err = prev;
        p *= sgn / zeta;
    }
    return s;
}

// Even/odd split sums for the oscillatory region.
void asym_split(const double* c, double zeta, double& even, double& odd, double& err) {
    even = odd = 0.0;
    double p = 1.0, prev = INFINITY;
    err = 0.0;
    for (int k = 0; k < 64; ++k) {
        const double term = c[k] * p;
        if (std::abs(term) > prev) break;
        // (-1)^{floor(k/2)} sign pattern
        const double sg = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) even += sg * term;
        else odd += sg * term;
        prev = std::abs(term);
        err = prev;
        p /= zeta;
    }
}

}  // namespace

AiryEval airy_ai(double x) {
    check_range(x);
    AiryEval r;
    const double pi = std::numbers::pi;
    if (std::abs(x) <= kSwitch) {
        const Maclaurin m = maclaurin(x);
        const long double a = c1(), b = c2();
        r.value = static_cast<double>(a * m.f - b * m.g);
        r.derivative = static_cast<double>(a * m.df - b * m.dg);
        r.abs_err_bound = static_cast<double>(64.0L * LDBL_EPSILON * m.mag) + 2.0 * DBL_EPSILON * std::abs(r.value);
        return r;
    }
    const UV& t = uv();
    if (x > 0.0) {
        const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
        const double q = std::sqrt(std::sqrt(x));
        const double e = std::exp(-zeta) / (2.0 * std::sqrt(pi));
        double eu, ev;
        const double su = asym_sum(t.u, zeta, -1.0, eu);
        const double sv = asym_sum(t.v, zeta, -1.0, ev);
        r.value = e / q * su;
        r.derivative = -e * q * sv;
        r.abs_err_bound = e * (eu / q + ev * q) + 4.0 * DBL_EPSILON * (std::abs(r.value) + std::abs(r.derivative));
        return r;
    }
    const double y = -x;
    const double zeta = 2.0 / 3.0 * y * std::sqrt(y);
    const double q = std::sqrt(std::sqrt(y));
    const double th = zeta - pi / 4.0;
    const double c = std::cos(th), s = std::sin(th);
    double ue, uo, ve, vo, eu, ev;
    asym_split(t.u, zeta, ue, uo, eu);
    asym_split(t.v, zeta, ve, vo, ev);
    const double sp = std::sqrt(pi);
    r.value = (c * ue + s * uo) / (sp * q);
    r.derivative = q * (s * ve - c * vo) / sp;
    // phase error from evaluating cos/sin at a large argument
    const double phase = 4.0 * DBL_EPSILON * zeta;
    r.abs_err_bound = (eu + phase) / (sp * q) + q * (ev + phase) / sp + 4.0 * DBL_EPSILON;
    return r;
}

namespace detail {

AiryEval airy_bi(double x) {
    check_range(x);
    AiryEval r;
    const double pi = std::numbers::pi;
    if (std::abs(x) <= kSwitch) {
        const Maclaurin m = maclaurin(x);
        const long double a = c1(), b = c2(), s3 = std::sqrt(3.0L);
        r.value = static_cast<double>(s3 * (a * m.f + b * m.g));
        r.derivative = static_cast<double>(s3 * (a * m.df + b * m.dg));
        r.abs_err_bound = static_cast<double>(64.0L * LDBL_EPSILON * m.mag) + 2.0 * DBL_EPSILON * std::abs(r.value);
        return r;
    }
    const UV& t = uv();
    if (x > 0.0) {
        const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
        const double q = std::sqrt(std::sqrt(x));
        const double e = std::exp(zeta) / std::sqrt(pi);
        double eu, ev;
        const double su = asym_sum(t.u, zeta, 1.0, eu);
        const double sv = asym_sum(t.v, zeta, 1.0, ev);
        r.value = e / q * su;
        r.derivative = e * q * sv;
        r.abs_err_bound = e * (eu / q + ev * q) + 4.0 * DBL_EPSILON * (std::abs(r.value) + std::abs(r.derivative));
        return r;
    }
    const double y = -x;
    const double zeta = 2.0 / 3.0 * y * std::sqrt(y);
    const double q = std::sqrt(std::sqrt(y));
    const double th = zeta - pi / 4.0;
    const double c = std::cos(th), s = std::sin(th);
    double ue, uo, ve, vo, eu, ev;
    asym_split(t.u, zeta, ue, uo, eu);
    asym_split(t.v, zeta, ve, vo, ev);
    const double sp = std::sqrt(pi);
    r.value = (-s * ue + c * uo) / (sp * q);
    r.derivative = q * (c * ve + s * vo) / sp;
    const double phase = 4.0 * DBL_EPSILON * zeta;
    r.abs_err_bound = (eu + phase) / (sp * q) + q * (ev + phase) / sp + 4.0 * DBL_EPSILON;
    return r;
}

}  // namespace detail

double airy_kernel(double lambda, double mu) {
    if (std::abs(lambda - mu) < 1e-6) {
        const double z = 0.5 * (lambda + mu);
        const AiryEval a = airy_ai(z);
        return a.derivative * a.derivative - z * a.value * a.value;
    }
    const AiryEval a = airy_ai(lambda), b = airy_ai(mu);
    return (a.value * b.derivative - a.derivative * b.value) / (lambda - mu);
}

}  // namespace multstat
