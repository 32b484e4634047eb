#include "multstat/kpz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "multstat/airy.hpp"
#include "multstat/errors.hpp"
#include "multstat/linalg.hpp"
#include "multstat/simd.hpp"

namespace multstat {

KpzDomain default_kpz_domain(double s) { return {14.0 + 2.0 * std::max(s, 0.0), 10.0}; }

double kpz_log_det(double s, double T, int m, const KpzDomain& dom) {
    if (!(T > 0.0)) throw DomainError("kpz: T must be positive");
    if (m < 40) throw DomainError("kpz: need m >= 40");
    if (dom.L < 10.0 || dom.R < 8.0) throw DomainError("kpz: need L >= 10 and R >= 8");
    const QuadratureRule q = gauss_legendre(m, -dom.L, dom.R);
    const double tau = std::cbrt(T);
    std::vector<double> z = q.nodes, ai(m), aip(m), sq(m);
    for (int i = 0; i < m; ++i) {
        const AiryEval a = airy_ai(z[i]);
        ai[i] = a.value;
        aip[i] = a.derivative;
        const double u = -tau * (z[i] + s);
        // logistic 1/(1+e^u) without overflow
        const double what = u > 0.0 ? std::exp(-u) / (1.0 + std::exp(-u)) : 1.0 / (1.0 + std::exp(u));
        sq[i] = std::sqrt(q.weights[i] * what);
    }
    Matrix A(m);
    for (int i = 0; i < m; ++i) {
        auto row = A.row(i);
        simd::integrable_kernel_row(z[i], ai[i], aip[i], z, ai, aip, row);
        for (int j = 0; j < m; ++j) {
            if (std::abs(z[i] - z[j]) < 1e-6) {
                const double c = 0.5 * (z[i] + z[j]);
                const AiryEval a = i == j ? AiryEval{ai[i], aip[i], 0.0} : airy_ai(c);
                row[j] = a.derivative * a.derivative - c * a.value * a.value;
            }
        }
        for (int j = 0; j < m; ++j) row[j] = (i == j ? 1.0 : 0.0) - sq[i] * row[j] * sq[j];
    }
    const LogDet ld = lu_logdet(std::move(A));
    if (ld.sign <= 0) throw PrecisionError("kpz: Fredholm determinant is not positive");
    return ld.log_abs;
}

KpzStatResult kpz_mult_stat(double s, double T, int m, const KpzDomain& dom, double tolerance) {
    const double coarse = kpz_log_det(s, T, m, dom);
    const double fine = kpz_log_det(s, T, 2 * m, dom);
    KpzStatResult r;
    r.s = s;
    r.T = T;
    r.log_value = fine;
    r.m_nodes = 2 * m;
    r.domain = dom;
    r.refinement_delta = std::abs(fine - coarse) / std::max(1.0, std::abs(fine));
    if (r.refinement_delta > tolerance) {
        std::ostringstream os;
        os << "kpz_mult_stat: doubling m from " << m << " changed log L by " << r.refinement_delta
           << " at s=" << s << ", T=" << T;
        throw ConvergenceError(os.str());
    }
    return r;
}

KpzStatResult kpz_mult_stat(double s, double T, int m) {
    return kpz_mult_stat(s, T, m, default_kpz_domain(s));
}

double kpz_dlogL_ds_fd(double s, double T, int m, const KpzDomain& dom, double h) {
    return (kpz_log_det(s + h, T, m, dom) - kpz_log_det(s - h, T, m, dom)) / (2.0 * h);
}

double cc_tail_dlogL_ds(double s, double T) {
    if (!(T > 0.0)) throw DomainError("cc_tail_dlogL_ds: T must be positive");
    const double pi2 = std::numbers::pi * std::numbers::pi, pi4 = pi2 * pi2;
    const double rad = 1.0 + pi2 * s * std::pow(T, -2.0 / 3.0);
    if (rad < 0.0) throw DomainError("cc_tail_dlogL_ds: negative radicand 1 + pi^2 s T^{-2/3}");
    const double A = std::sqrt(rad) - 1.0;
    const double T43 = std::pow(T, 4.0 / 3.0);
    return -(2.0 * T43 / (3.0 * pi4)) * A * A * A - (T43 / pi4) * A * A;
}

}  // namespace multstat
