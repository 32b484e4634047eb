#include "multstat/deformation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "multstat/errors.hpp"

namespace multstat {

double DeformationSpec::Q(double z) const {
    switch (form) {
        case QForm::linear: return -t * z;
        case QForm::sinh: return -t * std::sinh(z);
        case QForm::zexp: return -t * z * std::exp(beta * z);
    }
    return 0.0;
}

double DeformationSpec::dQ(double z) const {
    switch (form) {
        case QForm::linear: return -t;
        case QForm::sinh: return -t * std::cosh(z);
        case QForm::zexp: return -t * (1.0 + beta * z) * std::exp(beta * z);
    }
    return 0.0;
}

std::vector<double> DeformationSpec::q_coeffs(int K) const {
    std::vector<double> q(K + 1, 0.0);
    double fact = 1.0;  // (k-1)! or k!
    switch (form) {
        case QForm::linear:
            if (K >= 1) q[1] = -t;
            break;
        case QForm::sinh:
            for (int k = 1; k <= K; ++k) {
                fact *= k;
                if (k % 2 == 1) q[k] = -t / fact;
            }
            break;
        case QForm::zexp: {
            double bp = 1.0;
            for (int k = 1; k <= K; ++k) {
                if (k > 1) {
                    fact *= (k - 1);
                    bp *= beta;
                }
                q[k] = -t * bp / fact;
            }
            break;
        }
    }
    return q;
}

double DeformationSpec::x_of_n(int n) const { return x0 * std::pow(static_cast<double>(n), alpha); }

QForm parse_qform(const std::string& s) {
    if (s == "linear") return QForm::linear;
    if (s == "sinh") return QForm::sinh;
    if (s == "zexp" || s == "z-exp") return QForm::zexp;
    throw DomainError("unknown deformation form '" + s + "' (expected linear, sinh or zexp)");
}

std::string to_string(QForm f) {
    switch (f) {
        case QForm::linear: return "linear";
        case QForm::sinh: return "sinh";
        case QForm::zexp: return "zexp";
    }
    return "?";
}

GrowthCase parse_case(const std::string& s) {
    if (s == "case1" || s == "1") return GrowthCase::case1;
    if (s == "case2" || s == "2") return GrowthCase::case2;
    throw DomainError("unknown growth case '" + s + "' (expected case1 or case2)");
}

std::string to_string(GrowthCase c) { return c == GrowthCase::case1 ? "case1" : "case2"; }

double log_sigma_of_u(double u) { return -(std::max(u, 0.0) + std::log1p(std::exp(-std::abs(u)))); }

double log_one_minus_sigma_of_u(double u) {
    return -(std::max(-u, 0.0) + std::log1p(std::exp(-std::abs(u))));
}

double fermi_exponent(const DeformationSpec& spec, double z, int n, double x) {
    return x - std::pow(static_cast<double>(n), 2.0 / 3.0) * spec.Q(z);
}

double sigma_n(const DeformationSpec& spec, double z, int n, double x) {
    const double u = fermi_exponent(spec, z, n, x);
    if (u > 0.0) {
        const double e = std::exp(-u);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(u));
}

double log_sigma_n(const DeformationSpec& spec, double z, int n, double x) {
    return log_sigma_of_u(fermi_exponent(spec, z, n, x));
}

double log_one_minus_sigma_n(const DeformationSpec& spec, double z, int n, double x) {
    return log_one_minus_sigma_of_u(fermi_exponent(spec, z, n, x));
}

bool ValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.pass; });
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto& c : checks)
        os << (c.pass ? "pass " : "FAIL ") << c.name << " margin=" << c.margin
           << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
    return os.str();
}

ValidationReport validate(const DeformationSpec& spec, const EquilibriumMeasure& meas,
                          const ConformalData& conf) {
    ValidationReport rep;
    auto add = [&](std::string name, bool pass, double margin, std::string detail = {}) {
        rep.checks.push_back({std::move(name), pass, margin, std::move(detail)});
    };

    add("t_positive", spec.t > 0.0, spec.t);
    const double q0 = spec.Q(0.0);
    add("Q_zero_at_origin", q0 == 0.0, -std::abs(q0));
    const std::vector<double> q = spec.q_coeffs(2);
    add("q1_equals_minus_t", q[1] == -spec.t && q[1] < 0.0, -q[1]);

    const double a = meas.endpoint_a;
    const int N = 2001;
    double neg_margin = INFINITY, pos_margin = INFINITY;
    for (int i = 0; i < N; ++i) {
        const double z = -3.0 * a + 6.0 * a * i / (N - 1);
        if (std::abs(z) < 1e-6) continue;
        const double v = spec.Q(z);
        if (z < 0.0) neg_margin = std::min(neg_margin, v);
        else pos_margin = std::min(pos_margin, -v);
    }
    add("Q_positive_left", neg_margin > 0.0, neg_margin, "grid on [-3a, 0)");
    add("Q_negative_right", pos_margin > 0.0, pos_margin, "grid on (0, 3a]");

    const double lo = spec.eps;
    const double hi = (spec.growth == GrowthCase::case1 ? 4.0 / 21.0 : 2.0 / 9.0) - spec.eps;
    const double am = std::min(spec.alpha - lo, hi - spec.alpha);
    std::ostringstream range;
    range << "alpha in [" << lo << ", " << hi << "]";
    add("alpha_range", am >= 0.0, am, range.str());

    if (spec.growth == GrowthCase::case2) {
        const double target = -spec.t * conf.cV_tilde / conf.cV;
        const double gap = std::abs(q[2] - target);
        std::ostringstream d;
        d << "q2=" << q[2] << " required " << target;
        add("q2_relation", gap <= 1e-9, 1e-9 - gap, d.str());
    }
    return rep;
}

double HSeries::operator()(double w) const {
    double s = 0.0;
    for (std::size_t k = h_coeffs.size(); k-- > 0;) s = s * w + h_coeffs[k];
    return s;
}

HSeries h_series(const DeformationSpec& spec, const ConformalData& conf, int K) {
    if (K < 1) throw DomainError("h_series: K must be >= 1");
    if (K > static_cast<int>(conf.A_coeffs.size()))
        throw TruncationError("h_series: K exceeds the available inverse-series order");
    std::vector<double> inner(K + 1, 0.0);
    for (int k = 1; k <= K; ++k) inner[k] = conf.A_coeffs[k - 1];
    const std::vector<double> q = spec.q_coeffs(K);
    HSeries h;
    h.h_coeffs = series::compose(q, inner, K + 1);
    h.h_coeffs[0] = 0.0;
    return h;
}

}  // namespace multstat
