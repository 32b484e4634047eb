#pragma once

#include <string>
#include <vector>

#include "multstat/equilibrium.hpp"

namespace multstat {

enum class QForm { linear, sinh, zexp };
enum class GrowthCase { case1, case2 };

/// Deformation Q together with the growth parameters x = x0 n^alpha.
///   linear: Q(z) = -t z
///   sinh:   Q(z) = -t sinh(z)
///   zexp:   Q(z) = -t z exp(beta z)
struct DeformationSpec {
    QForm form = QForm::linear;
    double t = 1.0;
    double beta = 0.0;
    double x0 = 1.0;
    double alpha = 0.15;
    GrowthCase growth = GrowthCase::case1;
    double eps = 0.01;

    double Q(double z) const;
    double dQ(double z) const;
    /// Taylor coefficients q_0..q_K at 0 (q_0 = 0).
    std::vector<double> q_coeffs(int K) const;
    /// x = x0 n^alpha
    double x_of_n(int n) const;
};

QForm parse_qform(const std::string& s);
std::string to_string(QForm f);
GrowthCase parse_case(const std::string& s);
std::string to_string(GrowthCase c);

/// u = x - n^{2/3} Q(z)
double fermi_exponent(const DeformationSpec& spec, double z, int n, double x);
/// σ_n = 1 / (1 + e^u)
double sigma_n(const DeformationSpec& spec, double z, int n, double x);
double log_sigma_n(const DeformationSpec& spec, double z, int n, double x);
double log_one_minus_sigma_n(const DeformationSpec& spec, double z, int n, double x);

/// Logistic helpers on the exponent u.
double log_sigma_of_u(double u);
double log_one_minus_sigma_of_u(double u);

struct ValidationCheck {
    std::string name;
    bool pass = false;
    double margin = 0.0;  // positive when satisfied
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool ok() const;
    std::string summary() const;
};

/// Checks Q(0) = 0, q_1 = -t < 0, the sign pattern on a 2001-point grid over
/// [-3a, 3a], the alpha range for the growth case and, for case2, the q_2 relation.
ValidationReport validate(const DeformationSpec& spec, const EquilibriumMeasure& meas,
                          const ConformalData& conf);

struct HSeries {
    std::vector<double> h_coeffs;  // h_0..h_K
    double operator()(double w) const;
};

/// Coefficients of H(w) = Q(varphi^{-1}(w)).
HSeries h_series(const DeformationSpec& spec, const ConformalData& conf, int K);

}  // namespace multstat
