#pragma once

namespace multstat {

struct AiryEval {
    double value = 0.0;
    double derivative = 0.0;
    double abs_err_bound = 0.0;
};

constexpr double kAiryMin = -200.0;
constexpr double kAiryMax = 30.0;

/// Ai and Ai' on [kAiryMin, kAiryMax]: Maclaurin series (long double) for
/// |x| ≤ 8, asymptotic expansions beyond.
AiryEval airy_ai(double x);

/// Airy kernel (Ai(λ)Ai'(μ) - Ai'(λ)Ai(μ)) / (λ - μ); Ai'(λ)² - λAi(λ)² when
/// |λ - μ| < 1e-6 (evaluated at the midpoint).
double airy_kernel(double lambda, double mu);

namespace detail {
/// Bi and Bi' on the same range (used by the Wronskian test).
AiryEval airy_bi(double x);
}  // namespace detail

}  // namespace multstat
