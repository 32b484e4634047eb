#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace multstat {

/// Dense row-major square matrix.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), a_(n * n, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    std::span<double> row(std::size_t i) { return {a_.data() + i * n_, n_}; }
    std::span<const double> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }

    double norm1() const;

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

struct LogDet {
    double log_abs = 0.0;  // log|det|, -inf when singular
    int sign = 1;          // 0 when singular
    double min_pivot_ratio = 1.0;  // min |u_ii| / max |u_ii|
};

/// log|det A| by LU with partial pivoting (A is taken by value and overwritten).
LogDet lu_logdet(Matrix A);

/// Inverse by LU with partial pivoting; throws PrecisionError if singular.
Matrix inverse(const Matrix& A);

/// 1-norm condition number ||A||_1 ||A^{-1}||_1.
double condition_1(const Matrix& A);

}  // namespace multstat
