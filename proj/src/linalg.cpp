#include "multstat/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "multstat/errors.hpp"
#include "multstat/simd.hpp"

namespace multstat {

Matrix Matrix::identity(std::size_t n) {
    Matrix I(n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
}

double Matrix::norm1() const {
    double best = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n_; ++i) s += std::abs((*this)(i, j));
        best = std::max(best, s);
    }
    return best;
}

namespace {

// In-place LU; returns false when a zero pivot is met. perm[i] = source row.
bool lu_factor(Matrix& A, std::vector<std::size_t>& perm, int& sign) {
    const std::size_t n = A.size();
    perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(A(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(A(i, k)) > best) best = std::abs(A(i, k)), p = i;
        if (best == 0.0) return false;
        if (p != k) {
            std::swap_ranges(A.row(k).begin(), A.row(k).end(), A.row(p).begin());
            std::swap(perm[k], perm[p]);
            sign = -sign;
        }
        const double piv = A(k, k);
        const auto rk = A.row(k).subspan(k + 1);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double l = A(i, k) / piv;
            A(i, k) = l;
            if (l != 0.0) simd::axpy(-l, rk, A.row(i).subspan(k + 1));
        }
    }
    return true;
}

}  // namespace

LogDet lu_logdet(Matrix A) {
    LogDet r;
    const std::size_t n = A.size();
    if (n == 0) return r;
    std::vector<std::size_t> perm;
    int sign = 1;
    if (!lu_factor(A, perm, sign)) {
        r.log_abs = -std::numeric_limits<double>::infinity();
        r.sign = 0;
        r.min_pivot_ratio = 0.0;
        return r;
    }
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = A(i, i);
        r.log_abs += std::log(std::abs(u));
        if (u < 0.0) sign = -sign;
        lo = std::min(lo, std::abs(u));
        hi = std::max(hi, std::abs(u));
    }
    r.sign = sign;
    r.min_pivot_ratio = lo / hi;
    return r;
}

Matrix inverse(const Matrix& A0) {
    Matrix A = A0;
    const std::size_t n = A.size();
    std::vector<std::size_t> perm;
    int sign = 1;
    if (!lu_factor(A, perm, sign)) throw PrecisionError("inverse: matrix is singular");
    Matrix X(n);
    std::vector<double> col(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = perm[i] == j ? 1.0 : 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < i; ++k) col[i] -= A(i, k) * col[k];
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t k = i + 1; k < n; ++k) col[i] -= A(i, k) * col[k];
            col[i] /= A(i, i);
        }
        for (std::size_t i = 0; i < n; ++i) X(i, j) = col[i];
    }
    return X;
}

double condition_1(const Matrix& A) {
    try {
        return A.norm1() * inverse(A).norm1();
    } catch (const PrecisionError&) {
        return std::numeric_limits<double>::infinity();
    }
}

}  // namespace multstat
