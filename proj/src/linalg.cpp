#include "thetadiv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thetadiv {

Complex dot(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Complex s(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const CVec& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return s;
}

double norm(const CVec& v) { return std::sqrt(norm2(v)); }

CVec add(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("add: size mismatch");
    CVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

CVec sub(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sub: size mismatch");
    CVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

CVec scale(const Complex& s, const CVec& v) {
    CVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1.0, 0.0);
    return m;
}

ComplexMatrix ComplexMatrix::transposed() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

ComplexMatrix ComplexMatrix::minor_matrix(std::size_t i, std::size_t j) const {
    if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("minor of empty matrix");
    ComplexMatrix m(rows_ - 1, cols_ - 1);
    for (std::size_t r = 0, mr = 0; r < rows_; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, mc = 0; c < cols_; ++c) {
            if (c == j) continue;
            m(mr, mc) = (*this)(r, c);
            ++mc;
        }
        ++mr;
    }
    return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix add: shape mismatch");
    ComplexMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + rhs.a_[k];
    return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix sub: shape mismatch");
    ComplexMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - rhs.a_[k];
    return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix mul: shape mismatch");
    ComplexMatrix r(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex aik = (*this)(i, k);
            if (aik == Complex(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) r(i, j) += aik * rhs(k, j);
        }
    return r;
}

ComplexMatrix ComplexMatrix::operator*(const Complex& s) const {
    ComplexMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * s;
    return r;
}

CVec ComplexMatrix::apply(const CVec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("apply: size mismatch");
    CVec r(rows_, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& x : a_) m = std::max(m, std::abs(x));
    return m;
}

namespace {

// In-place LU with partial pivoting. Returns the pivot permutation sign,
// 0 if a pivot is exactly zero.
int lu_decompose(ComplexMatrix& a, std::vector<std::size_t>& perm) {
    const std::size_t n = a.rows();
    perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(a(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best == 0.0) return 0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            std::swap(perm[k], perm[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = a(i, k) / a(k, k);
            a(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return sign;
}

}  // namespace

Complex det(ComplexMatrix a) {
    if (!a.square()) throw std::invalid_argument("det: matrix not square");
    std::vector<std::size_t> perm;
    const int sign = lu_decompose(a, perm);
    if (sign == 0) return Complex(0.0, 0.0);
    Complex d(static_cast<double>(sign), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) d *= a(i, i);
    return d;
}

CVec solve(ComplexMatrix a, CVec b) {
    if (!a.square() || a.rows() != b.size()) throw std::invalid_argument("solve: shape mismatch");
    const std::size_t n = a.rows();
    std::vector<std::size_t> perm;
    if (lu_decompose(a, perm) == 0) throw std::runtime_error("solve: singular matrix");
    CVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[perm[i]];
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= a(i, j) * x[j];
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j) x[i] -= a(i, j) * x[j];
        x[i] /= a(i, i);
    }
    return x;
}

ComplexMatrix solve(ComplexMatrix a, ComplexMatrix b) {
    if (!a.square() || a.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
    const std::size_t n = a.rows();
    std::vector<std::size_t> perm;
    if (lu_decompose(a, perm) == 0) throw std::runtime_error("solve: singular matrix");
    ComplexMatrix x(n, b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
        CVec col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = b(perm[i], c);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) col[i] -= a(i, j) * col[j];
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t j = i + 1; j < n; ++j) col[i] -= a(i, j) * col[j];
            col[i] /= a(i, i);
        }
        for (std::size_t i = 0; i < n; ++i) x(i, c) = col[i];
    }
    return x;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
    return solve(a, ComplexMatrix::identity(a.rows()));
}

}  // namespace thetadiv
