#pragma once
// Dense complex linear algebra for the small dimensions used throughout
// (n <= 8). Row-major storage, LU with partial pivoting for determinants
// and solves.

#include <complex>
#include <cstddef>
#include <vector>

namespace thetadiv {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;
using RVec = std::vector<double>;

// Bilinear dot product, no conjugation: sum_i a_i b_i.
Complex dot(const CVec& a, const CVec& b);
// Euclidean norm sum |v_i|^2 and its square root.
double norm2(const CVec& v);
double norm(const CVec& v);

CVec add(const CVec& a, const CVec& b);
CVec sub(const CVec& a, const CVec& b);
CVec scale(const Complex& s, const CVec& v);

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Complex(0.0, 0.0)) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_ && rows_ > 0; }

    Complex& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    ComplexMatrix transposed() const;
    // Submatrix with row i and column j removed.
    ComplexMatrix minor_matrix(std::size_t i, std::size_t j) const;

    ComplexMatrix operator+(const ComplexMatrix& rhs) const;
    ComplexMatrix operator-(const ComplexMatrix& rhs) const;
    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    ComplexMatrix operator*(const Complex& s) const;
    CVec apply(const CVec& v) const;

    double max_abs() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    CVec a_;
};

// Determinant by LU with partial pivoting.
Complex det(ComplexMatrix a);
// Solve a x = b; throws std::runtime_error on (numerically) singular a.
CVec solve(ComplexMatrix a, CVec b);
ComplexMatrix solve(ComplexMatrix a, ComplexMatrix b);
ComplexMatrix inverse(const ComplexMatrix& a);

}  // namespace thetadiv
