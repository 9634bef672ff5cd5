#pragma once

#include <cstddef>
#include <vector>

namespace eigenforge {

// Dense row-major matrix, sized for the small Ritz systems (<= 65 x 65).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Eigenvalues ascending; eigenvectors stored as the matching columns.
struct SymmetricEigen {
  std::vector<double> values;
  Matrix vectors;
};

// Lower-triangular L with B = L L^T. Throws kConditioning when a pivot is not
// safely positive.
Matrix cholesky(const Matrix& b);

// Cyclic Jacobi rotations until the off-diagonal Frobenius norm falls below
// tol times the Frobenius norm of the input.
SymmetricEigen jacobi_eigen(Matrix a, double tol = 1e-14, int max_sweeps = 100);

// A x = lambda B x with A symmetric and B symmetric positive definite,
// reduced to L^{-1} A L^{-T} by Cholesky. Eigenvectors are B-orthonormal.
SymmetricEigen generalized_symmetric_eigen(const Matrix& a, const Matrix& b,
                                           double tol = 1e-14);

}  // namespace eigenforge
