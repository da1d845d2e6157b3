#ifndef HAILCHI_LINALG_H_
#define HAILCHI_LINALG_H_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace hailchi {

// Dense row-major square matrix. Sized for the 2..6 dimensional problems
// this library deals with, not for general numerics.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}
  SquareMatrix(std::size_t dim, std::vector<double> row_major);

  static SquareMatrix identity(std::size_t dim);
  static SquareMatrix diagonal(std::span<const double> values);

  std::size_t dim() const { return dim_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  std::span<const double> data() const { return data_; }

  SquareMatrix transposed() const;
  double max_abs() const;

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

struct EigenDecomposition {
  // Rows are the unit eigenvectors v_1..v_n, so Sigma = Q^T diag(a^2) Q.
  SquareMatrix rotation;
  // Square roots of the eigenvalues, sorted descending.
  std::vector<double> semi_axes;

  SquareMatrix reconstruct() const;
};

// Symmetric positive definite matrix. Construction validates symmetry and
// numerical positive definiteness (smallest eigenvalue above 1e-12 times the
// largest) and caches the eigendecomposition.
class SymPosDefMatrix {
 public:
  static constexpr double kConditionFloor = 1e-12;

  // Throws NotPositiveDefinite or DomainError (asymmetric, non-finite).
  explicit SymPosDefMatrix(SquareMatrix entries);
  SymPosDefMatrix(std::size_t dim, std::vector<double> row_major)
      : SymPosDefMatrix(SquareMatrix(dim, std::move(row_major))) {}

  std::size_t dim() const { return entries_.dim(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const SquareMatrix& entries() const { return entries_; }
  const EigenDecomposition& eigen() const { return eigen_; }

  double determinant() const;
  SquareMatrix inverse() const;
  // x^T Sigma^{-1} x.
  double inverse_quadratic_form(std::span<const double> x) const;
  // x^T Sigma x.
  double quadratic_form(std::span<const double> x) const;

 private:
  SquareMatrix entries_;
  EigenDecomposition eigen_;
};

/// Orthogonal diagonalization of a symmetric positive definite matrix.
EigenDecomposition sym_eigen(const SymPosDefMatrix& sigma);

/// Eigenvalues and eigenvectors of any symmetric matrix: closed form for 2x2,
/// cyclic Jacobi otherwise. Returns (eigenvalues descending, rows = vectors).
/// Ties keep the original axis order.
std::pair<std::vector<double>, SquareMatrix> symmetric_eigen(const SquareMatrix& m);

}  // namespace hailchi

#endif  // HAILCHI_LINALG_H_
