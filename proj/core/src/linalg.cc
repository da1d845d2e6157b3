#include "hailchi/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hailchi/error.h"

namespace hailchi {
namespace {

constexpr double kJacobiTolerance = 1e-14;
constexpr int kMaxSweeps = 100;

// Flip each row so its largest-magnitude component is positive (first one
// wins on ties). Makes the decomposition reproducible.
void canonicalize_signs(SquareMatrix& rows) {
  const std::size_t n = rows.dim();
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t pivot = 0;
    for (std::size_t c = 1; c < n; ++c) {
      if (std::fabs(rows(r, c)) > std::fabs(rows(r, pivot))) pivot = c;
    }
    if (rows(r, pivot) < 0.0) {
      for (std::size_t c = 0; c < n; ++c) rows(r, c) = -rows(r, c);
    }
  }
}

// Sort (value, row) pairs descending by value, stable in the original axis
// order, and emit them in that order.
std::pair<std::vector<double>, SquareMatrix> sorted_descending(
    const std::vector<double>& values, const SquareMatrix& rows) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  std::vector<double> out_values(n);
  SquareMatrix out_rows(n);
  for (std::size_t k = 0; k < n; ++k) {
    out_values[k] = values[order[k]];
    for (std::size_t c = 0; c < n; ++c) out_rows(k, c) = rows(order[k], c);
  }
  canonicalize_signs(out_rows);
  return {std::move(out_values), std::move(out_rows)};
}

std::pair<std::vector<double>, SquareMatrix> eigen_2x2(const SquareMatrix& m) {
  const double a = m(0, 0);
  const double b = m(0, 1);
  const double c = m(1, 1);
  if (b == 0.0) {
    return sorted_descending({a, c}, SquareMatrix::identity(2));
  }
  const double mean = 0.5 * (a + c);
  const double radius = std::hypot(0.5 * (a - c), b);
  const double upper = mean + radius;
  // Product form keeps the small eigenvalue accurate when |upper| >> |lower|.
  const double lower = upper != 0.0 ? (a * c - b * b) / upper : mean - radius;

  // Two algebraically equivalent eigenvectors for `upper`; use the longer.
  double x1 = b, y1 = upper - a;
  const double x2 = upper - c, y2 = b;
  if (std::hypot(x2, y2) > std::hypot(x1, y1)) {
    x1 = x2;
    y1 = y2;
  }
  const double norm = std::hypot(x1, y1);
  x1 /= norm;
  y1 /= norm;
  SquareMatrix rows(2, {x1, y1, -y1, x1});
  return sorted_descending({upper, lower}, rows);
}

std::pair<std::vector<double>, SquareMatrix> eigen_jacobi(SquareMatrix a) {
  const std::size_t n = a.dim();
  SquareMatrix v = SquareMatrix::identity(n);  // columns accumulate eigenvectors

  double total = 0.0;
  for (double x : a.data()) total += x * x;
  const double threshold = kJacobiTolerance * std::sqrt(total);

  auto off_diagonal_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; sweep < kMaxSweeps && off_diagonal_norm() > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (off_diagonal_norm() > threshold) {
    throw NumericError("symmetric_eigen: Jacobi iteration did not converge");
  }
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);
  return sorted_descending(values, v.transposed());
}

}  // namespace

SquareMatrix::SquareMatrix(std::size_t dim, std::vector<double> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  if (data_.size() != dim * dim) {
    throw DomainError("SquareMatrix: entry count does not match dimension");
  }
}

SquareMatrix SquareMatrix::identity(std::size_t dim) {
  SquareMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

SquareMatrix SquareMatrix::diagonal(std::span<const double> values) {
  SquareMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

SquareMatrix SquareMatrix::transposed() const {
  SquareMatrix t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double SquareMatrix::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::fabs(x));
  return m;
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.dim() != b.dim()) throw DomainError("SquareMatrix: dimension mismatch");
  const std::size_t n = a.dim();
  SquareMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

SquareMatrix EigenDecomposition::reconstruct() const {
  std::vector<double> squares(semi_axes.size());
  std::transform(semi_axes.begin(), semi_axes.end(), squares.begin(),
                 [](double s) { return s * s; });
  return rotation.transposed() * SquareMatrix::diagonal(squares) * rotation;
}

std::pair<std::vector<double>, SquareMatrix> symmetric_eigen(const SquareMatrix& m) {
  if (m.dim() == 0) throw DomainError("symmetric_eigen: empty matrix");
  if (m.dim() == 1) return {{m(0, 0)}, SquareMatrix::identity(1)};
  if (m.dim() == 2) return eigen_2x2(m);
  return eigen_jacobi(m);
}

SymPosDefMatrix::SymPosDefMatrix(SquareMatrix entries) : entries_(std::move(entries)) {
  const std::size_t n = entries_.dim();
  if (n == 0) throw DomainError("SymPosDefMatrix: dimension must be positive");
  for (double x : entries_.data()) {
    if (!std::isfinite(x)) throw DomainError("SymPosDefMatrix: non-finite entry");
  }
  const double scale = entries_.max_abs();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::fabs(entries_(i, j) - entries_(j, i)) > 1e-12 * scale) {
        throw DomainError("SymPosDefMatrix: matrix is not symmetric");
      }
      const double mean = 0.5 * (entries_(i, j) + entries_(j, i));
      entries_(i, j) = entries_(j, i) = mean;
    }
  }
  auto [values, rows] = symmetric_eigen(entries_);
  const double largest = values.front();
  const double smallest = values.back();
  if (!(largest > 0.0) || smallest <= kConditionFloor * largest) {
    throw NotPositiveDefinite("SymPosDefMatrix: matrix is not numerically positive definite");
  }
  eigen_.rotation = std::move(rows);
  eigen_.semi_axes.resize(n);
  std::transform(values.begin(), values.end(), eigen_.semi_axes.begin(),
                 [](double v) { return std::sqrt(v); });
}

double SymPosDefMatrix::determinant() const {
  if (dim() == 1) return entries_(0, 0);
  if (dim() == 2) {
    return entries_(0, 0) * entries_(1, 1) - entries_(0, 1) * entries_(1, 0);
  }
  double det = 1.0;
  for (double a : eigen_.semi_axes) det *= a * a;
  return det;
}

SquareMatrix SymPosDefMatrix::inverse() const {
  std::vector<double> inv(dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    inv[k] = 1.0 / (eigen_.semi_axes[k] * eigen_.semi_axes[k]);
  }
  return eigen_.rotation.transposed() * SquareMatrix::diagonal(inv) * eigen_.rotation;
}

double SymPosDefMatrix::inverse_quadratic_form(std::span<const double> x) const {
  if (x.size() != dim()) throw DomainError("inverse_quadratic_form: dimension mismatch");
  // With y = Q x, x^T Sigma^{-1} x = sum_k y_k^2 / a_k^2.
  double sum = 0.0;
  for (std::size_t k = 0; k < dim(); ++k) {
    double y = 0.0;
    for (std::size_t j = 0; j < dim(); ++j) y += eigen_.rotation(k, j) * x[j];
    const double scaled = y / eigen_.semi_axes[k];
    sum += scaled * scaled;
  }
  return sum;
}

double SymPosDefMatrix::quadratic_form(std::span<const double> x) const {
  if (x.size() != dim()) throw DomainError("quadratic_form: dimension mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) sum += x[i] * entries_(i, j) * x[j];
  return sum;
}

EigenDecomposition sym_eigen(const SymPosDefMatrix& sigma) { return sigma.eigen(); }

}  // namespace hailchi
