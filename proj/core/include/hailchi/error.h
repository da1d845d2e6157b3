#ifndef HAILCHI_ERROR_H_
#define HAILCHI_ERROR_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace hailchi {

// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed input data (CSV, JSON, configuration).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical procedure failed to produce a trustworthy answer.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPositiveDefinite : public NumericError {
 public:
  using NumericError::NumericError;
};

// Weighted covariance of a storm is singular or too badly conditioned.
class DegenerateCovariance : public NotPositiveDefinite {
 public:
  using NotPositiveDefinite::NotPositiveDefinite;
};

class QuadratureError : public NumericError {
 public:
  QuadratureError(const std::string& what, double estimate, double error)
      : NumericError(what), estimate_(estimate), error_(error) {}
  double estimate() const { return estimate_; }
  double error_estimate() const { return error_; }

 private:
  double estimate_;
  double error_;
};

// Optimizer hit its iteration budget. Carries the best parameters seen.
class ConvergenceError : public NumericError {
 public:
  ConvergenceError(const std::string& what, std::vector<double> best,
                   double best_value)
      : NumericError(what), best_(std::move(best)), best_value_(best_value) {}
  const std::vector<double>& best_parameters() const { return best_; }
  double best_value() const { return best_value_; }

 private:
  std::vector<double> best_;
  double best_value_;
};

}  // namespace hailchi

#endif  // HAILCHI_ERROR_H_
