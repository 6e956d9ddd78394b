#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pinear {

using Scalar = std::complex<double>;

// Operators act on C^n; every ComplexMatrix handed to the public API must be
// square with finite entries (see requireOperator).
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Optional rank tolerance. An empty value selects the default n*eps*sigma_max
// (floored at 1e-12) computed from the matrix at hand.
using Tol = std::optional<double>;

/// Malformed or out-of-contract input (non-square, non-finite, bad sizes).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A stated precondition of an operation does not hold for the given data.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// gamma(T) is requested for a numerically zero operator.
class UndefinedGammaError : public PreconditionError {
 public:
  UndefinedGammaError()
      : PreconditionError("reduced minimum modulus is undefined for the zero operator") {}
};

/// ||X X* X - X|| exceeds the validation threshold.
class NotPartialIsometryError : public std::domain_error {
 public:
  NotPartialIsometryError(double residual, double threshold)
      : std::domain_error("not a partial isometry: ||XX*X - X|| = " + std::to_string(residual) +
                          " exceeds " + std::to_string(threshold)),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Throws InputError unless `a` is a non-empty square matrix with finite entries.
void requireOperator(const ComplexMatrix& a, const char* what = "matrix");

}  // namespace pinear
