#pragma once

#include <functional>

#include "pinear/linalg.hpp"

namespace pinear {

/// Threshold on ||P^2 - P|| and ||P - P*|| for accepting an orthogonal projection.
inline constexpr double kProjectionTol = 1e-10;

/// A validated partial isometry X (XX*X = X) with its initial projection X*X
/// and final projection XX*.
class PartialIsometry {
 public:
  /// Validates X; throws NotPartialIsometryError when ||XX*X - X|| > 10 * tol.
  static PartialIsometry validate(const ComplexMatrix& x, Tol tol = {});
  static PartialIsometry zero(int n);

  const ComplexMatrix& matrix() const { return x_; }
  const ComplexMatrix& initialProjection() const { return initial_; }
  const ComplexMatrix& finalProjection() const { return final_; }
  int rank() const { return rank_; }
  int dim() const { return static_cast<int>(x_.rows()); }
  /// Exactly 1 for a nonzero partial isometry, 0 otherwise.
  double norm() const { return rank_ > 0 ? 1.0 : 0.0; }
  /// ||XX*X - X|| measured at validation time.
  double residual() const { return residual_; }

  PartialIsometry adjoint() const;

 private:
  friend struct PolarData polarDecompose(const ComplexMatrix& t, Tol tol);
  PartialIsometry(ComplexMatrix x, int rank, double residual);

  ComplexMatrix x_;
  ComplexMatrix initial_;
  ComplexMatrix final_;
  int rank_ = 0;
  double residual_ = 0.0;
};

inline PartialIsometry validatePartialIsometry(const ComplexMatrix& x, Tol tol = {}) {
  return PartialIsometry::validate(x, tol);
}

/// T = V|T| with ker V = ker T.
struct PolarData {
  PartialIsometry factor;  // V
  ComplexMatrix modulus;   // |T| = (T*T)^{1/2}
  std::optional<double> gamma;  // reduced minimum modulus; empty when T = 0
  double norm = 0.0;            // ||T||
  double distToPolar = 0.0;     // ||T - V|| measured directly
  double tol = kTolFloor;       // rank threshold used for the split
};

PolarData polarDecompose(const ComplexMatrix& t, Tol tol = {});

/// Smallest singular value above tol. Throws UndefinedGammaError for T = 0.
double reducedMinModulus(const ComplexMatrix& t, Tol tol = {});

using SpectralFunction = std::function<double(double)>;

/// V * phi(|T|). Singular values at or below tol enter phi as 0.
/// Throws PreconditionError when phi yields a non-finite value.
ComplexMatrix applyToModulus(const ComplexMatrix& t, const SpectralFunction& phi, Tol tol = {});

/// A pair of orthogonal projections with the index
/// j(P,Q) = dim(ran P ∩ ker Q) - dim(ker P ∩ ran Q).
struct ProjectionPair {
  ComplexMatrix p;
  ComplexMatrix q;
  int dimPintoKerQ = 0;
  int dimKerPintoQ = 0;
  int j = 0;
  int rankP = 0;
  int rankQ = 0;

  /// Whether the intersection route agrees with rank(P) - rank(Q).
  bool consistent() const { return j == rankP - rankQ; }
};

/// Throws PreconditionError unless `p` is Hermitian and idempotent within kProjectionTol.
void requireProjection(const ComplexMatrix& p, const char* what = "projection");

ProjectionPair indexJ(const ComplexMatrix& p, const ComplexMatrix& q, Tol tol = {});

}  // namespace pinear
