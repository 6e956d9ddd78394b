#pragma once

#include "pinear/types.hpp"

namespace pinear {

/// Relative tolerance scale used by the default rank threshold.
inline constexpr double kMachineEps = 0x1p-52;
/// Lower bound on the default rank threshold.
inline constexpr double kTolFloor = 1e-12;

/// Singular value decomposition A = left * diag(singulars) * rightH.
struct SvdFactors {
  ComplexMatrix left;    // U, unitary
  RealVector singulars;  // descending, nonnegative
  ComplexMatrix rightH;  // W*, unitary
  double tol = kTolFloor;

  /// Number of singular values strictly above tol.
  int rank() const;
  ComplexMatrix right() const { return rightH.adjoint(); }
  ComplexMatrix reconstruct() const;
};

/// Orthonormal basis (columns) of a subspace of C^n. The basis may be empty.
class Subspace {
 public:
  /// Throws InputError when the columns are not orthonormal within 1e-12.
  Subspace(int ambient, ComplexMatrix basis);

  static Subspace zero(int ambient);
  static Subspace whole(int ambient);

  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const ComplexMatrix& basis() const { return basis_; }
  /// Orthogonal projection onto the subspace.
  ComplexMatrix projector() const { return basis_ * basis_.adjoint(); }

 private:
  int ambient_;
  ComplexMatrix basis_;
};

/// n * eps * sigma_max, floored at kTolFloor.
double defaultTol(int n, double sigmaMax);
double defaultTol(const ComplexMatrix& a);

SvdFactors svd(const ComplexMatrix& a, Tol tol = {});

/// Singular values only, descending.
RealVector singularValues(const ComplexMatrix& a);

/// Spectral norm (largest singular value).
double opNorm(const ComplexMatrix& a);

int rankTol(const ComplexMatrix& a, Tol tol = {});

/// Left singular vectors with sigma > tol.
Subspace rangeBasis(const ComplexMatrix& a, Tol tol = {});
/// Right singular vectors with sigma <= tol.
Subspace kernelBasis(const ComplexMatrix& a, Tol tol = {});

/// dim(S1 ∩ S2) = k1 + k2 - rank([B1 B2]).
int subspaceIntersectionDim(const Subspace& s1, const Subspace& s2, Tol tol = {});

/// Largest eigenvalue of the Hermitian part (A + A*)/2.
double hermEigMax(const ComplexMatrix& a);

/// Max |a_ij - b_ij|.
double maxAbsDiff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace pinear
