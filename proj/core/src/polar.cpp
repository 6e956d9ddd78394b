#include "pinear/polar.hpp"

#include <cmath>
#include <utility>

namespace pinear {

PartialIsometry::PartialIsometry(ComplexMatrix x, int rank, double residual)
    : x_(std::move(x)), rank_(rank), residual_(residual) {
  initial_ = x_.adjoint() * x_;
  final_ = x_ * x_.adjoint();
}

PartialIsometry PartialIsometry::validate(const ComplexMatrix& x, Tol tol) {
  requireOperator(x, "partial isometry candidate");
  const double threshold = 10.0 * (tol ? *tol : defaultTol(x));
  const double residual = opNorm(x * x.adjoint() * x - x);
  if (!(residual <= threshold)) {
    throw NotPartialIsometryError(residual, threshold);
  }
  return {x, rankTol(x, tol), residual};
}

PartialIsometry PartialIsometry::zero(int n) {
  if (n <= 0) throw InputError("dimension must be positive");
  return {ComplexMatrix::Zero(n, n), 0, 0.0};
}

PartialIsometry PartialIsometry::adjoint() const { return {x_.adjoint(), rank_, residual_}; }

PolarData polarDecompose(const ComplexMatrix& t, Tol tol) {
  const SvdFactors f = svd(t, tol);
  const int n = static_cast<int>(t.rows());
  const int r = f.rank();

  const ComplexMatrix w = f.right();
  ComplexMatrix v = f.left.leftCols(r) * w.leftCols(r).adjoint();
  ComplexMatrix modulus = w * f.singulars.cast<Scalar>().asDiagonal() * f.rightH;
  // |T| is Hermitian; remove rounding asymmetry.
  modulus = ((modulus + modulus.adjoint()) / 2.0).eval();

  const double residual = r > 0 ? opNorm(v * v.adjoint() * v - v) : 0.0;
  PolarData out{PartialIsometry::zero(n), std::move(modulus), std::nullopt, 0.0, 0.0, f.tol};
  if (r > 0) {
    out.factor = PartialIsometry(std::move(v), r, residual);
    out.gamma = f.singulars(r - 1);
  }
  out.norm = f.singulars(0);
  out.distToPolar = opNorm(t - out.factor.matrix());
  return out;
}

double reducedMinModulus(const ComplexMatrix& t, Tol tol) {
  const SvdFactors f = svd(t, tol);
  const int r = f.rank();
  if (r == 0) throw UndefinedGammaError();
  return f.singulars(r - 1);
}

ComplexMatrix applyToModulus(const ComplexMatrix& t, const SpectralFunction& phi, Tol tol) {
  const SvdFactors f = svd(t, tol);
  const int n = static_cast<int>(t.rows());
  const int r = f.rank();

  RealVector values(n);
  for (int i = 0; i < n; ++i) {
    const double sigma = i < r ? f.singulars(i) : 0.0;
    const double value = phi(sigma);
    if (!std::isfinite(value)) {
      throw PreconditionError("spectral function is undefined at singular value " +
                              std::to_string(sigma));
    }
    values(i) = value;
  }

  const ComplexMatrix w = f.right();
  const ComplexMatrix v = f.left.leftCols(r) * w.leftCols(r).adjoint();
  const ComplexMatrix phiOfModulus = w * values.cast<Scalar>().asDiagonal() * f.rightH;
  return v * phiOfModulus;
}

void requireProjection(const ComplexMatrix& p, const char* what) {
  requireOperator(p, what);
  const double asym = opNorm(p - p.adjoint());
  const double idem = opNorm(p * p - p);
  if (asym > kProjectionTol || idem > kProjectionTol) {
    throw PreconditionError(std::string(what) + " is not an orthogonal projection (||P-P*|| = " +
                            std::to_string(asym) + ", ||P^2-P|| = " + std::to_string(idem) + ")");
  }
}

ProjectionPair indexJ(const ComplexMatrix& p, const ComplexMatrix& q, Tol tol) {
  requireProjection(p, "P");
  requireProjection(q, "Q");
  if (p.rows() != q.rows()) throw InputError("projections have different dimensions");

  ProjectionPair out;
  out.p = (p + p.adjoint()) / 2.0;
  out.q = (q + q.adjoint()) / 2.0;

  const Subspace ranP = rangeBasis(out.p, tol);
  const Subspace kerP = kernelBasis(out.p, tol);
  const Subspace ranQ = rangeBasis(out.q, tol);
  const Subspace kerQ = kernelBasis(out.q, tol);

  out.dimPintoKerQ = subspaceIntersectionDim(ranP, kerQ, tol);
  out.dimKerPintoQ = subspaceIntersectionDim(kerP, ranQ, tol);
  out.j = out.dimPintoKerQ - out.dimKerPintoQ;
  out.rankP = rankTol(out.p, tol);
  out.rankQ = rankTol(out.q, tol);
  return out;
}

}  // namespace pinear
