#include "pinear/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace pinear {

void requireOperator(const ComplexMatrix& a, const char* what) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw InputError(std::string(what) + " is empty");
  }
  if (a.rows() != a.cols()) {
    throw InputError(std::string(what) + " is not square (" + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + ")");
  }
  if (!a.allFinite()) {
    throw InputError(std::string(what) + " has non-finite entries");
  }
}

namespace {

double resolveTol(Tol tol, int n, double sigmaMax) {
  if (!tol) return defaultTol(n, sigmaMax);
  if (!(*tol > 0.0) || !std::isfinite(*tol)) {
    throw InputError("tolerance must be a positive finite number");
  }
  return *tol;
}

int countAbove(const RealVector& s, double tol) {
  return static_cast<int>((s.array() > tol).count());
}

}  // namespace

int SvdFactors::rank() const { return countAbove(singulars, tol); }

ComplexMatrix SvdFactors::reconstruct() const {
  return left * singulars.cast<Scalar>().asDiagonal() * rightH;
}

Subspace::Subspace(int ambient, ComplexMatrix basis) : ambient_(ambient), basis_(std::move(basis)) {
  if (ambient < 0 || basis_.rows() != ambient || basis_.cols() > ambient) {
    throw InputError("subspace basis has incompatible shape");
  }
  if (basis_.cols() > 0) {
    const ComplexMatrix gram = basis_.adjoint() * basis_;
    const ComplexMatrix eye = ComplexMatrix::Identity(gram.rows(), gram.cols());
    if (maxAbsDiff(gram, eye) > 1e-12) {
      throw InputError("subspace basis is not orthonormal");
    }
  }
}

Subspace Subspace::zero(int ambient) { return {ambient, ComplexMatrix(ambient, 0)}; }

Subspace Subspace::whole(int ambient) {
  return {ambient, ComplexMatrix::Identity(ambient, ambient)};
}

double defaultTol(int n, double sigmaMax) {
  return std::max(kTolFloor, static_cast<double>(n) * kMachineEps * sigmaMax);
}

double defaultTol(const ComplexMatrix& a) {
  return defaultTol(static_cast<int>(std::max(a.rows(), a.cols())), opNorm(a));
}

SvdFactors svd(const ComplexMatrix& a, Tol tol) {
  requireOperator(a);
  Eigen::JacobiSVD<ComplexMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdFactors out;
  out.left = solver.matrixU();
  out.singulars = solver.singularValues();
  out.rightH = solver.matrixV().adjoint();
  const double smax = out.singulars.size() > 0 ? out.singulars(0) : 0.0;
  out.tol = resolveTol(tol, static_cast<int>(a.rows()), smax);
  return out;
}

RealVector singularValues(const ComplexMatrix& a) {
  if (a.size() == 0) return {};
  return Eigen::JacobiSVD<ComplexMatrix>(a).singularValues();
}

double opNorm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return singularValues(a)(0);
}

int rankTol(const ComplexMatrix& a, Tol tol) {
  if (a.size() == 0) return 0;
  const RealVector s = singularValues(a);
  return countAbove(s, resolveTol(tol, static_cast<int>(std::max(a.rows(), a.cols())), s(0)));
}

Subspace rangeBasis(const ComplexMatrix& a, Tol tol) {
  const SvdFactors f = svd(a, tol);
  const int n = static_cast<int>(a.rows());
  return {n, f.left.leftCols(f.rank())};
}

Subspace kernelBasis(const ComplexMatrix& a, Tol tol) {
  const SvdFactors f = svd(a, tol);
  const int n = static_cast<int>(a.rows());
  const int r = f.rank();
  return {n, f.right().rightCols(n - r)};
}

int subspaceIntersectionDim(const Subspace& s1, const Subspace& s2, Tol tol) {
  if (s1.ambient() != s2.ambient()) {
    throw InputError("subspaces live in different ambient spaces");
  }
  const int k1 = s1.dim();
  const int k2 = s2.dim();
  if (k1 == 0 || k2 == 0) return 0;
  ComplexMatrix stacked(s1.ambient(), k1 + k2);
  stacked << s1.basis(), s2.basis();
  return k1 + k2 - rankTol(stacked, tol);
}

double hermEigMax(const ComplexMatrix& a) {
  requireOperator(a);
  const ComplexMatrix h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

double maxAbsDiff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace pinear
