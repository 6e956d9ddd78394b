#include "pinear/nearness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pinear {

namespace {

void requireSameDim(const ComplexMatrix& t, const ComplexMatrix& x) {
  if (t.rows() != x.rows()) {
    throw InputError("operator and partial isometry have different dimensions");
  }
}

void requireFeasible(const ComplexMatrix& t, const PartialIsometry& x0) {
  const PolarData polar = polarDecompose(t);
  const ProjectionPair pair =
      indexJ(polar.factor.initialProjection(), x0.initialProjection());
  if (pair.j > 0) {
    throw PreconditionError("j(V*V, X0*X0) = " + std::to_string(pair.j) +
                            " > 0; X0 lies outside the constrained set");
  }
}

// Smallest singular value of `system` (m x k, m >= k) and its right singular vector.
ConditionResult smallestDirection(const ComplexMatrix& system, const ComplexMatrix& basis,
                                  double tol) {
  ConditionResult out;
  const auto k = system.cols();
  if (k == 0) {
    out.residual = std::numeric_limits<double>::infinity();
    return out;
  }
  Eigen::JacobiSVD<ComplexMatrix> solver(system, Eigen::ComputeFullV);
  out.residual = solver.singularValues()(k - 1);
  out.holds = out.residual <= tol;
  if (out.holds) {
    ComplexVector xi = basis * solver.matrixV().col(k - 1);
    out.witness = xi.normalized();
  }
  return out;
}

}  // namespace

double defaultCharacterizationTol(const ComplexMatrix& t) {
  return 1e-8 * std::max(1.0, opNorm(t));
}

double distToPolarFactor(const ComplexMatrix& t, Tol tol) {
  const SvdFactors f = svd(t, tol);
  const int r = f.rank();
  if (r == 0) return 0.0;
  const double gamma = f.singulars(r - 1);
  return std::max(1.0 - gamma, f.singulars(0) - 1.0);
}

double wuLowerBound(const ComplexMatrix& t, const ComplexMatrix& s, bool useSecondForm, Tol tol) {
  requireOperator(t, "T");
  requireOperator(s, "S");
  requireSameDim(t, s);
  if (useSecondForm) {
    const int kerS = kernelBasis(s, tol).dim();
    const int ranSPerp = kernelBasis(s.adjoint(), tol).dim();
    if (kerS < ranSPerp) {
      throw PreconditionError("second form requires dim ker S >= dim ran(S)^perp");
    }
  }
  const RealVector st = singularValues(t);
  const RealVector ss = singularValues(s);
  double bound = 0.0;
  for (const double lambda : st) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const double mu : ss) nearest = std::min(nearest, std::abs(lambda - mu));
    bound = std::max(bound, useSecondForm ? nearest : std::min(lambda, nearest));
  }
  return bound;
}

double wuDistanceToIsometries(const ComplexMatrix& t) {
  requireOperator(t);
  double best = 0.0;
  for (const double sigma : singularValues(t)) {
    best = std::max(best, std::min(sigma, std::abs(1.0 - sigma)));
  }
  return best;
}

double wuCutoff(double sigma, double tieTol) {
  return (sigma > 0.0 && sigma < 0.5 - tieTol) ? 0.0 : 1.0;
}

PartialIsometry wuMinimizer(const ComplexMatrix& t, Tol tol) {
  requireOperator(t);
  const double rankTol = tol ? *tol : defaultTol(t);
  if (svd(t, rankTol).rank() == 0) throw UndefinedGammaError();
  const ComplexMatrix x0 =
      applyToModulus(t, [rankTol](double sigma) { return wuCutoff(sigma, rankTol); }, rankTol);
  return PartialIsometry::validate(x0, tol);
}

bool isPolarFactorGlobalBest(const ComplexMatrix& t, Tol tol) {
  const SvdFactors f = svd(t, tol);
  const int r = f.rank();
  if (r == 0) throw UndefinedGammaError();
  const double gamma = f.singulars(r - 1);
  const double norm = f.singulars(0);
  return norm - 1.0 >= 1.0 - gamma - kBoundarySlack || gamma >= 0.5 - kBoundarySlack;
}

ConditionResult checkMinimizerConditionI(const ComplexMatrix& t, const PartialIsometry& x0,
                                         std::optional<double> tol) {
  requireOperator(t, "T");
  requireSameDim(t, x0.matrix());
  requireFeasible(t, x0);
  const double tau = tol ? *tol : defaultCharacterizationTol(t);

  const ComplexMatrix& x = x0.matrix();
  const ComplexMatrix diff = t - x;
  const double c = opNorm(diff);
  const ComplexMatrix basis = rangeBasis(x0.initialProjection()).basis();
  return smallestDirection((diff - c * x) * basis, basis, tau);
}

ConditionResult checkMinimizerConditionII(const ComplexMatrix& t, const PartialIsometry& x0,
                                          std::optional<double> tol) {
  requireOperator(t, "T");
  requireSameDim(t, x0.matrix());
  requireFeasible(t, x0);
  const double gamma = reducedMinModulus(t);
  const double tau = tol ? *tol : defaultCharacterizationTol(t);

  const ComplexMatrix& x = x0.matrix();
  const ComplexMatrix diff = t - x;
  const double c = opNorm(diff);
  const ComplexMatrix basis = rangeBasis(x0.initialProjection()).basis();
  const auto n = t.rows();
  ComplexMatrix stacked(2 * n, basis.cols());
  stacked << (diff + c * x) * basis, (t - gamma * x) * basis;
  return smallestDirection(stacked, basis, tau);
}

MinimizerVerdict classifyMinimizer(const ComplexMatrix& t, const PartialIsometry& x0,
                                   std::optional<double> tol) {
  const double tau = tol ? *tol : defaultCharacterizationTol(t);
  MinimizerVerdict out;
  out.conditionI = checkMinimizerConditionI(t, x0, tau);
  if (polarDecompose(t).gamma) {
    out.conditionII = checkMinimizerConditionII(t, x0, tau);
  } else {
    out.conditionII.residual = std::numeric_limits<double>::infinity();
  }
  out.byConditions = out.conditionI.holds || out.conditionII.holds;
  out.distanceGap = opNorm(t - x0.matrix()) - polarDecompose(t).distToPolar;
  out.byDistance = std::abs(out.distanceGap) <= tau;
  return out;
}

bool isConstrainedMinimizer(const ComplexMatrix& t, const PartialIsometry& x0,
                            std::optional<double> tol) {
  const double tau = tol ? *tol : defaultCharacterizationTol(t);
  if (checkMinimizerConditionI(t, x0, tau).holds) return true;
  // T = 0 only admits condition (i); gamma is undefined there.
  if (!polarDecompose(t).gamma) return false;
  return checkMinimizerConditionII(t, x0, tau).holds;
}

bool triangleEqualityWithIsometry(const PartialIsometry& x0, const ComplexMatrix& d) {
  if (x0.rank() == 0) throw PreconditionError("triangle equality test needs X0 != 0");
  requireOperator(d, "D");
  requireSameDim(x0.matrix(), d);
  return hermEigMax(x0.matrix().adjoint() * d) >= x0.norm() * opNorm(d) - 1e-9;
}

NearnessReport analyze(const ComplexMatrix& t, Tol tol) {
  requireOperator(t);
  NearnessReport out{.input = t, .polar = polarDecompose(t, tol)};
  out.distFormula = distToPolarFactor(t, tol);
  out.wuDistance = wuDistanceToIsometries(t);
  out.characterizationTol = defaultCharacterizationTol(t);

  if (!out.polar.gamma) {
    // T = 0: V = 0 is at distance 0, which no partial isometry beats.
    out.polarIsGlobalBest = true;
    out.conditionI.residual = std::numeric_limits<double>::infinity();
    out.conditionII.residual = std::numeric_limits<double>::infinity();
    return out;
  }

  out.polarIsGlobalBest = isPolarFactorGlobalBest(t, tol);
  out.wuMinimizer = wuMinimizer(t, tol);
  out.wuMinimizerDistance = opNorm(t - out.wuMinimizer->matrix());
  const PartialIsometry& v = out.polar.factor;
  out.conditionI = checkMinimizerConditionI(t, v, out.characterizationTol);
  out.conditionII = checkMinimizerConditionII(t, v, out.characterizationTol);
  out.triangleEquality = triangleEqualityWithIsometry(v, t - v.matrix());
  return out;
}

}  // namespace pinear
