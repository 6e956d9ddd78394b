#pragma once

#include <optional>

#include "pinear/polar.hpp"

namespace pinear {

/// Slack applied toward "condition holds" when comparing against the
/// gamma = 1/2 and ||T|| - 1 = 1 - gamma boundaries.
inline constexpr double kBoundarySlack = 1e-12;

/// Default tolerance for the attained-vector minimizer criteria:
/// 1e-8 * max(1, ||T||).
double defaultCharacterizationTol(const ComplexMatrix& t);

/// max(1 - gamma(T), ||T|| - 1); 0 for T = 0.
double distToPolarFactor(const ComplexMatrix& t, Tol tol = {});

/// Sup-inf lower bound on ||T - S|| from the singular spectra of T and S.
///
/// First form:  sup_{l in sigma(|T|)} min(l, inf_{m in sigma(|S|)} |l - m|).
/// Second form: sup_{l in sigma(|T|)} inf_{m in sigma(|S|)} |l - m|, valid when
/// dim ker S >= dim ran(S)^perp (checked; PreconditionError otherwise).
double wuLowerBound(const ComplexMatrix& t, const ComplexMatrix& s, bool useSecondForm, Tol tol = {});

/// Distance from T to the set of all partial isometries:
/// max over singular values of min(sigma, |1 - sigma|).
double wuDistanceToIsometries(const ComplexMatrix& t);

/// phi(t) = 1 - indicator of the open interval (0, 1/2); values within
/// `tieTol` of 1/2 count as 1/2.
double wuCutoff(double sigma, double tieTol);

/// X0 = V * phi(|T|). Throws UndefinedGammaError for T = 0.
PartialIsometry wuMinimizer(const ComplexMatrix& t, Tol tol = {});

/// ||T|| - 1 >= 1 - gamma(T)  or  gamma(T) >= 1/2. Throws UndefinedGammaError for T = 0.
bool isPolarFactorGlobalBest(const ComplexMatrix& t, Tol tol = {});

struct ConditionResult {
  bool holds = false;
  std::optional<ComplexVector> witness;  // unit vector in ran(X0* X0)
  double residual = 0.0;                 // smallest singular value of the tested system
};

/// Exists unit xi in ran(X0*X0) with (T - X0) xi = ||T - X0|| X0 xi.
/// Throws PreconditionError when j(V*V, X0*X0) > 0.
ConditionResult checkMinimizerConditionI(const ComplexMatrix& t, const PartialIsometry& x0,
                                         std::optional<double> tol = {});

/// Exists unit xi in ran(X0*X0) with ((T - X0) + ||T - X0|| X0) xi = 0 and
/// (T - gamma(T) X0) xi = 0.
/// Throws PreconditionError when j(V*V, X0*X0) > 0, UndefinedGammaError for T = 0.
ConditionResult checkMinimizerConditionII(const ComplexMatrix& t, const PartialIsometry& x0,
                                          std::optional<double> tol = {});

struct MinimizerVerdict {
  ConditionResult conditionI;
  ConditionResult conditionII;
  bool byConditions = false;  // conditionI || conditionII
  bool byDistance = false;    // | ||T - X0|| - ||T - V|| | <= tol
  double distanceGap = 0.0;   // ||T - X0|| - ||T - V||
};

/// Both routes of the constrained-minimizer test.
MinimizerVerdict classifyMinimizer(const ComplexMatrix& t, const PartialIsometry& x0,
                                   std::optional<double> tol = {});

/// Whether X0 attains min{ ||T - X|| : j(V*V, X*X) <= 0 }, decided by the
/// attained-vector conditions.
bool isConstrainedMinimizer(const ComplexMatrix& t, const PartialIsometry& x0,
                            std::optional<double> tol = {});

/// ||X0 + D|| = ||X0|| + ||D||, tested as hermEigMax(X0* D) >= ||X0|| ||D|| - 1e-9.
/// Throws PreconditionError when X0 = 0.
bool triangleEqualityWithIsometry(const PartialIsometry& x0, const ComplexMatrix& d);

struct NearnessReport {
  ComplexMatrix input;
  PolarData polar;
  double distFormula = 0.0;  // max(1 - gamma, ||T|| - 1)
  double wuDistance = 0.0;
  bool polarIsGlobalBest = true;
  std::optional<PartialIsometry> wuMinimizer;  // absent only for T = 0
  double wuMinimizerDistance = 0.0;            // ||T - wuMinimizer||
  // Conditions and triangle equality are evaluated for X0 = V.
  ConditionResult conditionI;
  ConditionResult conditionII;
  bool triangleEquality = false;
  double characterizationTol = 0.0;
};

/// Marker recorded in reports: the sequence conditions of the minimizer
/// characterization are evaluated as attained-vector conditions.
inline constexpr const char* kCriterionLabel = "finite-dim criterion";

NearnessReport analyze(const ComplexMatrix& t, Tol tol = {});

}  // namespace pinear
