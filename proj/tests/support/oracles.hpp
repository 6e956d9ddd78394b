#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the code path it is used to check.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "pinear/oracle.hpp"

namespace pinear::testing {

inline ComplexMatrix diag(std::initializer_list<double> values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  Eigen::Index i = 0;
  for (const double v : values) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

inline ComplexMatrix fromRows(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix m(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

/// The twisted 3x3 partial isometry 1 (+) [[0,-1],[-1,0]].
inline ComplexMatrix twistedBlock() {
  return fromRows({{1, 0, 0}, {0, 0, -1}, {0, -1, 0}});
}

/// Cosines of the principal angles between span(b1) and span(b2)
/// (orthonormal columns), descending.
inline Eigen::VectorXd principalAngleCosines(const ComplexMatrix& b1, const ComplexMatrix& b2) {
  if (b1.cols() == 0 || b2.cols() == 0) return {};
  const ComplexMatrix cross = b1.adjoint() * b2;
  return Eigen::JacobiSVD<ComplexMatrix>(cross).singularValues();
}

/// Intersection dimension as the number of zero principal angles.
inline int intersectionDimByAngles(const ComplexMatrix& b1, const ComplexMatrix& b2,
                                   double angleTol = 1e-7) {
  const Eigen::VectorXd c = principalAngleCosines(b1, b2);
  int count = 0;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double angle = std::acos(std::min(1.0, c(i)));
    if (angle <= angleTol) ++count;
  }
  return count;
}

inline ComplexVector randomUnit(int n, RngStream& rng) {
  ComplexVector v = rng.complexGaussian(n, 1);
  return v / v.norm();
}

/// max ||A xi|| over `samples` random unit vectors; a lower bound on ||A||.
inline double sampledNormLowerBound(const ComplexMatrix& a, int samples, RngStream& rng) {
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    best = std::max(best, (a * randomUnit(static_cast<int>(a.cols()), rng)).norm());
  }
  return best;
}

/// Largest singular value through power iteration on A*A.
inline double powerIterationNorm(const ComplexMatrix& a, RngStream& rng, int iterations = 500) {
  ComplexVector v = randomUnit(static_cast<int>(a.cols()), rng);
  const ComplexMatrix gram = a.adjoint() * a;
  for (int i = 0; i < iterations; ++i) {
    ComplexVector next = gram * v;
    const double nrm = next.norm();
    if (nrm == 0.0) return 0.0;
    v = next / nrm;
  }
  return (a * v).norm();
}

/// Brute-force sup over `lambdas` of inf over `mus`, in either form.
inline double supInf(const std::vector<double>& lambdas, const std::vector<double>& mus,
                     bool secondForm) {
  double sup = 0.0;
  for (const double l : lambdas) {
    double inf = std::numeric_limits<double>::infinity();
    for (const double m : mus) {
      inf = std::min(inf, secondForm ? std::abs(l - m) : std::min(l, std::abs(l - m)));
    }
    sup = std::max(sup, inf);
  }
  return sup;
}

/// Orthogonal projection onto a random k-dimensional subspace of C^n.
inline ComplexMatrix randomProjection(int n, int k, RngStream& rng) {
  const ComplexMatrix b = randomFrame(n, k, rng);
  return b * b.adjoint();
}

}  // namespace pinear::testing
