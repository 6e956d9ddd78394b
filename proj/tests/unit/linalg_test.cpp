#include <gtest/gtest.h>

#include "pinear/linalg.hpp"
#include "oracles.hpp"

using namespace pinear;
using pinear::testing::diag;
using pinear::testing::fromRows;

namespace {

bool isUnitary(const ComplexMatrix& u, double tol = 1e-12) {
  return maxAbsDiff(u.adjoint() * u, ComplexMatrix::Identity(u.cols(), u.cols())) <= tol;
}

}  // namespace

TEST(Svd, DiagonalNonnegative) {
  const SvdFactors f = svd(diag({4, 1, 1}));
  EXPECT_NEAR(f.singulars(0), 4.0, 1e-15);
  EXPECT_NEAR(f.singulars(1), 1.0, 1e-15);
  EXPECT_NEAR(f.singulars(2), 1.0, 1e-15);
  // U = W up to column phases: U* W is diagonal with unimodular entries.
  const ComplexMatrix cross = f.left.adjoint() * f.right();
  EXPECT_NEAR(std::abs(cross(0, 0)), 1.0, 1e-12);
  EXPECT_TRUE(isUnitary(f.left));
  EXPECT_TRUE(isUnitary(f.right()));
}

TEST(Svd, ZeroMatrix) {
  const SvdFactors f = svd(ComplexMatrix::Zero(2, 2));
  EXPECT_EQ(f.singulars(0), 0.0);
  EXPECT_EQ(f.singulars(1), 0.0);
  EXPECT_EQ(f.rank(), 0);
}

TEST(Svd, RankOneNilpotent) {
  const SvdFactors f = svd(fromRows({{0, 2}, {0, 0}}));
  EXPECT_NEAR(f.singulars(0), 2.0, 1e-15);
  EXPECT_NEAR(f.singulars(1), 0.0, 1e-15);
}

TEST(Svd, RejectsNonFiniteAndNonSquare) {
  ComplexMatrix bad = diag({1, 2});
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(svd(bad), InputError);
  EXPECT_THROW(svd(ComplexMatrix::Zero(2, 3)), InputError);
  EXPECT_THROW(svd(ComplexMatrix(0, 0)), InputError);
  EXPECT_THROW(svd(diag({1, 2}), -1.0), InputError);
}

TEST(Svd, PropertyReconstructionAndOrdering) {
  RngStream rng(7, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 8;
    const auto ensemble = static_cast<Ensemble>(trial % 4);
    const ComplexMatrix a = randomOperator(n, ensemble, rng);
    const SvdFactors f = svd(a);
    const double scale = std::max(1.0, f.singulars(0));
    EXPECT_LE(opNorm(f.reconstruct() - a), 10.0 * f.tol * scale) << "trial " << trial;
    EXPECT_TRUE(isUnitary(f.left));
    EXPECT_TRUE(isUnitary(f.rightH.adjoint()));
    for (int i = 0; i + 1 < n; ++i) EXPECT_GE(f.singulars(i), f.singulars(i + 1));
    EXPECT_GE(f.singulars.minCoeff(), 0.0);
  }
}

TEST(DefaultTol, FloorAndScaling) {
  EXPECT_EQ(defaultTol(3, 1.0), kTolFloor);
  EXPECT_DOUBLE_EQ(defaultTol(10, 1e6), 10 * kMachineEps * 1e6);
}

TEST(OpNorm, Examples) {
  EXPECT_DOUBLE_EQ(opNorm(diag({4, 1, 1})), 4.0);
  EXPECT_EQ(opNorm(ComplexMatrix::Zero(3, 3)), 0.0);
  const ComplexMatrix t = diag({4, 1, 1});
  EXPECT_NEAR(opNorm(t - pinear::testing::twistedBlock()), 3.0, 1e-14);
}

TEST(OpNorm, PropertySampledLowerBoundNeverExceeds) {
  RngStream rng(11, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix a = randomOperator(1 + trial % 6, Ensemble::gaussian, rng);
    const double norm = opNorm(a);
    const double sampled = pinear::testing::sampledNormLowerBound(a, 1000, rng);
    EXPECT_LE(sampled, norm + 1e-12);
    EXPECT_NEAR(pinear::testing::powerIterationNorm(a, rng, 2000), norm, 1e-6);
  }
}

TEST(RankTol, Examples) {
  EXPECT_EQ(rankTol(ComplexMatrix::Identity(3, 3), 1e-10), 3);
  EXPECT_EQ(rankTol(ComplexMatrix::Zero(3, 3)), 0);
  EXPECT_EQ(rankTol(diag({1, 1e-14}), 1e-10), 1);
}

TEST(Bases, Examples) {
  const Subspace k = kernelBasis(diag({1, 0}));
  ASSERT_EQ(k.dim(), 1);
  EXPECT_NEAR(std::abs(k.basis()(1, 0)), 1.0, 1e-15);

  const Subspace r = rangeBasis(fromRows({{0, 2}, {0, 0}}));
  ASSERT_EQ(r.dim(), 1);
  EXPECT_NEAR(std::abs(r.basis()(0, 0)), 1.0, 1e-15);

  RngStream rng(3, 0);
  EXPECT_EQ(rangeBasis(haarUnitary(4, rng)).dim(), 4);
}

TEST(Bases, PropertyRankNullity) {
  RngStream rng(5, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 7;
    const ComplexMatrix a = randomOperator(n, Ensemble::rankDeficient, rng);
    EXPECT_EQ(rankTol(a) + kernelBasis(a).dim(), n);
    EXPECT_EQ(rangeBasis(a).dim(), rankTol(a));
    EXPECT_LE(opNorm(a * kernelBasis(a).basis()), 1e-10);
  }
}

TEST(Subspace, RejectsNonOrthonormal) {
  EXPECT_THROW(Subspace(2, diag({1, 2})), InputError);
  EXPECT_THROW(Subspace(3, diag({1, 1})), InputError);
  EXPECT_NO_THROW(Subspace::zero(3));
}

TEST(Intersection, Examples) {
  const ComplexMatrix e1 = ComplexMatrix::Identity(2, 2).leftCols(1);
  const ComplexMatrix e2 = ComplexMatrix::Identity(2, 2).rightCols(1);
  EXPECT_EQ(subspaceIntersectionDim(Subspace(2, e1), Subspace(2, e1)), 1);
  EXPECT_EQ(subspaceIntersectionDim(Subspace(2, e1), Subspace(2, e2)), 0);
  EXPECT_THROW(subspaceIntersectionDim(Subspace::whole(2), Subspace::whole(3)), InputError);
}

TEST(Intersection, GenericThreeAndTwoInFourAgainstPrincipalAngles) {
  RngStream rng(17, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix b1 = randomFrame(4, 3, rng);
    const ComplexMatrix b2 = randomFrame(4, 2, rng);
    EXPECT_EQ(pinear::testing::intersectionDimByAngles(b1, b2), 1);
    EXPECT_EQ(subspaceIntersectionDim(Subspace(4, b1), Subspace(4, b2)), 1);
  }
}

TEST(Intersection, PropertySymmetricAndMatchesAngles) {
  RngStream rng(19, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 8;
    // Build subspaces that share a planted common part.
    const int common = rng.uniformInt(0, n);
    const int extra1 = rng.uniformInt(0, n - common);
    const int extra2 = rng.uniformInt(0, n - common - extra1);
    const ComplexMatrix q = haarUnitary(n, rng);
    const ComplexMatrix b1 = orthonormalize(q.leftCols(common + extra1));
    ComplexMatrix b2raw(n, common + extra2);
    b2raw << q.leftCols(common), q.middleCols(common + extra1, extra2);
    const ComplexMatrix b2 = orthonormalize(b2raw);
    const Subspace s1(n, b1);
    const Subspace s2(n, b2);
    EXPECT_EQ(subspaceIntersectionDim(s1, s2), common);
    EXPECT_EQ(subspaceIntersectionDim(s2, s1), common);
    EXPECT_EQ(pinear::testing::intersectionDimByAngles(b1, b2), common);
  }
}

TEST(HermEigMax, Examples) {
  EXPECT_NEAR(hermEigMax(diag({3, -1})), 3.0, 1e-15);
  EXPECT_NEAR(hermEigMax(fromRows({{0, 1}, {1, 0}})), 1.0, 1e-15);
  const ComplexMatrix t = diag({4, 1, 1});
  const ComplexMatrix x = pinear::testing::twistedBlock();
  // X0*(T - X0) = [[3,0,0],[0,-1,-1],[0,-1,-1]]: eigenvalues 3, 0, -2.
  EXPECT_NEAR(hermEigMax(x.adjoint() * (t - x)), 3.0, 1e-14);
}

TEST(HermEigMax, UsesHermitianPart) {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 1) = 2.0;  // Hermitian part [[0,1],[1,0]]
  EXPECT_NEAR(hermEigMax(a), 1.0, 1e-15);
}
