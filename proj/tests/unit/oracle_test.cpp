#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "pinear/oracle.hpp"
#include "oracles.hpp"

using namespace pinear;
using pinear::testing::diag;

TEST(RngStream, SameSeedAndStreamReproduce) {
  RngStream a(5, 2);
  RngStream b(5, 2);
  RngStream c(5, 3);
  const ComplexMatrix ma = a.complexGaussian(3, 3);
  EXPECT_EQ(ma, b.complexGaussian(3, 3));
  EXPECT_NE(ma, c.complexGaussian(3, 3));
}

TEST(RngStream, ComplexGaussianVariance) {
  RngStream rng(1, 0);
  const ComplexMatrix m = rng.complexGaussian(200, 200, 0.25);
  EXPECT_NEAR(m.squaredNorm() / m.size(), 0.25, 0.01);
}

TEST(RngStream, RangesAreRespected) {
  RngStream rng(2, 0);
  for (int i = 0; i < 1000; ++i) {
    const int k = rng.uniformInt(-2, 3);
    EXPECT_GE(k, -2);
    EXPECT_LE(k, 3);
    const double l = rng.logUniform(1e-3, 10);
    EXPECT_GE(l, 1e-3);
    EXPECT_LE(l, 10);
  }
}

TEST(Orthonormalize, FixedPhases) {
  EXPECT_LE(maxAbsDiff(orthonormalize(ComplexMatrix::Identity(3, 3)),
                       ComplexMatrix::Identity(3, 3)),
            1e-15);
  EXPECT_LE(maxAbsDiff(orthonormalize(diag({-2, 3})), diag({-1, 1})), 1e-15);
}

TEST(HaarUnitary, IsUnitary) {
  RngStream rng(3, 0);
  for (int n = 1; n <= 10; ++n) {
    const ComplexMatrix u = haarUnitary(n, rng);
    EXPECT_LE(maxAbsDiff(u.adjoint() * u, ComplexMatrix::Identity(n, n)), 1e-13);
  }
}

TEST(RandomPartialIsometry, Examples) {
  RngStream rng(4, 0);
  EXPECT_EQ(randomPartialIsometry(4, 0, rng).rank(), 0);
  const PartialIsometry x = randomPartialIsometry(5, 3, rng);
  EXPECT_EQ(x.rank(), 3);
  EXPECT_LE(x.residual(), 1e-13);
  EXPECT_EQ(randomPartialIsometry(3, 3, rng).rank(), 3);
  EXPECT_THROW(randomPartialIsometry(3, 4, rng), InputError);
  EXPECT_THROW(randomPartialIsometry(3, -1, rng), InputError);
}

TEST(Ensembles, Names) {
  for (const Ensemble e : {Ensemble::gaussian, Ensemble::diagonal, Ensemble::rankDeficient,
                           Ensemble::nearBoundary}) {
    EXPECT_EQ(parseEnsemble(toString(e)), e);
  }
  EXPECT_THROW(parseEnsemble("wishart"), InputError);
}

TEST(Ensembles, ShapesOfDraws) {
  RngStream rng(6, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 8;
    const ComplexMatrix d = randomOperator(n, Ensemble::diagonal, rng);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j) EXPECT_EQ(d(i, j), Scalar(0.0));
      }
      EXPECT_GE(d(i, i).real(), 1e-3);
      EXPECT_LE(d(i, i).real(), 10.0);
    }
    EXPECT_LT(rankTol(randomOperator(n, Ensemble::rankDeficient, rng), 1e-10), n);

    const RealVector s = singularValues(randomOperator(n, Ensemble::nearBoundary, rng));
    double nearest = 1.0;
    for (const double v : s) nearest = std::min(nearest, std::abs(v - 0.5));
    EXPECT_LE(nearest, 1e-3 + 1e-12) << trial;
  }
}

TEST(Ensembles, GaussianEntryVariance) {
  RngStream rng(8, 0);
  double total = 0.0;
  const int n = 6;
  for (int i = 0; i < 500; ++i) total += randomOperator(n, Ensemble::gaussian, rng).squaredNorm();
  EXPECT_NEAR(total / (500.0 * n * n), 1.0 / n, 0.01);
}

TEST(FastOpNorm, MatchesSvdNorm) {
  RngStream rng(9, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexMatrix a = randomOperator(1 + trial % 8, static_cast<Ensemble>(trial % 4), rng);
    EXPECT_NEAR(fastOpNorm(a), opNorm(a), 1e-12 * std::max(1.0, opNorm(a)));
  }
}

TEST(Search, Examples) {
  RngStream rng(10, 0);
  const SearchResult low = searchBestPartialIsometry(diag({1.2, 0.3}), 0, 1000, rng);
  EXPECT_NEAR(low.value, 0.3, 1e-3);

  const SearchResult full = searchBestPartialIsometry(diag({4, 1, 1}), 3, 1000, rng);
  EXPECT_NEAR(full.value, 3.0, 1e-12);
  EXPECT_EQ(full.best.rank(), 3);

  const PartialIsometry planted = randomPartialIsometry(4, 2, rng);
  const SearchResult exact = searchBestPartialIsometry(planted.matrix(), 2, 1000, rng);
  EXPECT_LE(exact.value, 1e-10);
}

TEST(Search, PropertySoundness) {
  RngStream rng(12, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 5;
    const ComplexMatrix t = randomOperator(n, static_cast<Ensemble>(trial % 4), rng);
    const int minRank = rng.uniformInt(0, n);
    const SearchResult r = searchBestPartialIsometry(t, minRank, 200, rng);
    EXPECT_GE(r.best.rank(), minRank);
    EXPECT_LE(r.best.residual(), 1e-9);
    EXPECT_NEAR(r.value, opNorm(t - r.best.matrix()), 1e-10);
    EXPECT_GE(r.value, wuDistanceToIsometries(t) - 1e-9);
    EXPECT_GT(r.candidates, 200);
  }
}

TEST(Search, CalibrationAgainstClosedFormMinimum) {
  RngStream rng(14, 0);
  int close = 0;
  const int trials = 60;
  for (int trial = 0; trial < trials; ++trial) {
    const int n = 1 + trial % 4;
    const ComplexMatrix t = randomOperator(n, Ensemble::gaussian, rng);
    // Random sampling and refinement only; no structured candidates.
    const SearchResult r = searchBestPartialIsometry(t, 0, 10000, rng, {.structured = false});
    if (r.value - wuDistanceToIsometries(t) <= 1e-2) ++close;
  }
  EXPECT_GE(close, static_cast<int>(0.95 * trials));
}

TEST(Search, RejectsBadArguments) {
  RngStream rng(15, 0);
  EXPECT_THROW(searchBestPartialIsometry(diag({1, 1}), 3, 10, rng), InputError);
  EXPECT_THROW(searchBestPartialIsometry(diag({1, 1}), 0, 0, rng), InputError);
}

TEST(CampaignConfig, Validation) {
  CampaignConfig config;
  EXPECT_NO_THROW(config.validate());
  config.trials = 0;
  EXPECT_THROW(config.validate(), InputError);
  config = {};
  config.n = 0;
  EXPECT_THROW(config.validate(), InputError);
  config = {};
  config.tol = 0;
  EXPECT_THROW(config.validate(), InputError);
}

namespace {

void expectSameResult(const CampaignResult& a, const CampaignResult& b) {
  EXPECT_EQ(a.trialsRun, b.trialsRun);
  EXPECT_EQ(a.counters, b.counters);
  EXPECT_EQ(a.minGapObserved, b.minGapObserved);
  ASSERT_EQ(a.violations.size(), b.violations.size());
  for (std::size_t i = 0; i < a.violations.size(); ++i) {
    EXPECT_EQ(a.violations[i].trial, b.violations[i].trial);
    EXPECT_EQ(a.violations[i].gap, b.violations[i].gap);
  }
}

}  // namespace

TEST(Campaigns, DeterministicAcrossWorkerCounts) {
  CampaignConfig config{.n = 3, .trials = 24, .searchBudget = 200, .seed = 99};
  config.workers = 1;
  const CampaignResult one = verifyPrincipalTheorem(config);
  config.workers = 3;
  const CampaignResult three = verifyPrincipalTheorem(config);
  expectSameResult(one, three);

  config.ensemble = Ensemble::nearBoundary;
  config.workers = 1;
  const CampaignResult d1 = verifySpectralDichotomy(config);
  config.workers = 3;
  expectSameResult(d1, verifySpectralDichotomy(config));
}

TEST(Campaigns, PrincipalUpheld) {
  for (const Ensemble e : {Ensemble::gaussian, Ensemble::rankDeficient, Ensemble::nearBoundary}) {
    const CampaignConfig config{.n = 3, .trials = 20, .searchBudget = 500, .seed = 7, .ensemble = e};
    const CampaignResult r = verifyPrincipalTheorem(config);
    EXPECT_TRUE(r.upheld()) << toString(e);
    EXPECT_EQ(r.trialsRun, 20);
    EXPECT_GE(r.minGapObserved, -config.tol);
    EXPECT_EQ(r.theorem, "principal");
  }
}

TEST(Campaigns, DichotomyCoversBothRegimes) {
  const CampaignConfig config{
      .n = 4, .trials = 60, .searchBudget = 300, .seed = 3, .ensemble = Ensemble::nearBoundary};
  const CampaignResult r = verifySpectralDichotomy(config);
  EXPECT_TRUE(r.upheld());
  EXPECT_GT(r.counters.regimeHolds, 0);
  EXPECT_GT(r.counters.regimeFails, 0);
  EXPECT_EQ(r.counters.regimeHolds + r.counters.regimeFails + r.counters.skipped, 60);
}

TEST(Campaigns, CharacterizationAgrees) {
  const CampaignConfig config{.n = 3, .trials = 40, .seed = 5};
  const CampaignResult r = verifyCharacterization(config);
  EXPECT_TRUE(r.upheld());
  EXPECT_GE(r.counters.minimizers, 40);
  EXPECT_GE(r.counters.nonMinimizers, 40);
}

TEST(Campaigns, RejectsInvalidConfig) {
  CampaignConfig config;
  config.trials = 0;
  EXPECT_THROW(verifyPrincipalTheorem(config), InputError);
}
