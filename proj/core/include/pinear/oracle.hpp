#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pinear/nearness.hpp"

namespace pinear {

/// Independent random stream for one trial, derived from (seed, stream index).
/// Streams never share state, so trials can run on any worker in any order.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi);
  /// log-uniform on [lo, hi], lo > 0
  double logUniform(double lo, double hi);
  /// Uniform integer in [lo, hi].
  int uniformInt(int lo, int hi);

  /// i.i.d. complex normal entries with E|z|^2 = variance.
  ComplexMatrix complexGaussian(int rows, int cols, double variance = 1.0);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Orthonormal columns spanning the column space of a full-column-rank `m`,
/// with phases fixed so the triangular factor has a positive diagonal.
ComplexMatrix orthonormalize(const ComplexMatrix& m);

/// n x k matrix with orthonormal columns, Haar distributed.
ComplexMatrix randomFrame(int n, int k, RngStream& rng);
ComplexMatrix haarUnitary(int n, RngStream& rng);

enum class Ensemble { gaussian, diagonal, rankDeficient, nearBoundary };

std::string_view toString(Ensemble e);
/// Throws InputError for unknown names.
Ensemble parseEnsemble(std::string_view name);

struct CampaignConfig {
  int n = 4;
  int trials = 100;
  int searchBudget = 1000;
  std::uint64_t seed = 0;
  /// Violation tolerance for search-based checks.
  double tol = 1e-6;
  /// Violation tolerance for closed-form checks.
  double formulaTol = 1e-8;
  Ensemble ensemble = Ensemble::gaussian;
  /// Worker threads; 0 selects the hardware concurrency. Results do not depend on it.
  int workers = 0;

  /// Throws InputError when n < 1, trials < 1, searchBudget < 1 or tolerances are not positive.
  void validate() const;
};

struct Violation {
  int trial = 0;
  std::string kind;
  ComplexMatrix t;
  ComplexMatrix x;
  double gap = 0.0;
  std::string detail;
};

struct CampaignCounters {
  int skipped = 0;        // trials with T = 0 where the check is vacuous
  int regimeHolds = 0;    // dichotomy: polar factor is a global best
  int regimeFails = 0;    // dichotomy: strict improvement expected
  int minimizers = 0;     // characterization corpus, by distance ground truth
  int nonMinimizers = 0;

  bool operator==(const CampaignCounters&) const = default;
};

struct CampaignResult {
  std::string theorem;
  std::vector<Violation> violations;
  /// Smallest margin observed on the search-based inequality
  /// (found value - ||T - V||); +inf when no such check ran.
  double minGapObserved = std::numeric_limits<double>::infinity();
  int trialsRun = 0;
  double elapsedSeconds = 0.0;
  CampaignCounters counters;

  bool upheld() const { return violations.empty(); }
};

/// X = U1 U2* with U1, U2 Haar n x k frames. Throws InputError unless 0 <= k <= n.
PartialIsometry randomPartialIsometry(int n, int k, RngStream& rng);

/// A random operator drawn from the given ensemble:
///  - gaussian: i.i.d. complex normal entries with variance 1/n;
///  - diagonal: positive diagonal, log-uniform on [1e-3, 10];
///  - rankDeficient: U diag(s) W* with rank uniform in [0, n);
///  - nearBoundary: U diag(s) W* with a singular value within 1e-3 of 1/2
///    and, for n >= 3, alternately ||T|| - 1 within 1e-3 of 1 - gamma.
ComplexMatrix randomOperator(int n, Ensemble ensemble, RngStream& rng);
ComplexMatrix randomOperator(const CampaignConfig& config, RngStream& rng);

struct SearchOptions {
  bool structured = true;  // include V, the cutoff minimizer, sign flips, truncations
  int refineSteps = 200;   // accept-if-better perturbations per refinement chain
  int descentSteps = 150;  // smoothed-norm gradient steps per chain
  int refineStarts = 4;    // chains per rank, seeded from the best candidates of that rank
};

struct SearchResult {
  PartialIsometry best;
  double value = 0.0;  // ||T - best||, an upper bound on the constrained minimum
  long candidates = 0;
};

/// Best partial isometry of rank >= minRank found by random sampling,
/// structured candidates and local refinement.
SearchResult searchBestPartialIsometry(const ComplexMatrix& t, int minRank, int budget,
                                       RngStream& rng, const SearchOptions& options = {});

/// Spectral norm through the top eigenvalue of A*A. Faster than opNorm for
/// small matrices and accurate to O(eps ||A||).
double fastOpNorm(const ComplexMatrix& a);

/// No rank >= rank(V) partial isometry beats ||T - V||; same for T*.
CampaignResult verifyPrincipalTheorem(const CampaignConfig& config);

/// Global-best predicate versus search, and strict improvement of the cutoff
/// minimizer (with positive index) when the predicate fails.
CampaignResult verifySpectralDichotomy(const CampaignConfig& config);

/// The attained-vector classifier against distance ground truth on generated
/// minimizers and non-minimizers.
CampaignResult verifyCharacterization(const CampaignConfig& config);

}  // namespace pinear
