#include "pinear/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>
#include <utility>
#include <vector>

namespace pinear {

// ---------------------------------------------------------------------------
// random streams and generators

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x9e3779b9u};
  engine_.seed(seq);
}

double RngStream::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double RngStream::logUniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

int RngStream::uniformInt(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

ComplexMatrix RngStream::complexGaussian(int rows, int cols, double variance) {
  const double scale = std::sqrt(variance / 2.0);
  ComplexMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal();
      const double im = normal();
      m(i, j) = Scalar(scale * re, scale * im);
    }
  }
  return m;
}

ComplexMatrix orthonormalize(const ComplexMatrix& m) {
  const auto rows = m.rows();
  const auto cols = m.cols();
  if (cols == 0) return m;
  Eigen::HouseholderQR<ComplexMatrix> qr(m);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const Scalar d = qr.matrixQR()(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

ComplexMatrix randomFrame(int n, int k, RngStream& rng) {
  return orthonormalize(rng.complexGaussian(n, k));
}

ComplexMatrix haarUnitary(int n, RngStream& rng) { return randomFrame(n, n, rng); }

std::string_view toString(Ensemble e) {
  switch (e) {
    case Ensemble::gaussian: return "gaussian";
    case Ensemble::diagonal: return "diagonal";
    case Ensemble::rankDeficient: return "rankDeficient";
    case Ensemble::nearBoundary: return "nearBoundary";
  }
  return "unknown";
}

Ensemble parseEnsemble(std::string_view name) {
  for (const Ensemble e : {Ensemble::gaussian, Ensemble::diagonal, Ensemble::rankDeficient,
                           Ensemble::nearBoundary}) {
    if (toString(e) == name) return e;
  }
  throw InputError("unknown ensemble '" + std::string(name) +
                   "' (expected gaussian, diagonal, rankDeficient or nearBoundary)");
}

void CampaignConfig::validate() const {
  if (n < 1) throw InputError("n must be >= 1");
  if (trials < 1) throw InputError("trials must be >= 1");
  if (searchBudget < 1) throw InputError("searchBudget must be >= 1");
  if (!(tol > 0.0) || !(formulaTol > 0.0)) throw InputError("tolerances must be positive");
  if (workers < 0) throw InputError("workers must be >= 0");
}

PartialIsometry randomPartialIsometry(int n, int k, RngStream& rng) {
  if (n < 1 || k < 0 || k > n) {
    throw InputError("random partial isometry needs 0 <= k <= n, got n=" + std::to_string(n) +
                     ", k=" + std::to_string(k));
  }
  const ComplexMatrix left = randomFrame(n, k, rng);
  const ComplexMatrix right = randomFrame(n, k, rng);
  return PartialIsometry::validate(left * right.adjoint());
}

namespace {

ComplexMatrix withSingularValues(const std::vector<double>& s, RngStream& rng) {
  const int n = static_cast<int>(s.size());
  RealVector d(n);
  for (int i = 0; i < n; ++i) d(i) = s[static_cast<std::size_t>(i)];
  const ComplexMatrix u = haarUnitary(n, rng);
  const ComplexMatrix w = haarUnitary(n, rng);
  return u * d.cast<Scalar>().asDiagonal() * w.adjoint();
}

std::vector<double> nearBoundarySpectrum(int n, RngStream& rng) {
  std::vector<double> s(static_cast<std::size_t>(n));
  const bool normBoundary = n >= 3 && rng.uniformInt(0, 1) == 1;
  if (!normBoundary) {
    // gamma straddles 1/2
    const double gamma = 0.5 + rng.uniform(-1e-3, 1e-3);
    s[0] = gamma;
    for (int i = 1; i < n; ++i) s[static_cast<std::size_t>(i)] = rng.uniform(gamma, 1.6);
    return s;
  }
  // ||T|| - 1 straddles 1 - gamma, with one more value near 1/2 inside the spectrum
  const double gamma = rng.uniform(0.05, 0.45);
  const double top = 2.0 - gamma + rng.uniform(-1e-3, 1e-3);
  s[0] = top;
  s[1] = gamma;
  s[2] = 0.5 + rng.uniform(-1e-3, 1e-3);
  for (int i = 3; i < n; ++i) s[static_cast<std::size_t>(i)] = rng.uniform(gamma, top);
  return s;
}

}  // namespace

ComplexMatrix randomOperator(int n, Ensemble ensemble, RngStream& rng) {
  if (n < 1) throw InputError("n must be >= 1");
  switch (ensemble) {
    case Ensemble::gaussian:
      return rng.complexGaussian(n, n, 1.0 / n);
    case Ensemble::diagonal: {
      ComplexMatrix t = ComplexMatrix::Zero(n, n);
      for (int i = 0; i < n; ++i) t(i, i) = rng.logUniform(1e-3, 10.0);
      return t;
    }
    case Ensemble::rankDeficient: {
      const int rank = rng.uniformInt(0, n - 1);
      std::vector<double> s(static_cast<std::size_t>(n), 0.0);
      for (int i = 0; i < rank; ++i) s[static_cast<std::size_t>(i)] = rng.logUniform(1e-3, 10.0);
      return withSingularValues(s, rng);
    }
    case Ensemble::nearBoundary:
      return withSingularValues(nearBoundarySpectrum(n, rng), rng);
  }
  throw InputError("unknown ensemble");
}

ComplexMatrix randomOperator(const CampaignConfig& config, RngStream& rng) {
  return randomOperator(config.n, config.ensemble, rng);
}

// ---------------------------------------------------------------------------
// constrained search

double fastOpNorm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  const ComplexMatrix gram = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

namespace {

// X = left * right^*, both with orthonormal columns.
struct Frames {
  ComplexMatrix left;
  ComplexMatrix right;

  ComplexMatrix product() const { return left * right.adjoint(); }
};

struct Seed {
  Frames frames;
  double value;
};

// Schatten-p norm of T - X, scaled by its largest singular value.
double schattenRatio(const RealVector& sigma, double p) {
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0.0;
  return sigma(0) * std::pow((sigma / sigma(0)).array().pow(p).sum(), 1.0 / p);
}

// Gradient descent on the Schatten-p norm of T - L R^*, a smooth stand-in for
// the spectral norm, with p raised in stages. Each accepted step retracts the
// frames back to orthonormal columns.
void descend(const ComplexMatrix& t, Frames& frames, int iterations, long& evaluated) {
  const int k = static_cast<int>(frames.left.cols());
  if (k == 0 || iterations <= 0) return;
  const int perStage = std::max(1, iterations / 3);
  for (const double p : {8.0, 32.0, 128.0}) {
    double eta = 0.1;
    Eigen::JacobiSVD<ComplexMatrix> svdD(t - frames.product(), Eigen::ComputeThinU | Eigen::ComputeThinV);
    ++evaluated;
    double current = schattenRatio(svdD.singularValues(), p);
    for (int it = 0; it < perStage && eta > 1e-12; ++it) {
      const RealVector& sigma = svdD.singularValues();
      if (sigma(0) == 0.0) return;
      const RealVector weights = (sigma / sigma(0)).array().pow(p - 1.0);
      const ComplexMatrix g = svdD.matrixU() * weights.cast<Scalar>().asDiagonal() * svdD.matrixV().adjoint();
      Frames next{orthonormalize(frames.left + eta * g * frames.right),
                  orthonormalize(frames.right + eta * g.adjoint() * frames.left)};
      Eigen::JacobiSVD<ComplexMatrix> svdNext(t - next.product(), Eigen::ComputeThinU | Eigen::ComputeThinV);
      ++evaluated;
      const double value = schattenRatio(svdNext.singularValues(), p);
      if (value < current) {
        frames = std::move(next);
        svdD = std::move(svdNext);
        current = value;
        eta *= 1.5;
      } else {
        eta *= 0.5;
      }
    }
  }
}

}  // namespace

SearchResult searchBestPartialIsometry(const ComplexMatrix& t, int minRank, int budget,
                                       RngStream& rng, const SearchOptions& options) {
  requireOperator(t);
  const int n = static_cast<int>(t.rows());
  if (minRank < 0 || minRank > n) throw InputError("minRank must lie in [0, n]");
  if (budget < 1) throw InputError("search budget must be >= 1");
  const auto starts = static_cast<std::size_t>(std::max(1, options.refineStarts));

  // The best few frames of each rank seed the refinement chains. The
  // objective has several local minima per rank (sign patterns), so one
  // chain from the single best draw is not enough.
  std::vector<std::vector<Seed>> pool(static_cast<std::size_t>(n + 1));
  long evaluated = 0;
  auto evaluate = [&](const Frames& f) {
    ++evaluated;
    return fastOpNorm(t - f.product());
  };
  auto consider = [&](Frames f) {
    const double value = evaluate(f);
    auto& seeds = pool[static_cast<std::size_t>(f.left.cols())];
    if (seeds.size() == starts && value >= seeds.back().value) return;
    const auto at = std::upper_bound(seeds.begin(), seeds.end(), value,
                                     [](double v, const Seed& s) { return v < s.value; });
    seeds.insert(at, Seed{std::move(f), value});
    if (seeds.size() > starts) seeds.pop_back();
  };

  if (options.structured) {
    const SvdFactors f = svd(t);
    const ComplexMatrix w = f.right();
    const int r = f.rank();
    // Top-k truncations U_k W_k^*. k = rank(V) is V itself, k = n the unitary
    // completion, and the cutoff minimizer V phi(|T|) keeps exactly the
    // singular values >= 1/2, which is also a top-k set.
    for (int k = minRank; k <= n; ++k) consider({f.left.leftCols(k), w.leftCols(k)});

    const int base = std::max(r, minRank);
    if (base > 0) {
      auto flipped = [&](const RealVector& signs) {
        return Frames{f.left.leftCols(base) * signs.cast<Scalar>().asDiagonal(), w.leftCols(base)};
      };
      if (base <= 8) {
        for (unsigned mask = 1; mask < (1u << base); ++mask) {
          RealVector signs(base);
          for (int i = 0; i < base; ++i) signs(i) = (mask >> i) & 1u ? -1.0 : 1.0;
          consider(flipped(signs));
        }
      } else {
        for (int i = 0; i < base; ++i) {
          RealVector signs = RealVector::Ones(base);
          signs(i) = -1.0;
          consider(flipped(signs));
        }
      }
    }
  }

  for (int b = 0; b < budget; ++b) {
    const int k = rng.uniformInt(minRank, n);
    consider({randomFrame(n, k, rng), randomFrame(n, k, rng)});
  }

  // Smooth descent, then accept-if-better perturbations with an adaptive step.
  for (int k = std::max(minRank, 1); k <= n && options.refineSteps > 0; ++k) {
    for (Seed& seed : pool[static_cast<std::size_t>(k)]) {
      Frames descended = seed.frames;
      descend(t, descended, options.descentSteps, evaluated);
      const double descendedValue = evaluate(descended);
      if (descendedValue < seed.value) seed = Seed{std::move(descended), descendedValue};
      double step = 0.2 / std::sqrt(static_cast<double>(n));
      for (int s = 0; s < options.refineSteps && step > 1e-9; ++s) {
        Frames candidate{orthonormalize(seed.frames.left + step * rng.complexGaussian(n, k)),
                         orthonormalize(seed.frames.right + step * rng.complexGaussian(n, k))};
        const double value = evaluate(candidate);
        if (value < seed.value) {
          seed = Seed{std::move(candidate), value};
          step *= 1.5;
        } else {
          step *= 0.85;
        }
      }
    }
  }

  const Seed* winner = nullptr;
  for (const auto& seeds : pool) {
    for (const Seed& seed : seeds) {
      if (!winner || seed.value < winner->value) winner = &seed;
    }
  }
  PartialIsometry x = PartialIsometry::validate(winner->frames.product());
  const double value = opNorm(t - x.matrix());
  return {std::move(x), value, evaluated};
}

// ---------------------------------------------------------------------------
// campaigns

namespace {

struct TrialRecord {
  std::vector<Violation> violations;
  double minGap = std::numeric_limits<double>::infinity();
  CampaignCounters counters;

  void gap(double g) { minGap = std::min(minGap, g); }
  void violate(int trial, std::string kind, const ComplexMatrix& t, const ComplexMatrix& x,
               double g, std::string detail = {}) {
    violations.push_back({trial, std::move(kind), t, x, g, std::move(detail)});
  }
};

template <class TrialFn>
CampaignResult runCampaign(std::string theorem, const CampaignConfig& config, TrialFn trial) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  std::vector<TrialRecord> records(static_cast<std::size_t>(config.trials));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < config.trials; i = next++) {
      RngStream rng(config.seed, static_cast<std::uint64_t>(i));
      TrialRecord& record = records[static_cast<std::size_t>(i)];
      try {
        trial(i, rng, record);
      } catch (const std::exception& e) {
        record.violate(i, "exception", {}, {}, 0.0, e.what());
      }
    }
  };

  int workers = config.workers > 0 ? config.workers
                                   : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, config.trials);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  CampaignResult out;
  out.theorem = std::move(theorem);
  out.trialsRun = config.trials;
  for (auto& r : records) {
    out.minGapObserved = std::min(out.minGapObserved, r.minGap);
    for (auto& v : r.violations) out.violations.push_back(std::move(v));
    out.counters.skipped += r.counters.skipped;
    out.counters.regimeHolds += r.counters.regimeHolds;
    out.counters.regimeFails += r.counters.regimeFails;
    out.counters.minimizers += r.counters.minimizers;
    out.counters.nonMinimizers += r.counters.nonMinimizers;
  }
  out.elapsedSeconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

CampaignResult verifyPrincipalTheorem(const CampaignConfig& config) {
  return runCampaign("principal", config, [&](int i, RngStream& rng, TrialRecord& rec) {
    const ComplexMatrix t = randomOperator(config, rng);

    // Initial projections: rank(X) >= rank(V) encodes j(V*V, X*X) <= 0.
    const PolarData polar = polarDecompose(t);
    const int rank = polar.factor.rank();
    const SearchResult found = searchBestPartialIsometry(t, rank, config.searchBudget, rng);
    const double gap = found.value - polar.distToPolar;
    rec.gap(gap);
    if (gap < -config.tol) {
      rec.violate(i, "principal-initial", t, found.best.matrix(), gap,
                  "search beat ||T - V|| under j(V*V, X*X) <= 0");
    }
    const ProjectionPair pair =
        indexJ(polar.factor.initialProjection(), found.best.initialProjection());
    if (pair.j > 0) {
      rec.violate(i, "feasibility", t, found.best.matrix(), static_cast<double>(pair.j),
                  "candidate violates j(V*V, X*X) <= 0");
    }

    // Final projections, through T* = V*|T*|.
    const ComplexMatrix ta = t.adjoint();
    const PolarData polarA = polarDecompose(ta);
    const SearchResult foundA =
        searchBestPartialIsometry(ta, polarA.factor.rank(), config.searchBudget, rng);
    const ComplexMatrix x = foundA.best.matrix().adjoint();
    const double gapA = opNorm(t - x) - polar.distToPolar;
    rec.gap(gapA);
    if (gapA < -config.tol) {
      rec.violate(i, "principal-final", t, x, gapA, "search beat ||T - V|| under j(VV*, XX*) <= 0");
    }
    const ProjectionPair pairA = indexJ(polar.factor.finalProjection(), x * x.adjoint());
    if (pairA.j > 0) {
      rec.violate(i, "feasibility", t, x, static_cast<double>(pairA.j),
                  "candidate violates j(VV*, XX*) <= 0");
    }
  });
}

CampaignResult verifySpectralDichotomy(const CampaignConfig& config) {
  return runCampaign("dichotomy", config, [&](int i, RngStream& rng, TrialRecord& rec) {
    const ComplexMatrix t = randomOperator(config, rng);
    const PolarData polar = polarDecompose(t);
    if (!polar.gamma) {
      ++rec.counters.skipped;
      return;
    }
    const double wu = wuDistanceToIsometries(t);

    if (isPolarFactorGlobalBest(t)) {
      ++rec.counters.regimeHolds;
      const SearchResult found = searchBestPartialIsometry(t, 0, config.searchBudget, rng);
      const double gap = found.value - polar.distToPolar;
      rec.gap(gap);
      if (gap < -config.tol) {
        rec.violate(i, "dichotomy-holds", t, found.best.matrix(), gap,
                    "search beat ||T - V|| although the polar factor should be a global best");
      }
      if (found.value < wu - config.formulaTol) {
        rec.violate(i, "search-soundness", t, found.best.matrix(), found.value - wu,
                    "search beat the distance to all partial isometries");
      }
      return;
    }

    ++rec.counters.regimeFails;
    const PartialIsometry x0 = wuMinimizer(t);
    const double improvement = polar.distToPolar - opNorm(t - x0.matrix());
    const double predicted = (1.0 - *polar.gamma) - wu;
    if (!(improvement > 0.0) || std::abs(improvement - predicted) > config.formulaTol) {
      rec.violate(i, "dichotomy-improvement", t, x0.matrix(), improvement - predicted,
                  "improvement " + std::to_string(improvement) + " vs predicted " +
                      std::to_string(predicted));
    }
    const ProjectionPair pair = indexJ(polar.factor.initialProjection(), x0.initialProjection());
    if (pair.j <= 0 || pair.j != polar.factor.rank() - x0.rank()) {
      rec.violate(i, "dichotomy-index", t, x0.matrix(), static_cast<double>(pair.j),
                  "expected j(V*V, X0*X0) = rank V - rank X0 > 0");
    }
  });
}

CampaignResult verifyCharacterization(const CampaignConfig& config) {
  return runCampaign("characterization", config, [&](int i, RngStream& rng, TrialRecord& rec) {
    const ComplexMatrix t = randomOperator(config, rng);
    const int n = config.n;
    const PolarData polar = polarDecompose(t);
    if (!polar.gamma) {
      ++rec.counters.skipped;
      return;
    }

    // Ground truth is distance based; `expectMinimizer` is what the
    // construction guarantees.
    auto classify = [&](const ComplexMatrix& op, const PartialIsometry& x, bool expectMinimizer,
                        const char* label) {
      const double tau = defaultCharacterizationTol(op);
      const MinimizerVerdict verdict = classifyMinimizer(op, x, tau);
      const bool truth = std::abs(verdict.distanceGap) <= config.tol;
      if (truth) {
        ++rec.counters.minimizers;
      } else {
        ++rec.counters.nonMinimizers;
      }
      if (truth != expectMinimizer) {
        rec.violate(i, "construction", op, x.matrix(), verdict.distanceGap,
                    std::string(label) + ": construction label disagrees with distance");
      }
      if (verdict.byConditions != truth) {
        rec.violate(i, "classifier", op, x.matrix(), verdict.distanceGap,
                    std::string(label) + ": conditions disagree with distance ground truth");
      }
      for (const ConditionResult* c : {&verdict.conditionI, &verdict.conditionII}) {
        if (!c->witness) continue;
        const ComplexVector& xi = *c->witness;
        const double inRange = (x.initialProjection() * xi - xi).norm();
        if (std::abs(xi.norm() - 1.0) > 1e-8 || inRange > 1e-8) {
          rec.violate(i, "witness", op, x.matrix(), inRange, std::string(label));
        }
      }
    };

    const PartialIsometry& v = polar.factor;
    classify(t, v, true, "polar factor");

    const PartialIsometry wu = wuMinimizer(t);
    if (isPolarFactorGlobalBest(t) && wu.rank() >= v.rank()) {
      classify(t, wu, true, "cutoff minimizer");
    }

    // Block pattern: top singular value pushed at least 2 above the rest, so
    // any unitary twist Z of the complement keeps ||T' - X|| = sigma_1 - 1.
    {
      const SvdFactors f = svd(t);
      RealVector s = f.singulars;
      const double second = n > 1 ? s(1) : 0.0;
      s(0) = second + 2.0 + rng.uniform(0.0, 1.0);
      const ComplexMatrix w = f.right();
      const ComplexMatrix tBlock = f.left * s.cast<Scalar>().asDiagonal() * f.rightH;
      ComplexMatrix x = f.left.col(0) * w.col(0).adjoint();
      if (n > 1) {
        const ComplexMatrix z = haarUnitary(n - 1, rng);
        x += f.left.rightCols(n - 1) * z * w.rightCols(n - 1).adjoint();
      }
      classify(tBlock, PartialIsometry::validate(x), true, "twisted block");
    }

    // Top direction flipped: ||T - X|| >= sigma_1 + 1 > ||T - V||.
    {
      const SvdFactors f = svd(t);
      const ComplexMatrix flip = v.matrix() - 2.0 * f.left.col(0) * f.right().col(0).adjoint();
      classify(t, PartialIsometry::validate(flip), false, "flipped polar factor");
    }

    // Random feasible partial isometry well away from the minimum value.
    for (int attempt = 0; attempt < 20; ++attempt) {
      const PartialIsometry x = randomPartialIsometry(n, rng.uniformInt(v.rank(), n), rng);
      if (opNorm(t - x.matrix()) > polar.distToPolar + 1e-3) {
        classify(t, x, false, "random feasible");
        break;
      }
    }
  });
}

}  // namespace pinear
