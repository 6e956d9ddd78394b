#include "pinear/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifndef PINEAR_VERSION
#define PINEAR_VERSION "0.0.0"
#endif

namespace pinear::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw FormatError(where + "." + key + ": missing");
  }
  return obj[key];
}

// null decodes to `ifNull` (non-finite values are written as null).
double getNumber(const Json& obj, const char* key, const std::string& where,
                 double ifNull = kInf) {
  const Json& v = field(obj, key, where);
  if (v.is_null()) return ifNull;
  if (!v.is_number()) throw FormatError(where + "." + key + ": expected a number");
  return v.get<double>();
}

bool getBool(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_boolean()) throw FormatError(where + "." + key + ": expected a boolean");
  return v.get<bool>();
}

int getInt(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_number_integer()) throw FormatError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

std::string getString(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_string()) throw FormatError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

Json conditionToJson(const ConditionResult& c) {
  return {{"holds", c.holds},
          {"witness", c.witness ? vectorToJson(*c.witness) : Json(nullptr)},
          {"residual", number(c.residual)}};
}

ConditionResult conditionFromJson(const Json& j, const std::string& where) {
  ConditionResult c;
  c.holds = getBool(j, "holds", where);
  const Json& w = field(j, "witness", where);
  if (!w.is_null()) c.witness = vectorFromJson(w, where + ".witness");
  c.residual = getNumber(j, "residual", where);
  return c;
}

Json optionalMatrix(const ComplexMatrix& m) {
  return m.size() == 0 ? Json(nullptr) : matrixToJson(m);
}

}  // namespace

std::string toolVersion() { return PINEAR_VERSION; }

Json reportHeader(const std::string& kind) {
  return {{"schema_version", kSchemaVersion},
          {"tool", kToolName},
          {"tool_version", toolVersion()},
          {"kind", kind}};
}

Json nearnessToJson(const NearnessReport& r) {
  Json polar = {{"factor", matrixToJson(r.polar.factor.matrix())},
                {"rank", r.polar.factor.rank()},
                {"modulus", matrixToJson(r.polar.modulus)},
                {"gamma", r.polar.gamma ? Json(*r.polar.gamma) : Json(nullptr)},
                {"norm", r.polar.norm},
                {"dist_to_polar", r.polar.distToPolar},
                {"rank_tolerance", r.polar.tol}};
  Json wu = nullptr;
  if (r.wuMinimizer) {
    wu = {{"matrix", matrixToJson(r.wuMinimizer->matrix())},
          {"rank", r.wuMinimizer->rank()},
          {"distance", r.wuMinimizerDistance}};
  }
  return {{"criterion", kCriterionLabel},
          {"input", matrixToJson(r.input)},
          {"polar", std::move(polar)},
          {"dist_to_polar_formula", r.distFormula},
          {"wu_distance", r.wuDistance},
          {"polar_is_global_best", r.polarIsGlobalBest},
          {"wu_minimizer", std::move(wu)},
          {"condition_i", conditionToJson(r.conditionI)},
          {"condition_ii", conditionToJson(r.conditionII)},
          {"triangle_equality", r.triangleEquality},
          {"characterization_tolerance", r.characterizationTol}};
}

NearnessReport nearnessFromJson(const Json& j) {
  const std::string where = "report";
  const Json& p = field(j, "polar", where);
  const std::string pw = where + ".polar";

  NearnessReport r{
      .input = matrixFromJson(field(j, "input", where), where + ".input"),
      .polar = PolarData{
          .factor =
              PartialIsometry::validate(matrixFromJson(field(p, "factor", pw), pw + ".factor")),
          .modulus = matrixFromJson(field(p, "modulus", pw), pw + ".modulus")}};
  if (const Json& g = field(p, "gamma", pw); !g.is_null()) r.polar.gamma = g.get<double>();
  r.polar.norm = getNumber(p, "norm", pw);
  r.polar.distToPolar = getNumber(p, "dist_to_polar", pw);
  r.polar.tol = getNumber(p, "rank_tolerance", pw);

  r.distFormula = getNumber(j, "dist_to_polar_formula", where);
  r.wuDistance = getNumber(j, "wu_distance", where);
  r.polarIsGlobalBest = getBool(j, "polar_is_global_best", where);
  if (const Json& wu = field(j, "wu_minimizer", where); !wu.is_null()) {
    const std::string ww = where + ".wu_minimizer";
    r.wuMinimizer = PartialIsometry::validate(matrixFromJson(field(wu, "matrix", ww), ww + ".matrix"));
    r.wuMinimizerDistance = getNumber(wu, "distance", ww);
  }
  r.conditionI = conditionFromJson(field(j, "condition_i", where), where + ".condition_i");
  r.conditionII = conditionFromJson(field(j, "condition_ii", where), where + ".condition_ii");
  r.triangleEquality = getBool(j, "triangle_equality", where);
  r.characterizationTol = getNumber(j, "characterization_tolerance", where);
  return r;
}

Json analyzeReport(const NearnessReport& report) {
  Json doc = reportHeader("analyze");
  doc["input_digest"] = matrixDigest(report.input);
  doc.update(nearnessToJson(report));
  return doc;
}

Json configToJson(const CampaignConfig& c) {
  return {{"n", c.n},
          {"trials", c.trials},
          {"budget", c.searchBudget},
          {"seed", c.seed},
          {"tol", c.tol},
          {"formula_tol", c.formulaTol},
          {"ensemble", std::string(toString(c.ensemble))},
          {"workers", c.workers}};
}

CampaignConfig configFromJson(const Json& j) {
  const std::string where = "config";
  CampaignConfig c;
  c.n = getInt(j, "n", where);
  c.trials = getInt(j, "trials", where);
  c.searchBudget = getInt(j, "budget", where);
  const Json& seed = field(j, "seed", where);
  if (!seed.is_number_unsigned()) throw FormatError(where + ".seed: expected an unsigned integer");
  c.seed = seed.get<std::uint64_t>();
  c.tol = getNumber(j, "tol", where);
  c.formulaTol = getNumber(j, "formula_tol", where);
  c.ensemble = parseEnsemble(getString(j, "ensemble", where));
  c.workers = getInt(j, "workers", where);
  return c;
}

Json campaignToJson(const CampaignResult& r) {
  Json violations = Json::array();
  for (const Violation& v : r.violations) {
    violations.push_back({{"trial", v.trial},
                          {"kind", v.kind},
                          {"gap", number(v.gap)},
                          {"detail", v.detail},
                          {"t", optionalMatrix(v.t)},
                          {"x", optionalMatrix(v.x)}});
  }
  return {{"theorem", r.theorem},
          {"upheld", r.upheld()},
          {"trials_run", r.trialsRun},
          {"elapsed_seconds", r.elapsedSeconds},
          {"min_gap_observed", number(r.minGapObserved)},
          {"counters",
           {{"skipped", r.counters.skipped},
            {"regime_holds", r.counters.regimeHolds},
            {"regime_fails", r.counters.regimeFails},
            {"minimizers", r.counters.minimizers},
            {"non_minimizers", r.counters.nonMinimizers}}},
          {"violations", std::move(violations)}};
}

CampaignResult campaignFromJson(const Json& j) {
  const std::string where = "result";
  CampaignResult r;
  r.theorem = getString(j, "theorem", where);
  r.trialsRun = getInt(j, "trials_run", where);
  r.elapsedSeconds = getNumber(j, "elapsed_seconds", where);
  r.minGapObserved = getNumber(j, "min_gap_observed", where);
  const Json& c = field(j, "counters", where);
  const std::string cw = where + ".counters";
  r.counters.skipped = getInt(c, "skipped", cw);
  r.counters.regimeHolds = getInt(c, "regime_holds", cw);
  r.counters.regimeFails = getInt(c, "regime_fails", cw);
  r.counters.minimizers = getInt(c, "minimizers", cw);
  r.counters.nonMinimizers = getInt(c, "non_minimizers", cw);
  const Json& vs = field(j, "violations", where);
  if (!vs.is_array()) throw FormatError(where + ".violations: expected an array");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string vw = where + ".violations[" + std::to_string(i) + "]";
    Violation v;
    v.trial = getInt(vs[i], "trial", vw);
    v.kind = getString(vs[i], "kind", vw);
    v.gap = getNumber(vs[i], "gap", vw);
    v.detail = getString(vs[i], "detail", vw);
    if (const Json& t = field(vs[i], "t", vw); !t.is_null()) v.t = matrixFromJson(t, vw + ".t");
    if (const Json& x = field(vs[i], "x", vw); !x.is_null()) v.x = matrixFromJson(x, vw + ".x");
    r.violations.push_back(std::move(v));
  }
  return r;
}

Json verifyReport(const CampaignConfig& config, const CampaignResult& result) {
  Json doc = reportHeader("verify");
  doc["config"] = configToJson(config);
  doc["result"] = campaignToJson(result);
  return doc;
}

// ---------------------------------------------------------------------------
// reproductions

Assertion Assertion::numeric(std::string name, double expected, double observed,
                             double tolerance) {
  const bool pass = std::isfinite(observed) && std::abs(observed - expected) <= tolerance;
  return {std::move(name), expected, number(observed), tolerance, pass};
}

Assertion Assertion::boolean(std::string name, bool expected, bool observed) {
  return {std::move(name), expected, observed, 0.0, expected == observed};
}

bool Reproduction::passed() const {
  return std::all_of(assertions.begin(), assertions.end(),
                     [](const Assertion& a) { return a.pass; });
}

Reproduction reproduceTwistedBlock(double a) {
  if (!(a > 3.0) || !std::isfinite(a)) {
    throw InputError("ex31 requires a > 3 (hypothesis of the example); got a = " +
                     std::to_string(a));
  }
  ComplexMatrix t = ComplexMatrix::Zero(3, 3);
  t(0, 0) = a;
  t(1, 1) = 1.0;
  t(2, 2) = 1.0;
  ComplexMatrix x = ComplexMatrix::Zero(3, 3);
  x(0, 0) = 1.0;
  x(1, 2) = -1.0;
  x(2, 1) = -1.0;

  Reproduction out{"ex31", {{"a", a}}, analyze(t), {}};
  const PartialIsometry x0 = PartialIsometry::validate(x);
  const ComplexMatrix eye = ComplexMatrix::Identity(3, 3);
  const ComplexMatrix diff = t - x;
  auto& as = out.assertions;

  as.push_back(Assertion::numeric("polar factor is the identity (max |V - I|)", 0.0,
                                  maxAbsDiff(out.report.polar.factor.matrix(), eye), 1e-12));
  as.push_back(Assertion::numeric("||T - I|| = a - 1", a - 1.0, out.report.polar.distToPolar, 1e-10));
  as.push_back(Assertion::numeric("inner block ||[[1,1],[1,1]]|| = 2", 2.0,
                                  opNorm(diff.bottomRightCorner(2, 2)), 1e-10));
  as.push_back(Assertion::numeric("||T - X0|| = max(a - 1, 2) = a - 1", a - 1.0, opNorm(diff), 1e-10));
  as.push_back(Assertion::boolean("X0 != I", true, maxAbsDiff(x, eye) > 0.5));
  as.push_back(Assertion::boolean("ker T = ker X0 = {0}", true, rankTol(t) == 3 && x0.rank() == 3));
  as.push_back(Assertion::numeric("j(V*V, X0*X0) = 0", 0.0,
                                  indexJ(out.report.polar.factor.initialProjection(),
                                         x0.initialProjection())
                                      .j,
                                  0.0));
  as.push_back(Assertion::boolean("X0 attains the constrained minimum", true,
                                  isConstrainedMinimizer(t, x0)));
  as.push_back(Assertion::boolean("||T - X0|| + ||X0|| = ||T||", true,
                                  triangleEqualityWithIsometry(x0, diff)));
  as.push_back(Assertion::boolean("polar factor is a global best", true,
                                  out.report.polarIsGlobalBest));
  return out;
}

Reproduction reproduceSplitConditionII() {
  ComplexMatrix t = ComplexMatrix::Zero(2, 2);
  t(0, 0) = 1.0;
  t(1, 1) = 0.5;
  ComplexMatrix x = ComplexMatrix::Zero(2, 2);
  x(0, 0) = -1.0;
  x(1, 1) = 1.0;

  Reproduction out{"remark33", Json::object(), analyze(t), {}};
  const PartialIsometry x0 = PartialIsometry::validate(x);
  const ComplexMatrix diff = t - x;
  const double c = opNorm(diff);
  const double gamma = reducedMinModulus(t);
  const ComplexVector e1 = ComplexVector::Unit(2, 0);
  const ComplexVector e2 = ComplexVector::Unit(2, 1);
  const ConditionResult cond1 = checkMinimizerConditionI(t, x0);
  const ConditionResult cond2 = checkMinimizerConditionII(t, x0);
  auto& as = out.assertions;

  as.push_back(Assertion::numeric("gamma(T) = 1/2", 0.5, gamma, 1e-12));
  as.push_back(Assertion::numeric("||T - V|| = 1/2", 0.5, out.report.polar.distToPolar, 1e-12));
  as.push_back(Assertion::numeric("||T - X0|| = 2", 2.0, c, 1e-12));
  as.push_back(Assertion::numeric("j(V*V, X0*X0) = 0", 0.0,
                                  indexJ(out.report.polar.factor.initialProjection(),
                                         x0.initialProjection())
                                      .j,
                                  0.0));
  as.push_back(Assertion::numeric("||T - X0|| X0 e1 + (T - X0) e1 = 0", 0.0,
                                  (c * x * e1 + diff * e1).norm(), 1e-12));
  as.push_back(Assertion::numeric("(gamma X0 - T) e2 = 0", 0.0, (gamma * x * e2 - t * e2).norm(),
                                  1e-12));
  as.push_back(Assertion::boolean("condition (ii) has no common solution", false, cond2.holds));
  as.push_back(Assertion::boolean("condition (i) fails", false, cond1.holds));
  as.push_back(Assertion::boolean("X0 attains the constrained minimum", false,
                                  isConstrainedMinimizer(t, x0)));
  return out;
}

Json reproductionReport(const Reproduction& r) {
  Json doc = reportHeader("reproduce");
  doc["name"] = r.name;
  doc["parameters"] = r.parameters;
  doc["input_digest"] = matrixDigest(r.report.input);
  doc["report"] = nearnessToJson(r.report);
  Json assertions = Json::array();
  for (const Assertion& a : r.assertions) {
    assertions.push_back({{"name", a.name},
                          {"expected", a.expected},
                          {"observed", a.observed},
                          {"tolerance", a.tolerance},
                          {"pass", a.pass}});
  }
  doc["assertions"] = std::move(assertions);
  doc["passed"] = r.passed();
  return doc;
}

}  // namespace pinear::cli
