#include "pinear/cli/commands.hpp"

#include <iomanip>
#include <ostream>

#include <CLI11.hpp>

#include "pinear/cli/report.hpp"

namespace pinear::cli {

namespace {

void printMatrix(std::ostream& os, const char* label, const ComplexMatrix& m) {
  os << label << ":\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << "  ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      os << std::setw(26) << m(i, j).real() << (m(i, j).imag() < 0 ? " - " : " + ")
         << std::setw(24) << std::abs(m(i, j).imag()) << "i";
    }
    os << '\n';
  }
}

void printCondition(std::ostream& os, const char* label, const ConditionResult& c) {
  os << label << ": " << (c.holds ? "holds" : "fails") << " (residual " << c.residual << ")\n";
}

void printNearnessTable(std::ostream& os, const NearnessReport& r) {
  os << std::setprecision(17);
  printMatrix(os, "T", r.input);
  os << "||T||                      " << r.polar.norm << '\n';
  os << "gamma(T)                   ";
  if (r.polar.gamma) {
    os << *r.polar.gamma << '\n';
  } else {
    os << "undefined (T = 0)\n";
  }
  os << "||T - V|| (direct)         " << r.polar.distToPolar << '\n';
  os << "max(1 - gamma, ||T|| - 1)  " << r.distFormula << '\n';
  os << "distance to all isometries " << r.wuDistance << '\n';
  os << "polar factor global best   " << (r.polarIsGlobalBest ? "yes" : "no") << '\n';
  printMatrix(os, "V", r.polar.factor.matrix());
  if (r.wuMinimizer) {
    printMatrix(os, "cutoff minimizer V phi(|T|)", r.wuMinimizer->matrix());
    os << "||T - V phi(|T|)||         " << r.wuMinimizerDistance << '\n';
  }
  printCondition(os, "condition (i) for V ", r.conditionI);
  printCondition(os, "condition (ii) for V", r.conditionII);
  os << "triangle equality for V    " << (r.triangleEquality ? "yes" : "no") << '\n';
  os << "criterion                  " << kCriterionLabel << '\n';
}

void printAssertions(std::ostream& os, const Reproduction& r) {
  for (const Assertion& a : r.assertions) {
    os << (a.pass ? "PASS  " : "FAIL  ") << a.name << "  (observed " << a.observed.dump()
       << ", expected " << a.expected.dump() << ")\n";
  }
}

void printCampaignTable(std::ostream& os, const CampaignConfig& c, const CampaignResult& r) {
  os << std::setprecision(17);
  os << "theorem        " << r.theorem << '\n'
     << "ensemble       " << toString(c.ensemble) << "  n=" << c.n << "  trials=" << c.trials
     << "  budget=" << c.searchBudget << "  seed=" << c.seed << "  tol=" << c.tol << '\n'
     << "trials run     " << r.trialsRun << '\n'
     << "min gap        " << r.minGapObserved << '\n'
     << "skipped        " << r.counters.skipped << '\n'
     << "regimes        holds=" << r.counters.regimeHolds << " fails=" << r.counters.regimeFails
     << '\n'
     << "corpus         minimizers=" << r.counters.minimizers
     << " non-minimizers=" << r.counters.nonMinimizers << '\n'
     << "violations     " << r.violations.size() << '\n'
     << "elapsed (s)    " << r.elapsedSeconds << '\n';
  for (const Violation& v : r.violations) {
    os << "  trial " << v.trial << "  " << v.kind << "  gap " << v.gap << "  " << v.detail << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Best approximation of square complex matrices by partial isometries in the "
               "operator norm",
               kToolName};
  app.set_version_flag("--version", toolVersion());
  app.require_subcommand(1);

  std::string format = "json";
  auto addFormat = [&format](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
  };

  // analyze
  auto* analyzeCmd = app.add_subcommand("analyze", "Analyze one matrix file");
  std::string file;
  double tol = 0.0;
  analyzeCmd->add_option("file", file, "Matrix file (JSON)")->required();
  auto* tolOpt =
      analyzeCmd->add_option("--tol", tol, "Rank tolerance")->check(CLI::PositiveNumber);
  addFormat(analyzeCmd);

  // reproduce
  auto* reproduceCmd = app.add_subcommand("reproduce", "Reproduce a worked example");
  std::string example;
  double a = 4.0;
  reproduceCmd->add_option("name", example, "Example name")
      ->required()
      ->check(CLI::IsMember({"ex31", "remark33"}));
  auto* aOpt = reproduceCmd->add_option("--a", a, "Parameter a of ex31 (a > 3)")
                   ->capture_default_str();
  addFormat(reproduceCmd);

  // verify
  auto* verifyCmd = app.add_subcommand("verify", "Run a randomized verification campaign");
  std::string theorem;
  CampaignConfig config;
  std::string ensemble = "gaussian";
  verifyCmd->add_option("theorem", theorem, "Statement to verify")
      ->required()
      ->check(CLI::IsMember({"principal", "dichotomy", "characterization"}));
  verifyCmd->add_option("--n", config.n, "Dimension")->capture_default_str();
  verifyCmd->add_option("--trials", config.trials, "Number of trials")->capture_default_str();
  verifyCmd->add_option("--budget", config.searchBudget, "Random candidates per search")
      ->capture_default_str();
  verifyCmd->add_option("--seed", config.seed, "Seed")->capture_default_str();
  verifyCmd->add_option("--tol", config.tol, "Violation tolerance for search-based checks")
      ->capture_default_str();
  verifyCmd->add_option("--ensemble", ensemble,
                        "gaussian | diagonal | rankDeficient | nearBoundary")
      ->capture_default_str();
  verifyCmd->add_option("--workers", config.workers, "Worker threads (0 = all cores)")
      ->capture_default_str();
  addFormat(verifyCmd);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const bool table = format == "table";
  try {
    if (*analyzeCmd) {
      const ComplexMatrix t = readMatrixFile(file);
      const NearnessReport report = analyze(t, tolOpt->count() ? Tol(tol) : Tol());
      if (table) {
        printNearnessTable(out, report);
      } else {
        out << analyzeReport(report).dump(2) << '\n';
      }
      return kExitOk;
    }

    if (*reproduceCmd) {
      if (example == "remark33" && aOpt->count()) {
        err << "error: --a applies to ex31 only\n";
        return kExitUsage;
      }
      const Reproduction r =
          example == "ex31" ? reproduceTwistedBlock(a) : reproduceSplitConditionII();
      if (table) {
        printNearnessTable(out, r.report);
        printAssertions(out, r);
      } else {
        printAssertions(err, r);
        out << reproductionReport(r).dump(2) << '\n';
      }
      return r.passed() ? kExitOk : kExitViolation;
    }

    if (*verifyCmd) {
      config.ensemble = parseEnsemble(ensemble);
      config.validate();
      CampaignResult result;
      if (theorem == "principal") {
        result = verifyPrincipalTheorem(config);
      } else if (theorem == "dichotomy") {
        result = verifySpectralDichotomy(config);
      } else {
        result = verifyCharacterization(config);
      }
      if (table) {
        printCampaignTable(out, config, result);
      } else {
        out << verifyReport(config, result).dump(2) << '\n';
      }
      if (!result.upheld()) {
        err << result.violations.size() << " violation(s); first: trial "
            << result.violations.front().trial << " (" << result.violations.front().kind
            << ")\n";
        return kExitViolation;
      }
      return kExitOk;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitViolation;
  }
  return kExitUsage;
}

}  // namespace pinear::cli
