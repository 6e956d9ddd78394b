#pragma once

#include <string>
#include <vector>

#include "pinear/cli/matrix_file.hpp"
#include "pinear/nearness.hpp"
#include "pinear/oracle.hpp"

namespace pinear::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolName = "pinear";

std::string toolVersion();

/// Common header: schema_version, tool, tool_version, kind.
Json reportHeader(const std::string& kind);

/// Analyze report body. Non-finite numbers are written as null.
Json nearnessToJson(const NearnessReport& report);
/// Rebuilds a report from nearnessToJson output. Throws FormatError.
NearnessReport nearnessFromJson(const Json& j);

/// Full analyze document: header + input_digest + body.
Json analyzeReport(const NearnessReport& report);

Json configToJson(const CampaignConfig& config);
CampaignConfig configFromJson(const Json& j);

Json campaignToJson(const CampaignResult& result);
CampaignResult campaignFromJson(const Json& j);

/// Full verify document: header + config echo + result.
Json verifyReport(const CampaignConfig& config, const CampaignResult& result);

/// One checked statement of a reproduction.
struct Assertion {
  std::string name;
  Json expected;
  Json observed;
  double tolerance = 0.0;  // numeric assertions only
  bool pass = false;

  static Assertion numeric(std::string name, double expected, double observed, double tolerance);
  static Assertion boolean(std::string name, bool expected, bool observed);
};

struct Reproduction {
  std::string name;
  Json parameters;
  NearnessReport report;
  std::vector<Assertion> assertions;

  bool passed() const;
};

/// `ex31`: T = diag(a, 1, 1) against the twisted X0 = 1 (+) [[0,-1],[-1,0]],
/// a constrained minimizer different from the polar factor.
/// Throws InputError unless a > 3.
Reproduction reproduceTwistedBlock(double a);

/// `remark33`: T = diag(1, 1/2), X0 = diag(-1, 1). Each half of condition (ii)
/// has a solution, but not a common one, and X0 is no minimizer.
Reproduction reproduceSplitConditionII();

Json reproductionReport(const Reproduction& r);

}  // namespace pinear::cli
