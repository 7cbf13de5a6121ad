#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace cz {

enum class Provenance { paper, derived, trivial };
std::string_view to_string(Provenance p);

struct Check {
  std::string name;
  double value = 0.0;
  std::optional<double> expected;  // pass iff |value - expected| <= tolerance
  std::optional<double> lo;        // otherwise pass iff lo < value < hi (missing ends are open)
  std::optional<double> hi;
  double tolerance = 0.0;
  bool pass = false;
  Provenance provenance = Provenance::derived;
  std::string variant;             // constant variant the check was computed with, if any
  std::string note;
};

Check check_near(std::string name, double value, double expected, double tol, Provenance prov,
                 std::string variant = {});
Check check_below(std::string name, double value, double bound, Provenance prov, std::string variant = {});
Check check_above(std::string name, double value, double bound, Provenance prov, std::string variant = {});

struct CriterionResult {
  int id = 0;                 // 0 collects supplementary cross-checks
  std::string title;
  std::string requirement;    // tolerances in words
  std::vector<Check> checks;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  bool runtime_pass = true;
  bool pass = false;          // all checks and the runtime budget
  std::string error;          // exception text if the criterion aborted
};

struct SuiteOptions {
  int grid_N = 256;
  std::uint64_t seed = 0;
  unsigned threads = 0;       // 0: hardware concurrency
  std::vector<int> only;      // restrict to these criterion ids (empty: all)
};

struct ReportDocument {
  std::vector<CriterionResult> criteria;
  SuiteOptions options;
  bool overall_pass = false;
  std::string timestamp;
};

ReportDocument run_suite(const SuiteOptions& opt = {});

/// Checks, environment and overall flag; wall-clock data lives under "timing" and
/// "timestamp" so the rest of the document is reproducible byte for byte.
nlohmann::json to_json(const ReportDocument& doc);

/// One line per criterion, e.g. "PASS  c03  sphere trace formula ...".
std::string summary_lines(const ReportDocument& doc);

}  // namespace cz
