#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace magspec {

// One acceptance criterion: a measured number checked against a pinned
// bound, timed. `measured` is the worst observed error of the criterion's
// main table; side conditions that do not fit that shape (certificates,
// feature detection, sub-checks with their own tolerances) fold into `pass`
// and are described in `detail` when they fail.
struct CriterionResult {
  std::string id;           // "C01" .. "C11"
  std::string description;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

// selector: "all", "closedform" (C01..C07), "properties" (C08..C11), or a
// single id such as "C04". Unknown selectors throw ConfigError. Every
// criterion is wrapped so a thrown solver error fails that row instead of
// aborting the run. `seed` offsets the stream seeds of the randomized
// criteria; 0 is the pinned default suite.
std::vector<CriterionResult> run_acceptance(const std::string& selector = "all",
                                            unsigned seed = 0);

// One line per criterion plus a summary line; returns the number of fails.
int report_acceptance(const std::vector<CriterionResult>& rows, std::ostream& out);

}  // namespace magspec
