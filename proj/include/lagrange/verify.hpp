#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lagrange {

struct CriterionResult {
    int index = 0;
    std::string title;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

struct VerifyReport {
    std::vector<CriterionResult> results;
    bool all_pass = false;
    double seconds = 0.0;
};

/* Run the full acceptance suite and stream one [PASS]/[FAIL] line per
 * criterion (in criterion order) to `out`, followed by a summary line.
 * All sampling uses fixed seeds, so the suite is deterministic. */
VerifyReport run_acceptance(std::ostream& out);

} // namespace lagrange
