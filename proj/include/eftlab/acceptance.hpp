#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eftlab {

struct AcceptanceOutcome {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the full acceptance suite, printing one pass/fail line per criterion
/// to `log`. Returns the outcomes; failures leave the suite running.
std::vector<AcceptanceOutcome> run_acceptance(std::ostream& log);

int count_failures(const std::vector<AcceptanceOutcome>& outcomes);

}  // namespace eftlab
