#ifndef HALFSPACE_ACCEPTANCE_HPP
#define HALFSPACE_ACCEPTANCE_HPP

#include <string>
#include <vector>

namespace halfspace {

struct CriterionResult {
    int id;
    std::string name;
    bool passed;
    std::string detail;
    double seconds;
};

struct Scorecard {
    std::vector<CriterionResult> results;
    bool all_passed() const;
    std::string to_json() const;
};

/// Runs the full acceptance suite. Deterministic for a fixed seed.
Scorecard run_acceptance(unsigned seed = 12345);

}  // namespace halfspace

#endif
