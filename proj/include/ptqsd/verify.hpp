#pragma once

// Invariant suites over fixed seeds, one per library module. Each check
// reports the worst value observed against its bound.

#include <string>
#include <string_view>
#include <vector>

namespace ptqsd {

struct InvariantResult {
    std::string suite;
    std::string name;
    double observed;
    double bound;
    // True when observed must stay below the bound, false when above.
    bool upper_bound;
    bool passed;
};

// "core-algebra", "pt-core", "protocol", "simulate".
const std::vector<std::string>& suite_names();

// Runs one suite or "all". Throws std::invalid_argument for unknown names.
std::vector<InvariantResult> run_suite(std::string_view name);

}  // namespace ptqsd
