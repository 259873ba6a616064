#pragma once

#include <functional>
#include <string>
#include <vector>

#include "blockfree/count_cache.hpp"

namespace blockfree::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    /// Include the large table rows (2^12, 2^14 for tables 1-2; 2^10 for table 3).
    bool slow = false;
    unsigned seed = 20240611u;
};

/// One named check of the full suite.
struct Criterion {
    std::string name;
    std::function<CheckResult(CountCache&, const Options&)> run;
};

/// Every acceptance criterion, in order.
std::vector<Criterion> full_suite();
/// Small-n oracle equivalence, eta roots, saddle identities and the
/// practicality characterization up to n = 10.
std::vector<Criterion> quick_suite();

/// Runs the criteria, calling report after each one.
std::vector<CheckResult> run(const std::vector<Criterion>& suite, CountCache& cache, const Options& options,
                             const std::function<void(const CheckResult&)>& report = {});

std::string format_result(const CheckResult& result);

}  // namespace blockfree::verify
