#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "blockfree/asymptotics.hpp"
#include "blockfree/block_size_set.hpp"

namespace blockfree::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kInadmissible = 3 };

/// Runs the tool with argv-style arguments (args[0] is the program name).
/// Report printed by `estimate`: saddle point, alpha terms, log estimate,
/// ratio estimates and admissibility. Never throws on inadmissible sets.
nlohmann::ordered_json estimate_report(std::int64_t n, const BlockSizeSet& set, const GapBounds& gap = {});

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blockfree::cli
