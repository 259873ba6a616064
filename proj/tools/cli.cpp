#include "cli.hpp"

#include <cmath>
#include <iostream>
#include <optional>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "blockfree/asymptotics.hpp"
#include "blockfree/count_cache.hpp"
#include "blockfree/enum_oracle.hpp"
#include "blockfree/exact_counts.hpp"
#include "blockfree/tables.hpp"
#include "blockfree/verification.hpp"

namespace blockfree::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

BlockSizeSet parse_set(const std::string& spec) {
    try {
        return BlockSizeSet::parse(spec);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

CountCache make_cache(const std::optional<std::string>& dir, std::ostream& err) {
    return CountCache(CountCache::resolve_dir(dir), [&err](const std::string& msg) { err << "warning: " << msg << '\n'; });
}

std::string runtime_hint(tables::TableId id, std::int64_t n) {
    if (id == tables::TableId::impractical) {
        return fmt::format("the rough-set-partition triangle up to n={} costs O(n^3) big-integer products "
                           "(several minutes at n=1024)",
                           n);
    }
    return fmt::format("exact counts up to n={} cost O(n^2) big-integer products (minutes at n=4096, "
                       "hours at n=16384)",
                       n);
}

int cmd_table(int which, std::optional<int> exponent, const std::string& format_text, bool slow,
              const std::optional<std::string>& cache_dir, std::ostream& out, std::ostream& err) {
    tables::TableId id;
    tables::Format format;
    try {
        id = tables::parse_table_id(which);
        format = tables::parse_format(format_text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const int cap = tables::default_cap(id);
    const int max_exp = exponent.value_or(cap);
    std::vector<std::int64_t> sizes;
    try {
        sizes = tables::row_sizes(max_exp);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    auto cache = make_cache(cache_dir, err);
    if (!slow) {
        for (auto n : sizes) {
            if (n > (std::int64_t{1} << cap) && !tables::cache_covers(id, n, cache)) {
                err << "row n=" << n << " is beyond the default cap 2^" << cap << " and not cached: "
                    << runtime_hint(id, n) << ". Re-run with --slow to compute it.\n";
                return kUsage;
            }
        }
    }
    const auto rows = tables::compute_table(id, max_exp, cache);
    out << tables::render(id, rows, format);
    return kOk;
}

int cmd_count(std::int64_t n, const std::string& spec, bool want_bell, bool want_practical, bool want_impractical,
              const std::optional<std::string>& cache_dir, std::ostream& out, std::ostream& err) {
    if (n < 0) throw UsageError("n must be >= 0");
    if (int(want_bell) + int(want_practical) + int(want_impractical) > 1) {
        throw UsageError("--bell, --practical and --impractical are mutually exclusive");
    }
    if (want_bell) {
        out << bell(n).get_str() << '\n';
        return kOk;
    }
    if (want_practical || want_impractical) {
        auto cache = make_cache(cache_dir, err);
        const auto counts = cache.practical_counts(n);
        out << (want_practical ? counts.p[n] : counts.i[n]).get_str() << '\n';
        return kOk;
    }
    out << count_avoiding(n, parse_set(spec)).get_str() << '\n';
    return kOk;
}

}  // namespace

nlohmann::ordered_json estimate_report(std::int64_t n, const BlockSizeSet& set, const GapBounds& gap) {
    const auto sp = lambert_w(n);
    const double r = sp.r;
    const double lo = gap.delta1 * r;
    const double hi = gap.delta2 * r;
    const auto offending = set.first_in(lo, hi);
    const auto est = ratio_estimates(n, set, Admissibility::unchecked, gap);
    nlohmann::ordered_json j;
    j["n"] = n;
    j["set"] = set.to_string();
    j["r"] = r;
    j["residual"] = sp.residual;
    j["exp_minus_r"] = std::exp(-r);
    j["alpha"] = alpha_eval(set, r, 0);
    j["alpha_prime"] = alpha_eval(set, r, 1);
    j["ln_estimate"] = log_main_term(n, set, Admissibility::unchecked, gap).ln;
    j["ratio_estimate"] = est.main;
    j["error_term"] = est.error_term;
    j["singleton_main"] = est.singleton_main;
    j["practical_main"] = est.practical_main;
    j["admissible"] = !offending.has_value();
    j["excluded_interval"] = {lo, hi};
    return j;
}

namespace {

int cmd_estimate(std::int64_t n, const std::string& spec, bool json, bool force, const GapBounds& gap,
                 std::ostream& out, std::ostream& err) {
    if (n < 1) throw UsageError("n must be >= 1");
    const auto set = parse_set(spec);
    try {
        check_gap_bounds(gap);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (!force) {
        try {
            (void)log_main_term(n, set, Admissibility::enforce, gap);
        } catch (const InadmissibleSetError& e) {
            err << "inadmissible: " << e.what() << " (use --force to evaluate anyway)\n";
            return kInadmissible;
        }
    }
    const auto report = estimate_report(n, set, gap);
    if (json) {
        out << report.dump(2) << '\n';
        return kOk;
    }
    for (const auto& [key, value] : report.items()) {
        if (value.is_number_float()) {
            out << fmt::format("{:<18} {:.10g}\n", key, value.get<double>());
        } else if (value.is_array()) {
            out << fmt::format("{:<18} [{:.10g}, {:.10g}]\n", key, value[0].get<double>(), value[1].get<double>());
        } else if (value.is_string()) {
            out << fmt::format("{:<18} {}\n", key, value.get<std::string>());
        } else {
            out << fmt::format("{:<18} {}\n", key, value.dump());
        }
    }
    return kOk;
}

int cmd_oracle(int n, const std::string& spec, bool practical, bool check, std::ostream& out, std::ostream& err) {
    try {
        oracle::check_cap(n);
    } catch (const std::out_of_range& e) {
        throw UsageError(e.what());
    }
    BigCount brute;
    BigCount recurrence;
    if (practical) {
        brute = oracle::count_practical_bruteforce(n);
        if (check) recurrence = practical_counts(n).p[n];
    } else {
        const auto set = parse_set(spec);
        brute = oracle::count_avoiding_bruteforce(n, set);
        if (check) recurrence = count_avoiding(n, set);
    }
    out << brute.get_str() << '\n';
    if (check && brute != recurrence) {
        err << "mismatch: recurrence gives " << recurrence.get_str() << '\n';
        return kVerificationFailed;
    }
    return kOk;
}

int cmd_verify(const std::string& level, bool slow, const std::optional<std::string>& cache_dir, std::ostream& out,
               std::ostream& err) {
    if (level != "quick" && level != "full") throw UsageError("verify level must be quick or full");
    auto cache = make_cache(cache_dir, err);
    verify::Options options;
    options.slow = slow;
    const auto suite = level == "quick" ? verify::quick_suite() : verify::full_suite();
    const auto results =
        verify::run(suite, cache, options, [&](const verify::CheckResult& r) { out << verify::format_result(r) << '\n'; });
    std::size_t failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    out << fmt::format("{} checks, {} failed\n", results.size(), failed);
    return failed == 0 ? kOk : kVerificationFailed;
}

int cmd_cache(const std::string& action, const std::optional<std::string>& cache_dir, std::ostream& out,
              std::ostream& err) {
    auto cache = make_cache(cache_dir, err);
    if (action == "inspect") {
        out << "cache directory: " << cache.dir().string() << '\n';
        for (const auto& e : cache.inspect()) {
            out << fmt::format("{}  {} bytes  {}{}\n", e.file.filename().string(), e.bytes, e.header,
                               e.valid ? "" : "  (invalid)");
        }
        return kOk;
    }
    if (action == "clear") {
        out << "removed " << cache.clear() << " file(s) from " << cache.dir().string() << '\n';
        return kOk;
    }
    throw UsageError("cache action must be inspect or clear");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact counts and asymptotic estimates for set partitions with forbidden block sizes", "blockfree"};
    app.require_subcommand(1);
    std::optional<std::string> cache_dir;
    app.add_option("--cache-dir", cache_dir,
                   std::string("cache directory (overrides $") + CountCache::kEnvVar + ", default " +
                       CountCache::kDefaultDir + ")");

    int table_which = 1;
    std::optional<int> table_exp;
    std::string table_format = "markdown";
    bool slow = false;
    auto* table = app.add_subcommand("table", "reproduce a proportion table (1, 2 or 3)");
    table->add_option("which", table_which, "table number")->required();
    table->add_option("-e,--max-exponent", table_exp, "largest row n = 2^e (default 10, or 8 for table 3)");
    table->add_option("--format", table_format, "csv, json or markdown");
    table->add_flag("--slow", slow, "allow rows beyond the default cap");

    std::int64_t n = 0;
    std::string spec = "empty";
    bool want_bell = false, want_practical = false, want_impractical = false;
    auto* count = app.add_subcommand("count", "exact number of partitions avoiding a block-size set");
    count->add_option("n", n, "set size")->required();
    count->add_option("set", spec, "forbidden sizes: 'empty', '1..m' or '1,3,7'");
    count->add_flag("--bell", want_bell, "Bell number B_n");
    count->add_flag("--practical", want_practical, "practical partitions P_n");
    count->add_flag("--impractical", want_impractical, "impractical partitions I_n");

    bool json = false, force = false;
    GapBounds gap;
    auto* estimate = app.add_subcommand("estimate", "saddle-point estimate for B_{n,S}");
    estimate->add_option("n", n, "set size")->required();
    estimate->add_option("set", spec, "forbidden sizes");
    estimate->add_flag("--json", json, "JSON output");
    estimate->add_flag("--force", force, "evaluate even when S meets [delta1 r, delta2 r]");
    estimate->add_option("--delta1", gap.delta1, "lower gap factor (< eta1)");
    estimate->add_option("--delta2", gap.delta2, "upper gap factor (> eta2)");

    int oracle_n = 0;
    bool oracle_practical = false, oracle_check = false;
    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force enumeration count (n <= 13)");
    oracle_cmd->add_option("n", oracle_n, "set size")->required();
    oracle_cmd->add_option("set", spec, "forbidden sizes");
    oracle_cmd->add_flag("--practical", oracle_practical, "count practical partitions instead");
    oracle_cmd->add_flag("--check", oracle_check, "also compare with the recurrence");

    std::string level = "quick";
    auto* verify_cmd = app.add_subcommand("verify", "run invariant checks");
    verify_cmd->add_option("level", level, "quick or full");
    verify_cmd->add_flag("--slow", slow, "include large table rows");

    std::string action = "inspect";
    auto* cache_cmd = app.add_subcommand("cache", "inspect or clear the disk cache");
    cache_cmd->add_option("action", action, "inspect or clear");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*table) return cmd_table(table_which, table_exp, table_format, slow, cache_dir, out, err);
        if (*count) return cmd_count(n, spec, want_bell, want_practical, want_impractical, cache_dir, out, err);
        if (*estimate) return cmd_estimate(n, spec, json, force, gap, out, err);
        if (*oracle_cmd) return cmd_oracle(oracle_n, spec, oracle_practical, oracle_check, out, err);
        if (*verify_cmd) return cmd_verify(level, slow, cache_dir, out, err);
        if (*cache_cmd) return cmd_cache(action, cache_dir, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace blockfree::cli
