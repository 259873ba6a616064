#include "blockfree/verification.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <span>
#include <sstream>

#include <fmt/format.h>

#include "blockfree/asymptotics.hpp"
#include "blockfree/enum_oracle.hpp"
#include "blockfree/reference_values.hpp"
#include "blockfree/tables.hpp"

namespace blockfree::verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

BlockSizeSet random_subset(std::int64_t n, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(0.5);
    std::vector<std::int64_t> elems;
    for (std::int64_t k = 1; k <= n; ++k) {
        if (coin(rng)) elems.push_back(k);
    }
    return BlockSizeSet(std::move(elems));
}

CheckResult table_check(std::string name, tables::TableId id, std::span<const reference::Row> reference,
                        std::int64_t default_max_n, std::int64_t slow_max_n, double time_limit, CountCache& cache,
                        const Options& options) {
    CheckResult res{std::move(name), true, {}, 0.0};
    const auto start = Clock::now();
    const auto max_n = options.slow ? slow_max_n : default_max_n;
    std::ostringstream detail;
    int rows = 0;
    for (const auto& ref : reference) {
        if (ref.n > max_n) continue;
        const auto row = tables::compute_row(id, ref.n, cache);
        const auto cells = tables::format_cells(id, row);
        std::vector<std::string_view> want{ref.exact, ref.approx, ref.rel_error};
        if (!ref.extra.empty()) want.push_back(ref.extra);
        for (std::size_t c = 0; c < want.size(); ++c) {
            if (cells[c + 1] != want[c]) {
                res.passed = false;
                detail << " n=" << ref.n << " col" << c + 2 << ": got " << cells[c + 1] << " want " << want[c] << ";";
            }
        }
        ++rows;
    }
    res.seconds = seconds_since(start);
    if (!options.slow && res.seconds > time_limit) {
        res.passed = false;
        detail << fmt::format(" runtime {:.1f}s exceeds {:.0f}s;", res.seconds, time_limit);
    }
    res.detail = fmt::format("{} rows up to n={}", rows, max_n) + detail.str();
    return res;
}

CheckResult eta_check(CountCache&, const Options&) {
    CheckResult res{"eta roots", false, {}, 0.0};
    const auto start = Clock::now();
    const auto eta = eta_roots();
    const double g1 = std::abs(eta_equation(eta.eta1));
    const double g2 = std::abs(eta_equation(eta.eta2));
    const bool digits = fmt::format("{:.7f}", eta.eta1) == fmt::format("{:.7f}", reference::kEta1) &&
                        fmt::format("{:.7f}", eta.eta2) == fmt::format("{:.7f}", reference::kEta2);
    res.passed = digits && g1 <= 1e-12 && g2 <= 1e-12 && eta.eta1 > 0 && eta.eta1 < 1 && eta.eta2 > 1;
    res.detail = fmt::format("eta1={:.10f} eta2={:.10f} residuals {:.1e} {:.1e}", eta.eta1, eta.eta2, g1, g2);
    res.seconds = seconds_since(start);
    return res;
}

CheckResult oracle_counts_check(std::string name, int n_max, int sets_per_n, double time_limit,
                                const Options& options) {
    CheckResult res{std::move(name), true, {}, 0.0};
    const auto start = Clock::now();
    std::mt19937_64 rng(options.seed);
    std::ostringstream detail;
    int compared = 0;
    for (int n = 0; n <= n_max; ++n) {
        const auto hist = oracle::shape_histogram(n);
        for (int t = 0; t < sets_per_n; ++t) {
            const auto s = random_subset(n, rng);
            std::uint64_t brute = 0;
            for (const auto& [shape, count] : hist) {
                bool ok = true;
                for (int a : shape.block_sizes) ok = ok && !s.contains(a);
                if (ok) brute += count;
            }
            const auto exact = count_avoiding(n, s);
            ++compared;
            if (exact != BigCount(static_cast<unsigned long>(brute))) {
                res.passed = false;
                detail << " n=" << n << " S={" << s.to_string() << "}: " << exact.get_str() << " vs " << brute << ";";
            }
        }
    }
    res.seconds = seconds_since(start);
    if (res.seconds > time_limit) {
        res.passed = false;
        detail << fmt::format(" runtime {:.1f}s exceeds {:.0f}s;", res.seconds, time_limit);
    }
    res.detail = fmt::format("{} (n, S) pairs, n <= {}", compared, n_max) + detail.str();
    return res;
}

CheckResult egf_check(CountCache&, const Options&) {
    CheckResult res{"generating function coefficients", true, {}, 0.0};
    const auto start = Clock::now();
    constexpr int kN = 30;
    std::ostringstream detail;
    for (const char* spec : {"empty", "1", "1,2", "2,5"}) {
        const auto s = BlockSizeSet::parse(spec);
        const auto coeffs = egf_coefficients(kN, s);
        const auto counts = count_avoiding_sequence(kN, s);
        mpz_class fact = 1;
        for (int n = 0; n <= kN; ++n) {
            if (n > 0) fact *= n;
            if (coeffs[n] * fact != mpq_class(counts[n])) {
                res.passed = false;
                detail << " S={" << spec << "} n=" << n << ";";
            }
        }
    }
    res.seconds = seconds_since(start);
    res.detail = "n <= 30, S in {empty, {1}, {1,2}, {2,5}}" + detail.str();
    return res;
}

CheckResult practicality_check(std::string name, int n_max) {
    CheckResult res{std::move(name), true, {}, 0.0};
    const auto start = Clock::now();
    std::size_t shapes = 0;
    std::size_t disagreements = 0;
    for (int n = 0; n <= n_max; ++n) {
        for (const auto& shape : oracle::integer_partitions(n)) {
            ++shapes;
            if (oracle::is_practical_greedy(shape) != oracle::is_practical_subset_sum(shape)) ++disagreements;
        }
    }
    res.passed = disagreements == 0;
    res.detail = fmt::format("{} shapes with n <= {}, {} disagreements", shapes, n_max, disagreements);
    res.seconds = seconds_since(start);
    return res;
}

CheckResult practical_consistency_check(CountCache& cache, const Options&) {
    CheckResult res{"practical count consistency", true, {}, 0.0};
    const auto start = Clock::now();
    constexpr std::int64_t kN = 256;
    std::ostringstream detail;
    try {
        const auto table = cache.rough_table(kN);
        const auto counts = practical_counts(table, kN);  // throws on dual-computation mismatch
        const auto bells = bell_sequence(kN);
        for (std::int64_t n = 0; n <= kN; ++n) {
            if (counts.p[n] + counts.i[n] != bells[n]) {
                res.passed = false;
                detail << " P+I!=B at n=" << n << ";";
            }
            if (n >= 1 && counts.i[n] < table.at(n, 1)) {
                res.passed = false;
                detail << " I<B_{n,1} at n=" << n << ";";
            }
            BigCount sum = 0;
            for (std::int64_t k = 0; k <= n; ++k) sum += binomial(n, k) * counts.p[k] * table.at(n - k, k + 1);
            if (sum != bells[n]) {
                res.passed = false;
                detail << " decomposition fails at n=" << n << ";";
            }
        }
        for (int n = 0; n <= 12; ++n) {
            if (oracle::count_practical_bruteforce(n) != counts.p[n]) {
                res.passed = false;
                detail << " brute-force P_" << n << " differs;";
            }
        }
    } catch (const std::exception& e) {
        res.passed = false;
        detail << " " << e.what();
    }
    res.seconds = seconds_since(start);
    res.detail = "n <= 256, brute force n <= 12" + detail.str();
    return res;
}

CheckResult impractical_trend_check(CountCache& cache, const Options&) {
    CheckResult res{"impractical excess over 1-rough decreases", true, {}, 0.0};
    const auto start = Clock::now();
    const auto counts = cache.practical_counts(256);
    const auto rough1 = cache.avoiding_sequence(256, BlockSizeSet::interval(1));
    std::ostringstream detail;
    double previous = INFINITY;
    for (std::int64_t n : {16, 64, 256}) {
        const BigCount diff = counts.i[n] - rough1[n];
        if (diff <= 0) {
            res.passed = false;
            detail << " n=" << n << ": I_n <= B_{n,1};";
            continue;
        }
        const double excess = (log_of_bigcount(diff) - log_of_bigcount(rough1[n])).value();
        detail << fmt::format(" n={}: {:.3e};", n, excess);
        if (!(excess < previous)) res.passed = false;
        previous = excess;
    }
    res.seconds = seconds_since(start);
    res.detail = "I_n/B_{n,1} - 1 at" + detail.str();
    return res;
}

CheckResult bell_asymptotic_check(CountCache& cache, const Options&) {
    CheckResult res{"Bell number asymptotic", true, {}, 0.0};
    const auto start = Clock::now();
    const auto bells = cache.avoiding_sequence(1024, BlockSizeSet{});
    std::ostringstream detail;
    for (std::int64_t n : {64, 256, 1024}) {
        const double r = lambert_w(n).r;
        const double err = relative_error(log_main_term(n, BlockSizeSet{}), log_of_bigcount(bells[n]));
        const double bound = 2.0 * std::exp(-r);
        detail << fmt::format(" n={}: {:.3e} (bound {:.3e});", n, err, bound);
        if (!(std::abs(err) <= bound)) res.passed = false;
    }
    res.seconds = seconds_since(start);
    res.detail = "|estimate/B_n - 1| <= 2 e^-r:" + detail.str();
    return res;
}

CheckResult saddle_check(std::string name, int samples, const Options& options) {
    CheckResult res{std::move(name), true, {}, 0.0};
    const auto start = Clock::now();
    std::mt19937_64 rng(options.seed ^ 0x5eedULL);
    std::uniform_int_distribution<std::int64_t> dist(1, 1'000'000'000);
    double worst_residual = 0.0;
    double worst_identity = 0.0;
    for (int t = 0; t < samples; ++t) {
        const auto n = dist(rng);
        const auto sp = lambert_w(n);
        const double nd = static_cast<double>(n);
        const double residual = std::abs(sp.r * std::exp(sp.r) - nd) / nd;
        const double identity = std::abs(std::exp(-sp.r) - sp.r / nd) / (sp.r / nd);
        worst_residual = std::max(worst_residual, residual);
        worst_identity = std::max(worst_identity, identity);
    }
    res.passed = worst_residual <= 1e-12 && worst_identity <= 1e-12;
    res.detail = fmt::format("{} random n <= 1e9; max |re^r-n|/n = {:.2e}, max rel |e^-r - r/n| = {:.2e}", samples,
                             worst_residual, worst_identity);
    res.seconds = seconds_since(start);
    return res;
}

CheckResult rough_bound_check(CountCache& cache, const Options&) {
    CheckResult res{"m-rough upper bound", true, {}, 0.0};
    const auto start = Clock::now();
    const auto table = cache.rough_table(200);
    std::ostringstream detail;
    int checked = 0;
    double min_slack = INFINITY;
    for (std::int64_t n = 1; n <= 200; ++n) {
        for (std::int64_t m = 0; 3 * m <= n; ++m) {
            const auto& count = table.at(n, m);
            if (count < 1) continue;
            const double slack = rough_upper_bound_log(n, m).ln - log_of_bigcount(count).ln;
            min_slack = std::min(min_slack, slack);
            ++checked;
            if (!(slack >= 0.0)) {
                res.passed = false;
                detail << " n=" << n << " m=" << m << ";";
            }
        }
    }
    res.seconds = seconds_since(start);
    res.detail = fmt::format("{} pairs, min log slack {:.3e}", checked, min_slack) + detail.str();
    return res;
}

}  // namespace

std::vector<Criterion> full_suite() {
    using tables::TableId;
    return {
        {"1 table 1 reproduction",
         [](CountCache& c, const Options& o) {
             return table_check("table 1 (1-rough proportion)", TableId::rough1, reference::kRough1, 1024, 16384,
                                60.0, c, o);
         }},
        {"2 table 2 reproduction",
         [](CountCache& c, const Options& o) {
             return table_check("table 2 (2-rough proportion)", TableId::rough2, reference::kRough2, 1024, 16384,
                                60.0, c, o);
         }},
        {"3 table 3 reproduction",
         [](CountCache& c, const Options& o) {
             return table_check("table 3 (impractical proportion)", TableId::impractical, reference::kImpractical,
                                256, 1024, 300.0, c, o);
         }},
        {"4 eta roots", eta_check},
        {"5 oracle counts",
         [](CountCache&, const Options& o) {
             return oracle_counts_check("recurrence vs enumeration", 12, 50, 120.0, o);
         }},
        {"6 egf", egf_check},
        {"7 practicality",
         [](CountCache&, const Options&) { return practicality_check("practicality characterization", 12); }},
        {"8 practical consistency", practical_consistency_check},
        {"9 impractical trend", impractical_trend_check},
        {"10 bell asymptotic", bell_asymptotic_check},
        {"11 saddle identities", [](CountCache&, const Options& o) { return saddle_check("saddle identities", 1000, o); }},
        {"12 rough bound", rough_bound_check},
    };
}

std::vector<Criterion> quick_suite() {
    return {
        {"oracle counts",
         [](CountCache&, const Options& o) {
             return oracle_counts_check("recurrence vs enumeration", 10, 20, 120.0, o);
         }},
        {"eta roots", eta_check},
        {"saddle identities", [](CountCache&, const Options& o) { return saddle_check("saddle identities", 200, o); }},
        {"practicality",
         [](CountCache&, const Options&) { return practicality_check("practicality characterization", 10); }},
    };
}

std::vector<CheckResult> run(const std::vector<Criterion>& suite, CountCache& cache, const Options& options,
                             const std::function<void(const CheckResult&)>& report) {
    std::vector<CheckResult> results;
    for (const auto& criterion : suite) {
        CheckResult res;
        try {
            res = criterion.run(cache, options);
        } catch (const std::exception& e) {
            res = {criterion.name, false, std::string("exception: ") + e.what(), 0.0};
        }
        if (report) report(res);
        results.push_back(std::move(res));
    }
    return results;
}

std::string format_result(const CheckResult& r) {
    return fmt::format("[{}] {} ({:.2f}s): {}", r.passed ? "PASS" : "FAIL", r.name, r.seconds, r.detail);
}

}  // namespace blockfree::verify
