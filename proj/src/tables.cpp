#include "blockfree/tables.hpp"

#include <stdexcept>

#include <fmt/format.h>
#include "json.hpp"

#include "blockfree/asymptotics.hpp"

namespace blockfree::tables {

int default_cap(TableId id) { return id == TableId::impractical ? 8 : 10; }

std::vector<std::int64_t> row_sizes(int max_exponent) {
    if (max_exponent < 2 || max_exponent > 40) throw std::invalid_argument("table exponent must be in [2, 40]");
    std::vector<std::int64_t> out;
    for (int e = 2; e <= max_exponent; e += 2) out.push_back(std::int64_t{1} << e);
    return out;
}

namespace {

BlockSizeSet table_set(TableId id) { return BlockSizeSet::interval(id == TableId::rough2 ? 2 : 1); }

}  // namespace

bool cache_covers(TableId id, std::int64_t n, const CountCache& cache) {
    if (id == TableId::impractical) {
        auto p = cache.cached_practical_n_max();
        return p && *p >= n;
    }
    auto a = cache.cached_sequence_n_max(table_set(id));
    auto b = cache.cached_sequence_n_max(BlockSizeSet{});
    return a && b && *a >= n && *b >= n;
}

TableRow compute_row(TableId id, std::int64_t n, CountCache& cache) {
    const double r = lambert_w(n).r;
    const double nd = static_cast<double>(n);
    TableRow row;
    row.n = n;

    LogValue exact_log;
    LogValue approx_log;
    const auto bell_seq = cache.avoiding_sequence(n, BlockSizeSet{});
    const LogValue ln_bell = log_of_bigcount(bell_seq.back());

    if (id == TableId::impractical) {
        const auto counts = cache.practical_counts(n);
        exact_log = log_of_bigcount(counts.i.back()) - ln_bell;
        approx_log = {std::log(r / nd)};
    } else {
        const auto set = table_set(id);
        const auto seq = cache.avoiding_sequence(n, set);
        exact_log = log_of_bigcount(seq.back()) - ln_bell;
        const auto est = ratio_estimates(n, set, Admissibility::unchecked);
        approx_log = {-alpha_eval(set, r, 0)};
        if (id == TableId::rough2) row.extra = est.error_term;
    }
    row.exact_ratio = exact_log.value();
    row.approximation = approx_log.value();
    row.relative_error = relative_error(approx_log, exact_log);
    return row;
}

std::vector<TableRow> compute_table(TableId id, int max_exponent, CountCache& cache) {
    std::vector<TableRow> rows;
    for (auto n : row_sizes(max_exponent)) rows.push_back(compute_row(id, n, cache));
    return rows;
}

std::vector<std::string> column_names(TableId id) {
    switch (id) {
        case TableId::rough1:
            return {"n", "B_{n,1}/B_n", "exp(-r)", "Rel. Error"};
        case TableId::rough2:
            return {"n", "B_{n,2}/B_n", "exp(-r-r^2/2)", "Rel. Error", "(1+r)^2 e^{-r}"};
        case TableId::impractical:
            return {"n", "I_n/B_n", "r/n", "Relative Error"};
    }
    throw std::invalid_argument("unknown table");
}

std::vector<std::string> format_cells(TableId id, const TableRow& row) {
    std::vector<std::string> cells{fmt::format("{}", row.n)};
    if (id == TableId::rough2) {
        cells.push_back(fmt::format("{:.3e}", row.exact_ratio));
        cells.push_back(fmt::format("{:.3e}", row.approximation));
        cells.push_back(fmt::format("{:.4f}", row.relative_error));
        cells.push_back(fmt::format("{:.4f}", row.extra.value_or(0.0)));
    } else {
        cells.push_back(fmt::format("{:.6f}", row.exact_ratio));
        cells.push_back(fmt::format("{:.6f}", row.approximation));
        cells.push_back(fmt::format("{:.6f}", row.relative_error));
    }
    return cells;
}

std::string render(TableId id, const std::vector<TableRow>& rows, Format format) {
    std::string out;
    if (format == Format::json) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
            nlohmann::ordered_json obj;
            obj["n"] = row.n;
            obj["exact"] = row.exact_ratio;
            obj["approx"] = row.approximation;
            obj["rel_error"] = row.relative_error;
            if (row.extra) obj["error_term"] = *row.extra;
            arr.push_back(std::move(obj));
        }
        return arr.dump(2) + "\n";
    }
    const auto names = column_names(id);
    if (format == Format::csv) {
        out += id == TableId::rough2 ? "n,exact,approx,rel_error,error_term\n" : "n,exact,approx,rel_error\n";
        for (const auto& row : rows) {
            const auto cells = format_cells(id, row);
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (c) out += ',';
                out += cells[c];
            }
            out += '\n';
        }
        return out;
    }
    auto line = [&](const std::vector<std::string>& cells) {
        out += '|';
        for (const auto& c : cells) out += " " + c + " |";
        out += '\n';
    };
    line(names);
    out += '|';
    for (std::size_t c = 0; c < names.size(); ++c) out += "---|";
    out += '\n';
    for (const auto& row : rows) line(format_cells(id, row));
    return out;
}

TableId parse_table_id(int which) {
    if (which < 1 || which > 3) throw std::invalid_argument("table must be 1, 2 or 3");
    return static_cast<TableId>(which);
}

Format parse_format(const std::string& text) {
    if (text == "csv") return Format::csv;
    if (text == "json") return Format::json;
    if (text == "markdown" || text == "md") return Format::markdown;
    throw std::invalid_argument("unknown format '" + text + "' (csv, json, markdown)");
}

}  // namespace blockfree::tables
