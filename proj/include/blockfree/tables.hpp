#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blockfree/count_cache.hpp"

namespace blockfree::tables {

/// 1: B_{n,1}/B_n vs exp(-r). 2: B_{n,2}/B_n vs exp(-r - r^2/2), plus
/// (1+r)^2 e^{-r}. 3: I_n/B_n vs r/n.
enum class TableId { rough1 = 1, rough2 = 2, impractical = 3 };

enum class Format { csv, json, markdown };

struct TableRow {
    std::int64_t n = 0;
    double exact_ratio = 0.0;
    double approximation = 0.0;
    /// approximation / exact_ratio - 1, evaluated as expm1 of the log difference.
    double relative_error = 0.0;
    std::optional<double> extra;
};

/// Default largest exponent computed without --slow.
int default_cap(TableId id);

/// Row sizes n = 2^2, 2^4, ... up to 2^max_exponent.
std::vector<std::int64_t> row_sizes(int max_exponent);

/// Exact counts for the table, all computed for the single size n.
TableRow compute_row(TableId id, std::int64_t n, CountCache& cache);
std::vector<TableRow> compute_table(TableId id, int max_exponent, CountCache& cache);

/// Does the cache already hold the exact counts the row needs?
bool cache_covers(TableId id, std::int64_t n, const CountCache& cache);

/// Cell texts at the printed precision: 6 decimals (tables 1 and 3); for
/// table 2, "%.3e" for the ratio columns and 4 decimals for the others.
std::vector<std::string> format_cells(TableId id, const TableRow& row);
std::vector<std::string> column_names(TableId id);

std::string render(TableId id, const std::vector<TableRow>& rows, Format format);

TableId parse_table_id(int which);
Format parse_format(const std::string& text);

}  // namespace blockfree::tables
