#include "doctest.h"

#include "json.hpp"

#include "blockfree/reference_values.hpp"
#include "blockfree/tables.hpp"

using namespace blockfree;
using namespace blockfree::tables;

namespace {

CountCache temp_cache(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("blockfree-tables-" + name);
    std::filesystem::remove_all(dir);
    return CountCache(dir);
}

}  // namespace

TEST_CASE("row sizes") {
    CHECK(row_sizes(2) == std::vector<std::int64_t>{4});
    CHECK(row_sizes(9) == std::vector<std::int64_t>{4, 16, 64, 256});
    CHECK_THROWS_AS(row_sizes(1), std::invalid_argument);
}

TEST_CASE("single rows at printed precision") {
    auto cache = temp_cache("rows");
    CHECK(format_cells(TableId::rough1, compute_row(TableId::rough1, 256, cache)) ==
          std::vector<std::string>{"256", "0.015896", "0.016123", "0.014298"});
    CHECK(format_cells(TableId::rough2, compute_row(TableId::rough2, 64, cache)) ==
          std::vector<std::string>{"64", "3.185e-04", "4.610e-04", "0.4474", "0.7787"});
    CHECK(format_cells(TableId::impractical, compute_row(TableId::impractical, 4, cache)) ==
          std::vector<std::string>{"4", "0.533333", "0.300542", "-0.436484"});
}

TEST_CASE("relative error is approximation over exact minus one") {
    auto cache = temp_cache("relerr");
    for (auto id : {TableId::rough1, TableId::rough2, TableId::impractical}) {
        const auto row = compute_row(id, 64, cache);
        CHECK(row.relative_error == doctest::Approx(row.approximation / row.exact_ratio - 1).epsilon(1e-12));
    }
}

TEST_CASE("csv and json rendering") {
    auto cache = temp_cache("render");
    const auto rows = compute_table(TableId::rough2, 4, cache);
    const auto csv = render(TableId::rough2, rows, Format::csv);
    CHECK(csv ==
          "n,exact,approx,rel_error,error_term\n"
          "4,6.667e-02,1.459e-01,1.1886,1.4575\n"
          "16,8.772e-03,1.559e-02,0.7776,1.1962\n");

    const auto parsed = nlohmann::json::parse(render(TableId::rough2, rows, Format::json));
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0]["n"] == 4);
    CHECK(parsed[1]["exact"].get<double>() == rows[1].exact_ratio);
    CHECK(parsed[1].contains("error_term"));

    const auto t1 = nlohmann::json::parse(render(TableId::rough1, compute_table(TableId::rough1, 2, cache), Format::json));
    CHECK_FALSE(t1[0].contains("error_term"));

    const auto md = render(TableId::rough1, compute_table(TableId::rough1, 2, cache), Format::markdown);
    CHECK(md == "| n | B_{n,1}/B_n | exp(-r) | Rel. Error |\n|---|---|---|---|\n| 4 | 0.266667 | 0.300542 | 0.127032 |\n");
}

TEST_CASE("rendering is deterministic across cache states") {
    auto cold = temp_cache("det");
    const auto first = render(TableId::impractical, compute_table(TableId::impractical, 6, cold), Format::csv);
    const auto second = render(TableId::impractical, compute_table(TableId::impractical, 6, cold), Format::csv);
    CHECK(first == second);
}

TEST_CASE("cache coverage") {
    auto cache = temp_cache("cover");
    CHECK_FALSE(cache_covers(TableId::rough1, 64, cache));
    compute_row(TableId::rough1, 64, cache);
    CHECK(cache_covers(TableId::rough1, 64, cache));
    CHECK(cache_covers(TableId::rough1, 16, cache));
    CHECK_FALSE(cache_covers(TableId::rough1, 256, cache));
    CHECK_FALSE(cache_covers(TableId::impractical, 16, cache));
}

TEST_CASE("parsing helpers") {
    CHECK(parse_format("md") == Format::markdown);
    CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
    CHECK(parse_table_id(3) == TableId::impractical);
    CHECK_THROWS_AS(parse_table_id(4), std::invalid_argument);
}
