#include "doctest.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "cli.hpp"
#include "json.hpp"

#include "blockfree/count_cache.hpp"
#include "blockfree/enum_oracle.hpp"

using namespace blockfree;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "blockfree");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string trimmed(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
    return s;
}

fs::path fresh_dir(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("blockfree-cli-" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("count") {
    CHECK(run_cli({"count", "3"}).out == "5\n");
    CHECK(run_cli({"count", "3", "empty"}).out == "5\n");
    CHECK(run_cli({"count", "3", "1..2"}).out == "1\n");
    const auto oracle = oracle::count_avoiding_bruteforce(12, BlockSizeSet::parse("2,5")).get_str();
    CHECK(trimmed(run_cli({"count", "12", "2,5"}).out) == oracle);
    CHECK(run_cli({"count", "4", "--bell"}).out == "15\n");
    const auto dir = fresh_dir("count").string();
    CHECK(run_cli({"--cache-dir", dir, "count", "4", "--practical"}).out == "7\n");
    CHECK(run_cli({"--cache-dir", dir, "count", "4", "--impractical"}).out == "8\n");
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli({"count", "3", "1,,2"}).code == cli::kUsage);
    CHECK(run_cli({"count", "3", "0..2"}).code == cli::kUsage);
    CHECK(run_cli({"count", "-1"}).code == cli::kUsage);
    CHECK(run_cli({"count", "3", "--bell", "--practical"}).code == cli::kUsage);
    CHECK(run_cli({}).code == cli::kUsage);
    CHECK(run_cli({"frobnicate"}).code == cli::kUsage);
    CHECK(run_cli({"table", "4"}).code == cli::kUsage);
    CHECK(run_cli({"table", "1", "--format", "xml"}).code == cli::kUsage);
    CHECK(run_cli({"oracle", "14"}).code == cli::kUsage);
    CHECK(run_cli({"verify", "medium"}).code == cli::kUsage);
    CHECK(run_cli({"estimate", "16", "empty", "--delta1", "0.5"}).code == cli::kUsage);
    CHECK(run_cli({"--help"}).code == cli::kOk);
}

TEST_CASE("estimate") {
    SUBCASE("admissibility refusal") {
        const auto res = run_cli({"estimate", "16", "1"});
        CHECK(res.code == cli::kInadmissible);
        CHECK(res.err.find("block size 1") != std::string::npos);
        CHECK(res.out.empty());
    }
    SUBCASE("forced evaluation") {
        const auto res = run_cli({"estimate", "16", "1", "--force", "--json"});
        REQUIRE(res.code == cli::kOk);
        const auto j = nlohmann::json::parse(res.out);
        CHECK(fmt::format("{:.6f}", j["exp_minus_r"].get<double>()) == "0.128325");
        CHECK(j["admissible"] == false);
    }
    SUBCASE("empty set") {
        const auto res = run_cli({"estimate", "4", "--json"});
        REQUIRE(res.code == cli::kOk);
        const auto j = nlohmann::json::parse(res.out);
        CHECK(j["ratio_estimate"].get<double>() == 1.0);
        CHECK(j["admissible"] == true);
    }
    SUBCASE("two-rough at 2^12") {
        const auto res = run_cli({"estimate", "4096", "1..2", "--force", "--json"});
        REQUIRE(res.code == cli::kOk);
        const auto j = nlohmann::json::parse(res.out);
        CHECK(fmt::format("{:.3e}", j["ratio_estimate"].get<double>()) == "1.428e-12");
    }
    SUBCASE("admissible set runs without --force") {
        const auto res = run_cli({"estimate", "1048576", "1,2,25"});
        CHECK(res.code == cli::kOk);
        CHECK(res.out.find("admissible") != std::string::npos);
    }
}

TEST_CASE("estimate json round-trips") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"estimate", "64", "--json"}, {"estimate", "1000", "1..2", "--json", "--force"}}) {
        const auto text = run_cli(args).out;
        const auto parsed = nlohmann::ordered_json::parse(text);
        CHECK(parsed.dump(2) + "\n" == text);
        CHECK(parsed == cli::estimate_report(parsed["n"].get<std::int64_t>(),
                                             BlockSizeSet::parse(parsed["set"].get<std::string>())));
    }
}

TEST_CASE("table") {
    const auto dir = fresh_dir("table").string();
    const auto t1 = run_cli({"--cache-dir", dir, "table", "1", "-e", "8", "--format", "csv"});
    REQUIRE(t1.code == cli::kOk);
    CHECK(t1.out.find("256,0.015896,0.016123,0.014298\n") != std::string::npos);

    const auto t2 = run_cli({"--cache-dir", dir, "table", "2", "-e", "6", "--format", "csv"});
    CHECK(t2.out.find("64,3.185e-04,4.610e-04,0.4474,0.7787\n") != std::string::npos);

    const auto t3 = run_cli({"--cache-dir", dir, "table", "3", "-e", "4", "--format", "csv"});
    CHECK(t3.out.find("4,0.533333,0.300542,-0.436484\n") != std::string::npos);

    // byte-identical on a warm cache
    CHECK(run_cli({"--cache-dir", dir, "table", "1", "-e", "8", "--format", "csv"}).out == t1.out);

    const auto json = nlohmann::json::parse(run_cli({"--cache-dir", dir, "table", "3", "-e", "4", "--format", "json"}).out);
    CHECK(json.size() == 2);
    CHECK(json[1]["n"] == 16);
}

TEST_CASE("table refuses uncached rows beyond the cap without --slow") {
    const auto dir = fresh_dir("cap").string();
    const auto res = run_cli({"--cache-dir", dir, "table", "3", "-e", "10"});
    CHECK(res.code == cli::kUsage);
    CHECK(res.err.find("--slow") != std::string::npos);

}

TEST_CASE("oracle") {
    CHECK(run_cli({"oracle", "3", "1"}).out == "1\n");
    CHECK(run_cli({"oracle", "4", "--practical"}).out == "7\n");
    CHECK(run_cli({"oracle", "9", "2,3", "--check"}).code == cli::kOk);
    CHECK(run_cli({"oracle", "8", "--practical", "--check"}).code == cli::kOk);
}

TEST_CASE("cache inspect and clear") {
    const auto dir = fresh_dir("cachecmd").string();
    run_cli({"--cache-dir", dir, "count", "10", "--practical"});
    const auto listing = run_cli({"--cache-dir", dir, "cache", "inspect"});
    CHECK(listing.out.find("rough-table.txt") != std::string::npos);
    CHECK(listing.out.find("practical.txt") != std::string::npos);
    CHECK(run_cli({"--cache-dir", dir, "cache", "clear"}).out.find("removed 2") != std::string::npos);
    CHECK(run_cli({"--cache-dir", dir, "cache", "explode"}).code == cli::kUsage);
}

TEST_CASE("verify quick") {
    const auto res = run_cli({"--cache-dir", fresh_dir("vq").string(), "verify", "quick"});
    CHECK(res.code == cli::kOk);
    CHECK(res.out.find("4 checks, 0 failed") != std::string::npos);
}

TEST_CASE("verify full recovers from a corrupted cache") {
    const auto dir = fresh_dir("vfull");
    fs::create_directories(dir);
    std::ofstream(dir / "rough-table.txt") << "blockfree-cache v1 kind=rough n_max=256\n1\n7\n";
    std::ofstream(dir / "practical.txt") << "not a cache\n";
    const auto res = run_cli({"--cache-dir", dir.string(), "verify", "full"});
    CHECK(res.code == cli::kOk);
    CHECK(res.out.find("12 checks, 0 failed") != std::string::npos);
    CHECK(res.err.find("warning: ignoring cache file") != std::string::npos);
    CHECK(CountCache(dir).cached_rough_n_max() >= 256);
}
