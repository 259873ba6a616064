#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "blockfree/count_cache.hpp"

using namespace blockfree;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("blockfree-test-" + name)) {
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("rough table file format") {
    TempDir tmp("format");
    CountCache cache(tmp.path);
    const auto table = cache.rough_table(3);
    const auto text = slurp(cache.rough_path());
    CHECK(text ==
          "blockfree-cache v1 kind=rough n_max=3\n"
          "1\n"
          "1\n0\n"
          "2\n1\n0\n"
          "5\n1\n1\n0\n");
    CHECK(table.rows() == rough_table(3).rows());
}

TEST_CASE("cached tables reload and extend incrementally") {
    TempDir tmp("extend");
    std::vector<std::string> warnings;
    CountCache cache(tmp.path, [&](const std::string& w) { warnings.push_back(w); });
    cache.rough_table(20);
    CHECK(cache.cached_rough_n_max() == 20);
    const auto smaller = cache.rough_table(10);
    CHECK(smaller.n_max() == 20);
    const auto bigger = cache.rough_table(30);
    CHECK(bigger.rows() == rough_table(30).rows());
    CHECK(cache.cached_rough_n_max() == 30);
    CHECK(warnings.empty());
}

TEST_CASE("corrupted cache files are recomputed and overwritten") {
    TempDir tmp("corrupt");
    std::vector<std::string> warnings;
    CountCache cache(tmp.path, [&](const std::string& w) { warnings.push_back(w); });
    cache.rough_table(12);
    const auto good = slurp(cache.rough_path());

    SUBCASE("bad header") {
        std::ofstream(cache.rough_path()) << "blockfree-cache v0 kind=rough n_max=12\n1\n";
    }
    SUBCASE("garbage entry") {
        auto text = good;
        text.replace(text.find("\n5\n"), 3, "\nx5\n");
        std::ofstream(cache.rough_path()) << text;
    }
    SUBCASE("truncated") {
        std::ofstream(cache.rough_path()) << good.substr(0, good.size() / 2);
    }
    SUBCASE("invariant violation") {
        auto text = good;
        text.replace(text.find("\n0\n"), 3, "\n7\n");
        std::ofstream(cache.rough_path()) << text;
    }
    const auto table = cache.rough_table(12);
    CHECK(table.rows() == rough_table(12).rows());
    CHECK(warnings.size() == 1);
    CHECK(slurp(cache.rough_path()) == good);
}

TEST_CASE("sequence and practical caches") {
    TempDir tmp("seq");
    CountCache cache(tmp.path);
    const auto set = BlockSizeSet::parse("2,5");
    CHECK(cache.avoiding_sequence(40, set) == count_avoiding_sequence(40, set));
    CHECK(cache.cached_sequence_n_max(set) == 40);
    CHECK(cache.avoiding_sequence(25, set) == count_avoiding_sequence(25, set));
    CHECK_FALSE(cache.cached_sequence_n_max(BlockSizeSet::parse("2")).has_value());

    const auto direct = practical_counts(30);
    auto first = cache.practical_counts(30);
    auto again = cache.practical_counts(20);
    CHECK(first.p == direct.p);
    CHECK(first.i == direct.i);
    CHECK(again.p.size() == 21);
    CHECK(std::equal(again.i.begin(), again.i.end(), direct.i.begin()));
    CHECK(cache.cached_practical_n_max() == 30);

    // a large forbidden set hashes into a short file name
    std::vector<std::int64_t> many;
    for (int k = 100; k < 160; ++k) many.push_back(k);
    const auto big = BlockSizeSet(many);
    cache.avoiding_sequence(5, big);
    CHECK(cache.sequence_path(big).filename().string().size() < 40);
    CHECK(cache.cached_sequence_n_max(big) == 5);

    CHECK(cache.inspect().size() == 4);
    CHECK(cache.clear() == 4);
    CHECK(cache.inspect().empty());
}

TEST_CASE("directory precedence: flag, environment, default") {
    ::setenv(CountCache::kEnvVar, "/tmp/from-env", 1);
    CHECK(CountCache::resolve_dir(std::string("/tmp/from-flag")) == "/tmp/from-flag");
    CHECK(CountCache::resolve_dir(std::nullopt) == "/tmp/from-env");
    ::unsetenv(CountCache::kEnvVar);
    CHECK(CountCache::resolve_dir(std::nullopt) == CountCache::kDefaultDir);
}
