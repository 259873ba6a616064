#include "doctest.h"

#include <random>
#include <thread>

#include "blockfree/enum_oracle.hpp"
#include "blockfree/exact_counts.hpp"

using namespace blockfree;

namespace {

// Pascal triangle by repeated addition, independent of PascalRow.
std::vector<std::vector<std::uint64_t>> pascal_triangle(int rows) {
    std::vector<std::vector<std::uint64_t>> t(rows + 1);
    for (int n = 0; n <= rows; ++n) {
        t[n].assign(n + 1, 1);
        for (int k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
    }
    return t;
}

BlockSizeSet random_subset(int n, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(0.5);
    std::vector<std::int64_t> e;
    for (int k = 1; k <= n; ++k) {
        if (coin(rng)) e.push_back(k);
    }
    return BlockSizeSet(e);
}

}  // namespace

TEST_CASE("binomial") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(17, 0) == 1);
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(5, -1) == 0);
    CHECK(binomial(5, 6) == 0);
    CHECK(binomial(-1, 0) == 0);

    const auto t = pascal_triangle(40);
    CHECK(t[20][10] == 184756u);
    CHECK(binomial(20, 10) == 184756);
    for (int n = 0; n <= 40; ++n) {
        for (int k = 0; k <= n; ++k) CHECK(binomial(n, k) == static_cast<unsigned long>(t[n][k]));
    }
    // out-of-order requests rebuild the cached row
    CHECK(binomial(30, 7) == 2035800);
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(7, 3) == 35);
}

TEST_CASE("binomial is safe under concurrent callers") {
    const auto t = pascal_triangle(60);
    std::vector<std::thread> threads;
    std::atomic<int> bad{0};
    for (int w = 0; w < 4; ++w) {
        threads.emplace_back([&, w] {
            for (int n = w; n <= 60; n += 1) {
                for (int k = 0; k <= n; k += 7) {
                    if (binomial(n, k) != static_cast<unsigned long>(t[n][k])) ++bad;
                }
            }
        });
    }
    for (auto& th : threads) th.join();
    CHECK(bad == 0);
}

TEST_CASE("count_avoiding small values") {
    CHECK(count_avoiding(3, BlockSizeSet{}) == 5);
    CHECK(count_avoiding(3, BlockSizeSet::parse("1")) == 1);
    CHECK(count_avoiding(3, BlockSizeSet::parse("1,2")) == 1);
    CHECK(count_avoiding(0, BlockSizeSet::parse("1..5")) == 1);
    CHECK(count_avoiding(6, BlockSizeSet::parse("2")) == oracle::count_avoiding_bruteforce(6, BlockSizeSet::parse("2")));
    CHECK_THROWS_AS(count_avoiding(-1, BlockSizeSet{}), std::invalid_argument);
}

TEST_CASE("bell numbers") {
    CHECK(bell(0) == 1);
    CHECK(bell(3) == 5);
    std::uint64_t enumerated = 0;
    oracle::enumerate_partitions(4, [&](const auto&) { ++enumerated; });
    CHECK(enumerated == 15);
    CHECK(bell(4) == 15);
    const auto seq = bell_sequence(12);
    for (int n = 0; n <= 12; ++n) CHECK(count_avoiding(n, BlockSizeSet{}) == seq[n]);
    CHECK(seq[12] == 4213597);
}

TEST_CASE("recurrence matches enumeration for random forbidden sets") {
    std::mt19937_64 rng(7);
    for (int n = 0; n <= 9; ++n) {
        const auto hist = oracle::shape_histogram(n);
        for (int t = 0; t < 20; ++t) {
            const auto s = random_subset(n, rng);
            std::uint64_t brute = 0;
            for (const auto& [shape, c] : hist) {
                bool ok = true;
                for (int a : shape.block_sizes) ok = ok && !s.contains(a);
                if (ok) brute += c;
            }
            CAPTURE(n);
            CAPTURE(s.to_string());
            CHECK(count_avoiding(n, s) == static_cast<unsigned long>(brute));
        }
    }
}

TEST_CASE("monotone under enlarging the forbidden set") {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 12; ++n) {
        for (int t = 0; t < 10; ++t) {
            const auto big = random_subset(n, rng);
            std::vector<std::int64_t> sub;
            std::bernoulli_distribution keep(0.5);
            for (auto k : big.elements()) {
                if (keep(rng)) sub.push_back(k);
            }
            CHECK(count_avoiding(n, big) <= count_avoiding(n, BlockSizeSet(sub)));
        }
    }
}

TEST_CASE("elements larger than n are irrelevant") {
    for (int n = 0; n <= 15; ++n) {
        const auto s = BlockSizeSet::parse("2,3,16,40,1000");
        CHECK(count_avoiding(n, s) == count_avoiding(n, s.truncated(n)));
    }
}

TEST_CASE("rough table invariants") {
    const auto table = rough_table(40);
    CHECK(table.n_max() == 40);
    CHECK(table.boundary_invariants_hold());
    const auto bells = bell_sequence(40);
    for (int j = 0; j <= 40; ++j) {
        CHECK(table.at(j, 0) == bells[j]);
        CHECK(table.at(0, j) == 1);
        for (int m = 1; m <= j; ++m) {
            if (j <= m) CHECK(table.at(j, m) == 0);
            if (m < j && j <= 2 * m + 1) CHECK(table.at(j, m) == 1);
        }
        CHECK(table.at(j, j + 5) == (j == 0 ? 1 : 0));
    }
    for (int m = 0; m <= 6; ++m) {
        const auto seq = count_avoiding_sequence(40, BlockSizeSet::interval(m));
        for (int j = 0; j <= 40; ++j) CHECK(table.at(j, m) == seq[j]);
    }
    CHECK(table.at(7, 2) == oracle::count_avoiding_bruteforce(7, BlockSizeSet::interval(2)));
    CHECK_THROWS_AS(table.at(41, 0), std::out_of_range);
}

TEST_CASE("rough table extension equals direct construction") {
    auto grown = rough_table(10);
    grown.extend(25);
    const auto direct = rough_table(25);
    CHECK(grown.rows() == direct.rows());
}

TEST_CASE("from_rows rejects broken tables") {
    auto rows = rough_table(6).rows();
    rows[5][3] = 2;  // must be 1
    CHECK_THROWS_AS(RoughTable::from_rows(rows), std::invalid_argument);
    rows = rough_table(6).rows();
    rows[4].pop_back();
    CHECK_THROWS_AS(RoughTable::from_rows(rows), std::invalid_argument);
}

TEST_CASE("practical counts") {
    const auto counts = practical_counts(60);
    CHECK(counts.p[0] == 1);
    CHECK(counts.i[0] == 0);
    CHECK(counts.p[4] == 7);
    CHECK(counts.i[4] == 8);
    const auto table = rough_table(60);
    for (int n = 0; n <= 60; ++n) {
        CHECK(counts.p[n] + counts.i[n] == table.at(n, 0));
        if (n >= 1) CHECK(counts.i[n] >= table.at(n, 1));
        BigCount sum = 0;
        for (int k = 0; k <= n; ++k) sum += binomial(n, k) * counts.p[k] * table.at(n - k, k + 1);
        CHECK(sum == table.at(n, 0));
    }
    for (int n = 0; n <= 10; ++n) CHECK(counts.p[n] == oracle::count_practical_bruteforce(n));
    CHECK_THROWS_AS(practical_counts(table, 61), std::invalid_argument);
}
