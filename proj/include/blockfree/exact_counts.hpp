#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "blockfree/block_size_set.hpp"

namespace blockfree {

/// Exact nonnegative partition count.
using BigCount = mpz_class;

/// C(n, k); 0 when k < 0 or k > n. Backed by a process-wide cache of the
/// most recently requested Pascal row, safe for concurrent callers.
BigCount binomial(std::int64_t n, std::int64_t k);

/// One row of Pascal's triangle, advanced in place.
class PascalRow {
public:
    PascalRow() : row_{1} {}
    explicit PascalRow(std::int64_t n);

    std::int64_t n() const { return static_cast<std::int64_t>(row_.size()) - 1; }
    const BigCount& operator[](std::int64_t k) const { return row_[static_cast<std::size_t>(k)]; }
    /// Row n -> row n+1.
    void advance();

private:
    std::vector<BigCount> row_;
};

/// B_{j,S} for j = 0..n_max via "remove the block containing element 1":
/// B_{j,S} = sum over 0 <= k <= j-1 with j-k not in S of C(j-1,k) B_{k,S}.
std::vector<BigCount> count_avoiding_sequence(std::int64_t n_max, const BlockSizeSet& forbidden);

/// B_{n,S}; B_{0,S} = 1.
BigCount count_avoiding(std::int64_t n, const BlockSizeSet& forbidden);

/// Bell number B_n.
BigCount bell(std::int64_t n);
std::vector<BigCount> bell_sequence(std::int64_t n_max);

/// Triangle b[j][m] = B_{j,m}, the number of m-rough partitions of a
/// j-set (every block larger than m), for 0 <= m <= j <= n_max.
class RoughTable {
public:
    RoughTable() : rows_{{BigCount(1)}} {}

    std::int64_t n_max() const { return static_cast<std::int64_t>(rows_.size()) - 1; }

    /// B_{j,m} for any m >= 0 with j <= n_max; m > j is answered from
    /// B_{0,m} = 1 and B_{j,m} = 0 for 1 <= j <= m.
    const BigCount& at(std::int64_t j, std::int64_t m) const;

    const std::vector<std::vector<BigCount>>& rows() const { return rows_; }

    /// Appends rows up to new_n_max (no-op when already large enough).
    void extend(std::int64_t new_n_max);

    /// Adopts externally supplied rows (cache load). Throws
    /// std::invalid_argument when the shape or boundary invariants fail.
    static RoughTable from_rows(std::vector<std::vector<BigCount>> rows);

    /// Checks shape plus b[j][0] = B_j-independent boundary invariants:
    /// b[0][0] = 1, b[j][m] = 0 for 1 <= j <= m, b[j][m] = 1 for m < j <= 2m+1.
    bool boundary_invariants_hold() const;

private:
    std::vector<std::vector<BigCount>> rows_;
};

RoughTable rough_table(std::int64_t n_max);

/// P_n (practical) and I_n (impractical) for n = 0..n_max.
struct PracticalCounts {
    std::int64_t n_max = 0;
    std::vector<BigCount> p;
    std::vector<BigCount> i;
};

/// Solves B_n = sum_k C(n,k) P_k B_{n-k,k+1} for P_n, then computes I_n both
/// as B_n - P_n and as B_{n,1} + sum_{k=1}^{floor((n-2)/2)} C(n,k) P_k B_{n-k,k+1}.
/// Throws std::logic_error if the two disagree. The table must cover n_max.
PracticalCounts practical_counts(const RoughTable& table, std::int64_t n_max);
PracticalCounts practical_counts(std::int64_t n_max);

}  // namespace blockfree
