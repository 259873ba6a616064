#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "blockfree/block_size_set.hpp"
#include "blockfree/exact_counts.hpp"

namespace blockfree::oracle {

/// Largest n the brute-force enumerator accepts (B_13 ~ 2.76e7).
inline constexpr int kMaxN = 13;

/// Multiset of block sizes of a set partition, ascending.
struct PartitionShape {
    std::vector<int> block_sizes;
    int n = 0;

    /// Sorts sizes and sets n to their sum; throws on a size < 1.
    static PartitionShape from_sizes(std::vector<int> sizes);
    friend auto operator<=>(const PartitionShape&, const PartitionShape&) = default;
};

/// Canonical code of a set partition: codes[i] is the block of element i,
/// codes[0] = 0 and codes[i] <= 1 + max(codes[0..i-1]).
class RestrictedGrowthString {
public:
    explicit RestrictedGrowthString(int n);

    const std::vector<int>& codes() const { return codes_; }
    int blocks() const { return n_ == 0 ? 0 : prefix_max_.back() + 1; }
    PartitionShape shape() const;

    /// Next string in lexicographic order; false after the last one.
    bool next();

private:
    int n_;
    std::vector<int> codes_;
    std::vector<int> prefix_max_;  // prefix_max_[i] = max(codes_[0..i])
};

/// Throws std::out_of_range for n outside [0, kMaxN].
void check_cap(int n);

/// Visits every set partition of an n-set exactly once, in lexicographic
/// restricted-growth order.
void enumerate_partitions(int n, const std::function<void(const RestrictedGrowthString&)>& visit);

/// Number of partitions of an n-set per shape, by direct streaming.
std::map<PartitionShape, std::uint64_t> shape_histogram(int n);

/// Same histogram computed from integer partitions of n with multiplicity
/// n! / (prod a_i! * prod mult_j!).
std::map<PartitionShape, BigCount> shape_multiplicities(int n);

/// Every integer partition of n as a shape (no size cap beyond n >= 0).
std::vector<PartitionShape> integer_partitions(int n);

BigCount count_avoiding_bruteforce(int n, const BlockSizeSet& forbidden);

/// Sorted-size criterion: a_i <= 1 + sum_{j<i} a_j for every i.
bool is_practical_greedy(const PartitionShape& shape);

/// Definition: the subset sums of the block sizes are exactly {0, ..., n}.
bool is_practical_subset_sum(const PartitionShape& shape);

BigCount count_practical_bruteforce(int n);

}  // namespace blockfree::oracle
