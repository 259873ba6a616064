#include "blockfree/enum_oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace blockfree::oracle {

PartitionShape PartitionShape::from_sizes(std::vector<int> sizes) {
    for (int a : sizes) {
        if (a < 1) throw std::invalid_argument("block size must be >= 1");
    }
    std::sort(sizes.begin(), sizes.end());
    PartitionShape s;
    s.n = std::accumulate(sizes.begin(), sizes.end(), 0);
    s.block_sizes = std::move(sizes);
    return s;
}

void check_cap(int n) {
    if (n < 0 || n > kMaxN) {
        throw std::out_of_range("brute-force enumeration supports 0 <= n <= " + std::to_string(kMaxN) +
                                " (B_14 ~ 1.9e8 partitions); got n = " + std::to_string(n));
    }
}

namespace {

int checked(int n) {
    check_cap(n);
    return n;
}

}  // namespace

RestrictedGrowthString::RestrictedGrowthString(int n)
    : n_(checked(n)), codes_(static_cast<std::size_t>(n_), 0), prefix_max_(static_cast<std::size_t>(n_), 0) {}

PartitionShape RestrictedGrowthString::shape() const {
    std::vector<int> sizes(static_cast<std::size_t>(blocks()), 0);
    for (int c : codes_) ++sizes[c];
    return PartitionShape::from_sizes(std::move(sizes));
}

bool RestrictedGrowthString::next() {
    // Bump the rightmost position that can still grow, reset the tail to 0.
    for (int i = n_ - 1; i >= 1; --i) {
        if (codes_[i] <= prefix_max_[i - 1]) {
            ++codes_[i];
            prefix_max_[i] = std::max(prefix_max_[i - 1], codes_[i]);
            for (int t = i + 1; t < n_; ++t) {
                codes_[t] = 0;
                prefix_max_[t] = prefix_max_[i];
            }
            return true;
        }
    }
    return false;
}

void enumerate_partitions(int n, const std::function<void(const RestrictedGrowthString&)>& visit) {
    RestrictedGrowthString rgs(n);
    do {
        visit(rgs);
    } while (rgs.next());
}

std::map<PartitionShape, std::uint64_t> shape_histogram(int n) {
    std::map<PartitionShape, std::uint64_t> hist;
    std::vector<int> sizes;
    enumerate_partitions(n, [&](const RestrictedGrowthString& rgs) {
        sizes.assign(static_cast<std::size_t>(rgs.blocks()), 0);
        for (int c : rgs.codes()) ++sizes[c];
        ++hist[PartitionShape::from_sizes(sizes)];
    });
    return hist;
}

namespace {

void integer_partitions_rec(int remaining, int max_part, std::vector<int>& parts, std::vector<PartitionShape>& out) {
    if (remaining == 0) {
        out.push_back(PartitionShape::from_sizes(parts));
        return;
    }
    for (int a = std::min(remaining, max_part); a >= 1; --a) {
        parts.push_back(a);
        integer_partitions_rec(remaining - a, a, parts, out);
        parts.pop_back();
    }
}

BigCount factorial(int n) {
    BigCount f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

}  // namespace

std::vector<PartitionShape> integer_partitions(int n) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    std::vector<PartitionShape> out;
    std::vector<int> parts;
    integer_partitions_rec(n, n, parts, out);
    return out;
}

std::map<PartitionShape, BigCount> shape_multiplicities(int n) {
    std::map<PartitionShape, BigCount> out;
    for (auto& shape : integer_partitions(n)) {
        BigCount denom = 1;
        const auto& a = shape.block_sizes;
        for (std::size_t i = 0; i < a.size();) {
            std::size_t j = i;
            while (j < a.size() && a[j] == a[i]) {
                denom *= factorial(a[j]);
                ++j;
            }
            denom *= factorial(static_cast<int>(j - i));
            i = j;
        }
        out.emplace(std::move(shape), factorial(n) / denom);
    }
    return out;
}

BigCount count_avoiding_bruteforce(int n, const BlockSizeSet& forbidden) {
    std::uint64_t count = 0;
    std::vector<int> sizes;
    enumerate_partitions(n, [&](const RestrictedGrowthString& rgs) {
        sizes.assign(static_cast<std::size_t>(rgs.blocks()), 0);
        for (int c : rgs.codes()) ++sizes[c];
        bool ok = std::none_of(sizes.begin(), sizes.end(), [&](int a) { return forbidden.contains(a); });
        if (ok) ++count;
    });
    return BigCount(static_cast<unsigned long>(count));
}

bool is_practical_greedy(const PartitionShape& shape) {
    long long prefix = 0;
    for (int a : shape.block_sizes) {
        if (a > prefix + 1) return false;
        prefix += a;
    }
    return true;
}

bool is_practical_subset_sum(const PartitionShape& shape) {
    std::vector<char> reachable(static_cast<std::size_t>(shape.n) + 1, 0);
    reachable[0] = 1;
    for (int a : shape.block_sizes) {
        for (int s = shape.n; s >= a; --s) {
            if (reachable[s - a]) reachable[s] = 1;
        }
    }
    return std::all_of(reachable.begin(), reachable.end(), [](char c) { return c != 0; });
}

BigCount count_practical_bruteforce(int n) {
    std::uint64_t count = 0;
    enumerate_partitions(n, [&](const RestrictedGrowthString& rgs) {
        if (is_practical_subset_sum(rgs.shape())) ++count;
    });
    return BigCount(static_cast<unsigned long>(count));
}

}  // namespace blockfree::oracle
