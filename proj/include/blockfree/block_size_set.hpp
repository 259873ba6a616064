#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace blockfree {

/// A finite set S of forbidden block sizes.
///
/// Either an explicit sorted list of distinct positive integers, or the
/// interval {1,...,m} kept in compact form. The empty set means no
/// restriction.
class BlockSizeSet {
public:
    static constexpr std::int64_t kMaxElement = 1'000'000;

    BlockSizeSet() = default;

    /// Sorts and deduplicates; throws std::invalid_argument on elements < 1
    /// or > kMaxElement.
    explicit BlockSizeSet(std::vector<std::int64_t> elements);

    static BlockSizeSet empty_set() { return {}; }
    /// {1,...,m}; m == 0 gives the empty set.
    static BlockSizeSet interval(std::int64_t m);

    /// Grammar: "empty", "1..m" or a comma list such as "1,3,7".
    static BlockSizeSet parse(std::string_view text);

    bool contains(std::int64_t k) const;
    bool empty() const { return !interval_ && elements_.empty(); }
    std::int64_t max() const;  // 0 for the empty set
    std::size_t size() const;

    /// True when some element lies in the closed real interval [lo, hi].
    bool intersects(double lo, double hi) const;
    /// Smallest element inside [lo, hi], if any.
    std::optional<std::int64_t> first_in(double lo, double hi) const;

    /// Materialized ascending element list.
    std::vector<std::int64_t> elements() const;
    std::optional<std::int64_t> interval_form() const { return interval_; }

    /// Elements k <= bound only.
    BlockSizeSet truncated(std::int64_t bound) const;

    std::string to_string() const;

    template <typename F>
    void for_each(F&& f) const {
        if (interval_) {
            for (std::int64_t k = 1; k <= *interval_; ++k) f(k);
        } else {
            for (auto k : elements_) f(k);
        }
    }

    friend bool operator==(const BlockSizeSet& a, const BlockSizeSet& b) {
        return a.elements() == b.elements();
    }

private:
    std::vector<std::int64_t> elements_;
    std::optional<std::int64_t> interval_;
};

}  // namespace blockfree
