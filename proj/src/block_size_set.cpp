#include "blockfree/block_size_set.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace blockfree {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("malformed block-size set '" + std::string(whole) + "'");
    }
    return v;
}

void check_range(std::int64_t k) {
    if (k < 1 || k > BlockSizeSet::kMaxElement) {
        throw std::invalid_argument("block size " + std::to_string(k) + " outside [1, " +
                                    std::to_string(BlockSizeSet::kMaxElement) + "]");
    }
}

}  // namespace

BlockSizeSet::BlockSizeSet(std::vector<std::int64_t> elements) : elements_(std::move(elements)) {
    for (auto k : elements_) check_range(k);
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

BlockSizeSet BlockSizeSet::interval(std::int64_t m) {
    if (m < 0) throw std::invalid_argument("interval bound must be >= 0");
    BlockSizeSet s;
    if (m > 0) {
        check_range(m);
        s.interval_ = m;
    }
    return s;
}

BlockSizeSet BlockSizeSet::parse(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text == "empty" || text == "{}") return {};
    if (text.empty()) throw std::invalid_argument("empty block-size set spec (use 'empty')");

    if (auto dots = text.find(".."); dots != std::string_view::npos) {
        if (parse_int(text.substr(0, dots), text) != 1) {
            throw std::invalid_argument("interval form must start at 1: '" + std::string(text) + "'");
        }
        auto m = parse_int(text.substr(dots + 2), text);
        if (m < 1) throw std::invalid_argument("interval form needs m >= 1: '" + std::string(text) + "'");
        return interval(m);
    }

    std::vector<std::int64_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(parse_int(piece, text));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return BlockSizeSet(std::move(out));
}

bool BlockSizeSet::contains(std::int64_t k) const {
    if (interval_) return k >= 1 && k <= *interval_;
    return std::binary_search(elements_.begin(), elements_.end(), k);
}

std::int64_t BlockSizeSet::max() const {
    if (interval_) return *interval_;
    return elements_.empty() ? 0 : elements_.back();
}

std::size_t BlockSizeSet::size() const {
    return interval_ ? static_cast<std::size_t>(*interval_) : elements_.size();
}

std::optional<std::int64_t> BlockSizeSet::first_in(double lo, double hi) const {
    if (!(lo <= hi)) return std::nullopt;
    auto lo_int = static_cast<std::int64_t>(std::ceil(std::max(lo, 1.0)));
    if (interval_) {
        if (lo_int <= *interval_ && static_cast<double>(lo_int) <= hi) return lo_int;
        return std::nullopt;
    }
    auto it = std::lower_bound(elements_.begin(), elements_.end(), lo_int);
    if (it != elements_.end() && static_cast<double>(*it) <= hi) return *it;
    return std::nullopt;
}

bool BlockSizeSet::intersects(double lo, double hi) const { return first_in(lo, hi).has_value(); }

std::vector<std::int64_t> BlockSizeSet::elements() const {
    if (!interval_) return elements_;
    std::vector<std::int64_t> out(static_cast<std::size_t>(*interval_));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::int64_t>(i) + 1;
    return out;
}

BlockSizeSet BlockSizeSet::truncated(std::int64_t bound) const {
    if (interval_) return interval(std::min(*interval_, std::max<std::int64_t>(bound, 0)));
    BlockSizeSet s;
    for (auto k : elements_) {
        if (k <= bound) s.elements_.push_back(k);
    }
    return s;
}

std::string BlockSizeSet::to_string() const {
    if (empty()) return "empty";
    if (interval_) return "1.." + std::to_string(*interval_);
    std::string out;
    for (auto k : elements_) {
        if (!out.empty()) out += ',';
        out += std::to_string(k);
    }
    return out;
}

}  // namespace blockfree
