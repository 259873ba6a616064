#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "blockfree/block_size_set.hpp"
#include "blockfree/exact_counts.hpp"

namespace blockfree {

/// On-disk memo for exact counts.
///
/// Each file starts with one header line
///
///     blockfree-cache v1 kind=<kind> n_max=<N> [set=<S>]
///
/// followed by newline-delimited decimal integers. A file whose header,
/// line count or contents fail validation is treated as absent; the caller
/// recomputes and overwrites it.
class CountCache {
public:
    static constexpr int kFormatVersion = 1;
    static constexpr const char* kEnvVar = "BLOCKFREE_CACHE_DIR";
    static constexpr const char* kDefaultDir = ".blockfree-cache";

    using WarningSink = std::function<void(const std::string&)>;

    explicit CountCache(std::filesystem::path dir, WarningSink warn = {});

    /// Flag value wins over the environment variable, which wins over the default.
    static std::filesystem::path resolve_dir(const std::optional<std::string>& flag);

    const std::filesystem::path& dir() const { return dir_; }

    /// Rough table covering at least n_max, loaded, extended and rewritten as needed.
    RoughTable rough_table(std::int64_t n_max);
    /// B_{j,S} for j <= n_max.
    std::vector<BigCount> avoiding_sequence(std::int64_t n_max, const BlockSizeSet& forbidden);
    /// Practical/impractical counts; builds the rough table through the cache on a miss.
    PracticalCounts practical_counts(std::int64_t n_max);

    /// Largest n covered by the stored file of each kind, if valid.
    std::optional<std::int64_t> cached_rough_n_max() const;
    std::optional<std::int64_t> cached_sequence_n_max(const BlockSizeSet& forbidden) const;
    std::optional<std::int64_t> cached_practical_n_max() const;

    struct Entry {
        std::filesystem::path file;
        std::string header;
        std::uintmax_t bytes = 0;
        bool valid = false;
    };
    std::vector<Entry> inspect() const;
    /// Removes cache files; returns how many were deleted.
    std::size_t clear();

    std::filesystem::path rough_path() const;
    std::filesystem::path sequence_path(const BlockSizeSet& forbidden) const;
    std::filesystem::path practical_path() const;

private:
    struct Loaded {
        std::int64_t n_max = 0;
        std::vector<BigCount> values;
    };

    std::optional<Loaded> load(const std::filesystem::path& file, const std::string& kind,
                               const std::string& set_tag, bool quiet) const;
    void store(const std::filesystem::path& file, const std::string& kind, const std::string& set_tag,
               std::int64_t n_max, const std::vector<const BigCount*>& values) const;
    std::optional<RoughTable> load_rough(bool quiet) const;
    void warn(const std::string& message) const;

    std::filesystem::path dir_;
    WarningSink warn_;
};

}  // namespace blockfree
