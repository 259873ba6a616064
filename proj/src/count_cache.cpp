#include "blockfree/count_cache.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <system_error>

namespace blockfree {

namespace fs = std::filesystem;

namespace {

constexpr const char* kMagic = "blockfree-cache";

std::string header_line(const std::string& kind, std::int64_t n_max, const std::string& set_tag) {
    std::ostringstream out;
    out << kMagic << " v" << CountCache::kFormatVersion << " kind=" << kind << " n_max=" << n_max;
    if (!set_tag.empty()) out << " set=" << set_tag;
    return out.str();
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string file_tag(const BlockSizeSet& s) {
    auto text = s.to_string();
    if (text.size() <= 64) {
        for (auto& c : text) {
            if (c == ',') c = '_';
        }
        return text;
    }
    std::ostringstream out;
    out << "h" << std::hex << fnv1a(text);
    return out.str();
}

std::size_t triangle_size(std::int64_t n_max) {
    auto n = static_cast<std::size_t>(n_max);
    return (n + 1) * (n + 2) / 2;
}

}  // namespace

CountCache::CountCache(fs::path dir, WarningSink warn) : dir_(std::move(dir)), warn_(std::move(warn)) {}

fs::path CountCache::resolve_dir(const std::optional<std::string>& flag) {
    if (flag && !flag->empty()) return *flag;
    if (const char* env = std::getenv(kEnvVar); env != nullptr && *env != '\0') return env;
    return kDefaultDir;
}

void CountCache::warn(const std::string& message) const {
    if (warn_) {
        warn_(message);
    } else {
        std::clog << "warning: " << message << '\n';
    }
}

fs::path CountCache::rough_path() const { return dir_ / "rough-table.txt"; }

fs::path CountCache::sequence_path(const BlockSizeSet& forbidden) const {
    return dir_ / ("avoiding-" + file_tag(forbidden) + ".txt");
}

fs::path CountCache::practical_path() const { return dir_ / "practical.txt"; }

std::optional<CountCache::Loaded> CountCache::load(const fs::path& file, const std::string& kind,
                                                   const std::string& set_tag, bool quiet) const {
    std::error_code ec;
    if (!fs::exists(file, ec)) return std::nullopt;
    std::ifstream in(file);
    std::string header;
    auto reject = [&](const std::string& why) -> std::optional<Loaded> {
        if (!quiet) warn("ignoring cache file " + file.string() + ": " + why);
        return std::nullopt;
    };
    if (!in || !std::getline(in, header)) return reject("unreadable");

    std::istringstream hs(header);
    std::string magic, version, kind_field, n_field, set_field, extra;
    hs >> magic >> version >> kind_field >> n_field;
    if (!set_tag.empty()) hs >> set_field;
    if (hs >> extra) return reject("unexpected header '" + header + "'");
    if (magic != kMagic || version != "v" + std::to_string(kFormatVersion) || kind_field != "kind=" + kind ||
        n_field.rfind("n_max=", 0) != 0 || (!set_tag.empty() && set_field != "set=" + set_tag)) {
        return reject("bad header '" + header + "'");
    }
    Loaded loaded;
    try {
        std::size_t used = 0;
        loaded.n_max = std::stoll(n_field.substr(6), &used);
        if (used != n_field.size() - 6 || loaded.n_max < 0) return reject("bad n_max");
    } catch (const std::exception&) {
        return reject("bad n_max");
    }

    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.find_first_not_of("0123456789") != std::string::npos) {
            return reject("non-decimal entry at line " + std::to_string(loaded.values.size() + 2));
        }
        loaded.values.emplace_back(line, 10);
    }
    return loaded;
}

void CountCache::store(const fs::path& file, const std::string& kind, const std::string& set_tag,
                       std::int64_t n_max, const std::vector<const BigCount*>& values) const {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) {
        warn("cannot create cache directory " + dir_.string() + ": " + ec.message());
        return;
    }
    auto tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << header_line(kind, n_max, set_tag) << '\n';
        for (const auto* v : values) out << v->get_str() << '\n';
        if (!out) {
            warn("failed writing cache file " + tmp.string());
            return;
        }
    }
    fs::rename(tmp, file, ec);
    if (ec) warn("failed to install cache file " + file.string() + ": " + ec.message());
}

std::optional<RoughTable> CountCache::load_rough(bool quiet) const {
    auto loaded = load(rough_path(), "rough", "", quiet);
    if (!loaded) return std::nullopt;
    if (loaded->values.size() != triangle_size(loaded->n_max)) {
        if (!quiet) warn("ignoring cache file " + rough_path().string() + ": wrong entry count");
        return std::nullopt;
    }
    std::vector<std::vector<BigCount>> rows(static_cast<std::size_t>(loaded->n_max) + 1);
    std::size_t idx = 0;
    for (std::size_t j = 0; j < rows.size(); ++j) {
        rows[j].reserve(j + 1);
        for (std::size_t m = 0; m <= j; ++m) rows[j].push_back(std::move(loaded->values[idx++]));
    }
    try {
        return RoughTable::from_rows(std::move(rows));
    } catch (const std::invalid_argument& e) {
        if (!quiet) warn("ignoring cache file " + rough_path().string() + ": " + e.what());
        return std::nullopt;
    }
}

RoughTable CountCache::rough_table(std::int64_t n_max) {
    auto table = load_rough(false).value_or(RoughTable{});
    if (table.n_max() >= n_max) return table;
    table.extend(n_max);
    std::vector<const BigCount*> flat;
    flat.reserve(triangle_size(n_max));
    for (const auto& row : table.rows()) {
        for (const auto& v : row) flat.push_back(&v);
    }
    store(rough_path(), "rough", "", table.n_max(), flat);
    return table;
}

std::vector<BigCount> CountCache::avoiding_sequence(std::int64_t n_max, const BlockSizeSet& forbidden) {
    const auto tag = forbidden.to_string();
    if (auto loaded = load(sequence_path(forbidden), "avoiding", tag, false)) {
        if (loaded->values.size() == static_cast<std::size_t>(loaded->n_max) + 1 && loaded->values[0] == 1) {
            if (loaded->n_max >= n_max) {
                loaded->values.resize(static_cast<std::size_t>(n_max) + 1);
                return std::move(loaded->values);
            }
        } else {
            warn("ignoring cache file " + sequence_path(forbidden).string() + ": wrong entry count");
        }
    }
    auto seq = count_avoiding_sequence(n_max, forbidden);
    std::vector<const BigCount*> ptrs;
    for (const auto& v : seq) ptrs.push_back(&v);
    store(sequence_path(forbidden), "avoiding", tag, n_max, ptrs);
    return seq;
}

PracticalCounts CountCache::practical_counts(std::int64_t n_max) {
    if (auto loaded = load(practical_path(), "practical", "", false)) {
        const auto len = static_cast<std::size_t>(loaded->n_max) + 1;
        if (loaded->values.size() == 2 * len && loaded->values[0] == 1 && loaded->values[len] == 0) {
            if (loaded->n_max >= n_max) {
                PracticalCounts out;
                out.n_max = n_max;
                const auto keep = static_cast<std::ptrdiff_t>(n_max) + 1;
                out.p.assign(loaded->values.begin(), loaded->values.begin() + keep);
                out.i.assign(loaded->values.begin() + static_cast<std::ptrdiff_t>(len),
                             loaded->values.begin() + static_cast<std::ptrdiff_t>(len) + keep);
                return out;
            }
        } else {
            warn("ignoring cache file " + practical_path().string() + ": wrong entry count");
        }
    }
    auto counts = blockfree::practical_counts(rough_table(n_max), n_max);
    std::vector<const BigCount*> ptrs;
    for (const auto& v : counts.p) ptrs.push_back(&v);
    for (const auto& v : counts.i) ptrs.push_back(&v);
    store(practical_path(), "practical", "", n_max, ptrs);
    return counts;
}

std::optional<std::int64_t> CountCache::cached_rough_n_max() const {
    if (auto t = load_rough(true)) return t->n_max();
    return std::nullopt;
}

std::optional<std::int64_t> CountCache::cached_sequence_n_max(const BlockSizeSet& forbidden) const {
    auto loaded = load(sequence_path(forbidden), "avoiding", forbidden.to_string(), true);
    if (loaded && loaded->values.size() == static_cast<std::size_t>(loaded->n_max) + 1) return loaded->n_max;
    return std::nullopt;
}

std::optional<std::int64_t> CountCache::cached_practical_n_max() const {
    auto loaded = load(practical_path(), "practical", "", true);
    if (loaded && loaded->values.size() == 2 * (static_cast<std::size_t>(loaded->n_max) + 1)) return loaded->n_max;
    return std::nullopt;
}

std::vector<CountCache::Entry> CountCache::inspect() const {
    std::vector<Entry> out;
    std::error_code ec;
    if (!fs::is_directory(dir_, ec)) return out;
    for (const auto& item : fs::directory_iterator(dir_, ec)) {
        if (!item.is_regular_file() || item.path().extension() != ".txt") continue;
        Entry e;
        e.file = item.path();
        e.bytes = item.file_size(ec);
        std::ifstream in(item.path());
        std::getline(in, e.header);
        e.valid = e.header.rfind(kMagic, 0) == 0;
        out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.file < b.file; });
    return out;
}

std::size_t CountCache::clear() {
    std::size_t removed = 0;
    std::error_code ec;
    for (const auto& e : inspect()) {
        if (fs::remove(e.file, ec)) ++removed;
    }
    return removed;
}

}  // namespace blockfree
