#include "blockfree/exact_counts.hpp"

#include <mutex>
#include <stdexcept>
#include <string>

namespace blockfree {

namespace {

const BigCount kZero{0};
const BigCount kOne{1};

void require_nonnegative(std::int64_t n, const char* what) {
    if (n < 0) throw std::invalid_argument(std::string(what) + " must be >= 0, got " + std::to_string(n));
}

}  // namespace

PascalRow::PascalRow(std::int64_t n) {
    require_nonnegative(n, "Pascal row index");
    row_.resize(static_cast<std::size_t>(n) + 1);
    row_[0] = 1;
    // C(n,k+1) = C(n,k) (n-k) / (k+1), exact at every step
    for (std::int64_t k = 0; k < n; ++k) {
        row_[k + 1] = row_[k] * static_cast<unsigned long>(n - k);
        mpz_divexact_ui(row_[k + 1].get_mpz_t(), row_[k + 1].get_mpz_t(), static_cast<unsigned long>(k + 1));
    }
}

void PascalRow::advance() {
    row_.emplace_back(1);
    for (std::size_t k = row_.size() - 2; k >= 1; --k) row_[k] += row_[k - 1];
}

BigCount binomial(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0 || k > n) return 0;
    static std::mutex mutex;
    static PascalRow cached;
    std::lock_guard lock(mutex);
    if (cached.n() == n - 1) {
        cached.advance();
    } else if (cached.n() != n) {
        cached = PascalRow(n);
    }
    return cached[k];
}

std::vector<BigCount> count_avoiding_sequence(std::int64_t n_max, const BlockSizeSet& forbidden) {
    require_nonnegative(n_max, "n");
    std::vector<BigCount> b(static_cast<std::size_t>(n_max) + 1);
    b[0] = 1;
    std::vector<char> allowed(static_cast<std::size_t>(n_max) + 1);
    for (std::int64_t s = 1; s <= n_max; ++s) allowed[s] = !forbidden.contains(s);

    PascalRow row;  // row j-1
    for (std::int64_t j = 1; j <= n_max; ++j) {
        BigCount acc = 0;
        for (std::int64_t k = 0; k <= j - 1; ++k) {
            if (allowed[j - k]) mpz_addmul(acc.get_mpz_t(), row[k].get_mpz_t(), b[k].get_mpz_t());
        }
        b[j] = std::move(acc);
        row.advance();
    }
    return b;
}

BigCount count_avoiding(std::int64_t n, const BlockSizeSet& forbidden) {
    return count_avoiding_sequence(n, forbidden).back();
}

BigCount bell(std::int64_t n) { return count_avoiding(n, BlockSizeSet{}); }

std::vector<BigCount> bell_sequence(std::int64_t n_max) { return count_avoiding_sequence(n_max, BlockSizeSet{}); }

const BigCount& RoughTable::at(std::int64_t j, std::int64_t m) const {
    if (j < 0 || m < 0 || j > n_max()) {
        throw std::out_of_range("rough table lookup (" + std::to_string(j) + ", " + std::to_string(m) +
                                ") outside table with n_max " + std::to_string(n_max()));
    }
    if (j == 0) return kOne;
    if (m >= j) return kZero;
    return rows_[j][m];
}

void RoughTable::extend(std::int64_t new_n_max) {
    if (new_n_max <= n_max()) return;
    PascalRow row(n_max());  // row j-1 for the first new j
    for (std::int64_t j = n_max() + 1; j <= new_n_max; ++j) {
        std::vector<BigCount> next(static_cast<std::size_t>(j) + 1);
        for (std::int64_t m = 0; m <= j; ++m) {
            if (m >= j) {
                next[m] = 0;
                continue;
            }
            // k = 0 contributes B_{0,m} = 1; 1 <= k <= m contribute B_{k,m} = 0;
            // k must leave a first block of size j-k > m.
            BigCount acc = 1;
            for (std::int64_t k = m + 1; k <= j - m - 1; ++k) {
                mpz_addmul(acc.get_mpz_t(), row[k].get_mpz_t(), rows_[k][m].get_mpz_t());
            }
            next[m] = std::move(acc);
        }
        rows_.push_back(std::move(next));
        row.advance();
    }
}

bool RoughTable::boundary_invariants_hold() const {
    if (rows_.empty() || rows_[0].size() != 1 || rows_[0][0] != 1) return false;
    for (std::size_t j = 1; j < rows_.size(); ++j) {
        if (rows_[j].size() != j + 1) return false;
        for (std::size_t m = 0; m <= j; ++m) {
            const auto& v = rows_[j][m];
            if (v < 0) return false;
            if (m >= j && v != 0) return false;
            if (m < j && j <= 2 * m + 1 && v != 1) return false;
        }
    }
    return true;
}

RoughTable RoughTable::from_rows(std::vector<std::vector<BigCount>> rows) {
    RoughTable t;
    t.rows_ = std::move(rows);
    if (!t.boundary_invariants_hold()) throw std::invalid_argument("rough table rows violate boundary invariants");
    return t;
}

RoughTable rough_table(std::int64_t n_max) {
    require_nonnegative(n_max, "n_max");
    RoughTable t;
    t.extend(n_max);
    return t;
}

PracticalCounts practical_counts(const RoughTable& table, std::int64_t n_max) {
    require_nonnegative(n_max, "n_max");
    if (table.n_max() < n_max) {
        throw std::invalid_argument("rough table covers n <= " + std::to_string(table.n_max()) + ", need " +
                                    std::to_string(n_max));
    }
    PracticalCounts out;
    out.n_max = n_max;
    out.p.resize(static_cast<std::size_t>(n_max) + 1);
    out.i.resize(static_cast<std::size_t>(n_max) + 1);
    out.p[0] = 1;
    out.i[0] = 0;

    PascalRow row;
    BigCount term;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        row.advance();
        const BigCount& b_n = table.at(n, 0);

        // The k = n summand of B_n = sum_k C(n,k) P_k B_{n-k,k+1} is P_n itself.
        BigCount rest = 0;
        for (std::int64_t k = 0; k < n; ++k) {
            mpz_mul(term.get_mpz_t(), row[k].get_mpz_t(), out.p[k].get_mpz_t());
            mpz_addmul(rest.get_mpz_t(), term.get_mpz_t(), table.at(n - k, k + 1).get_mpz_t());
        }
        out.p[n] = b_n - rest;
        out.i[n] = b_n - out.p[n];

        BigCount impractical = table.at(n, 1);
        for (std::int64_t k = 1; 2 * k <= n - 2; ++k) {
            mpz_mul(term.get_mpz_t(), row[k].get_mpz_t(), out.p[k].get_mpz_t());
            mpz_addmul(impractical.get_mpz_t(), term.get_mpz_t(), table.at(n - k, k + 1).get_mpz_t());
        }
        if (impractical != out.i[n] || out.p[n] < 0) {
            throw std::logic_error("impractical count mismatch at n = " + std::to_string(n) + ": " +
                                   out.i[n].get_str() + " vs " + impractical.get_str());
        }
    }
    return out;
}

PracticalCounts practical_counts(std::int64_t n_max) { return practical_counts(rough_table(n_max), n_max); }

}  // namespace blockfree
