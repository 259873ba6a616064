#include "blockfree/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <sstream>

namespace blockfree {

namespace {

constexpr double kLogOverflow = 700.0;

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double saddle_function(double r, double n) { return r * std::exp(r) - n; }

// r^k / k! through logs; refuses terms that would overflow.
double power_over_factorial(double r, std::int64_t k) {
    if (k == 0) return 1.0;
    const double kd = static_cast<double>(k);
    const double log_term = kd * std::log(r) - std::lgamma(kd + 1.0);
    if (log_term > kLogOverflow) {
        std::ostringstream msg;
        msg << "series term r^" << k << "/" << k << "! overflows (log = " << log_term << ", r = " << r << ")";
        throw SeriesOverflowError(msg.str());
    }
    return std::exp(log_term);
}

void require_n(std::int64_t n, std::int64_t min) {
    if (n < min) throw std::invalid_argument("n must be >= " + std::to_string(min) + ", got " + std::to_string(n));
}

double bisect(double lo, double hi, double (*g)(double, double), double param, double tol) {
    double g_lo = g(lo, param);
    for (int i = 0; i < 400; ++i) {
        double mid = 0.5 * (lo + hi);
        double g_mid = g(mid, param);
        if (std::abs(g_mid) <= tol || mid == lo || mid == hi) return mid;
        if ((g_mid < 0) == (g_lo < 0)) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

SaddlePoint lambert_w(std::int64_t n) {
    require_n(n, 1);
    const double nd = static_cast<double>(n);
    const double tol = nd * 1e-13;
    SaddlePoint sp;
    sp.n = n;

    double r = 0.5;
    if (n >= 3) r = std::max(std::log(nd) - std::log(std::log(nd)), 0.5);
    for (int it = 0; it < 50; ++it) {
        const double e = std::exp(r);
        const double f = r * e - nd;
        sp.iterations = it;
        if (std::abs(f) <= tol) {
            sp.r = r;
            sp.residual = f;
            return sp;
        }
        r -= f / (e * (1.0 + r));
        if (!std::isfinite(r) || r <= 0.0) break;
    }

    double lo = 0.0;
    double hi = 1.0;
    if (n >= 3) {
        const double ln = std::log(nd);
        lo = std::max(0.1, ln - 2.0 * std::log(ln));
        hi = ln + 1.0;
    }
    r = bisect(lo, hi, saddle_function, nd, tol);
    sp.r = r;
    sp.residual = saddle_function(r, nd);
    sp.used_bisection = true;
    if (!(std::abs(sp.residual) <= tol)) {
        throw std::runtime_error("Lambert-W solve failed to converge for n = " + std::to_string(n));
    }
    return sp;
}

double lambert_w_expansion(std::int64_t n) {
    require_n(n, 16);
    const double ln = std::log(static_cast<double>(n));
    const double lnln = std::log(ln);
    return ln - lnln + lnln / ln;
}

EtaRoots eta_roots() {
    auto g = [](double eta, double) { return eta_equation(eta); };
    auto polish = [](double eta) {
        // g'(eta) = -log eta
        for (int i = 0; i < 3; ++i) {
            const double d = -std::log(eta);
            if (d == 0.0) break;
            const double step = eta_equation(eta) / d;
            if (step == 0.0) break;
            eta -= step;
        }
        return eta;
    };
    EtaRoots roots;
    roots.eta1 = polish(bisect(1e-3, 1.0, g, 0.0, 0.0));
    roots.eta2 = polish(bisect(1.0, 3.0, g, 0.0, 0.0));
    return roots;
}

double alpha_eval(const BlockSizeSet& forbidden, double r, int order) {
    if (order < 0 || order > 2) throw std::invalid_argument("alpha_eval supports derivative order 0..2");
    if (!(r > 0.0)) throw std::invalid_argument("alpha_eval requires r > 0");
    CompensatedSum sum;
    forbidden.for_each([&](std::int64_t k) {
        if (k >= order) sum.add(power_over_factorial(r, k - order));
    });
    return sum.value();
}

double beta_eval(std::int64_t m, double r) {
    if (m < 0) throw std::invalid_argument("beta_eval requires m >= 0");
    if (!(r > 0.0)) throw std::invalid_argument("beta_eval requires r > 0");
    CompensatedSum sum;
    double term = 1.0;
    sum.add(term);
    for (std::int64_t j = 1; j <= m; ++j) {
        term *= r / static_cast<double>(j);
        sum.add(term);
        if (static_cast<double>(j) > r && term < 1e-18 * sum.value()) break;
    }
    const double v = sum.value();
    if (!std::isfinite(v)) throw SeriesOverflowError("beta series overflows");
    return v;
}

double exp_tail(std::int64_t m, double r) {
    if (m < 0) throw std::invalid_argument("exp_tail requires m >= 0");
    if (!(r > 0.0)) throw std::invalid_argument("exp_tail requires r > 0");
    CompensatedSum sum;
    double term = power_over_factorial(r, m + 1);
    sum.add(term);
    for (std::int64_t j = m + 2;; ++j) {
        term *= r / static_cast<double>(j);
        sum.add(term);
        if (static_cast<double>(j) > r && term <= 1e-18 * sum.value()) break;
    }
    return sum.value();
}

void check_gap_bounds(const GapBounds& gap) {
    const auto eta = eta_roots();
    if (!(gap.delta1 > 0.0 && gap.delta1 < eta.eta1 && gap.delta2 > eta.eta2)) {
        std::ostringstream msg;
        msg << "gap bounds need 0 < delta1 < " << eta.eta1 << " and delta2 > " << eta.eta2 << "; got delta1 = "
            << gap.delta1 << ", delta2 = " << gap.delta2;
        throw std::invalid_argument(msg.str());
    }
}

bool admissible(const BlockSizeSet& forbidden, std::int64_t n, const GapBounds& gap) {
    check_gap_bounds(gap);
    const double r = lambert_w(n).r;
    return !forbidden.intersects(gap.delta1 * r, gap.delta2 * r);
}

namespace {

std::string inadmissible_message(std::int64_t element, double lo, double hi) {
    std::ostringstream msg;
    msg << "block size " << element << " lies in the excluded interval [" << lo << ", " << hi
        << "]; the estimate is only justified when S avoids [delta1 r, delta2 r]";
    return msg.str();
}

void enforce_admissible(const BlockSizeSet& forbidden, double r, Admissibility policy, const GapBounds& gap) {
    if (policy == Admissibility::unchecked) return;
    check_gap_bounds(gap);
    const double lo = gap.delta1 * r;
    const double hi = gap.delta2 * r;
    if (auto k = forbidden.first_in(lo, hi)) throw InadmissibleSetError(*k, lo, hi);
}

}  // namespace

InadmissibleSetError::InadmissibleSetError(std::int64_t element, double lo, double hi)
    : std::domain_error(inadmissible_message(element, lo, hi)), element_(element), lo_(lo), hi_(hi) {}

LogValue log_factorial(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("log_factorial requires n >= 0");
    // cache[k] = (sum, compensation) of ln 1 + ... + ln k
    static std::vector<std::pair<double, double>> cache{{0.0, 0.0}};
    static std::shared_mutex mutex;
    const auto idx = static_cast<std::size_t>(n);
    {
        std::shared_lock lock(mutex);
        if (idx < cache.size()) return {cache[idx].first + cache[idx].second};
    }
    std::unique_lock lock(mutex);
    while (cache.size() <= idx) {
        auto [sum, comp] = cache.back();
        const double x = std::log(static_cast<double>(cache.size()));
        const double t = sum + x;
        comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        cache.emplace_back(t, comp);
    }
    return {cache[idx].first + cache[idx].second};
}

LogValue log_main_term(std::int64_t n, const BlockSizeSet& forbidden, Admissibility policy,
                               const GapBounds& gap) {
    require_n(n, 1);
    const double nd = static_cast<double>(n);
    const double r = lambert_w(n).r;
    enforce_admissible(forbidden, r, policy, gap);
    const double e_r = nd / r;
    const double ln = log_factorial(n).ln + (e_r - 1.0 - alpha_eval(forbidden, r, 0)) - nd * std::log(r) -
                      0.5 * std::log(2.0 * std::numbers::pi * r * (r + 1.0) * e_r);
    return {ln};
}

RatioEstimates ratio_estimates(std::int64_t n, const BlockSizeSet& forbidden, Admissibility policy,
                               const GapBounds& gap) {
    require_n(n, 1);
    const double r = lambert_w(n).r;
    enforce_admissible(forbidden, r, policy, gap);
    const double r_over_n = r / static_cast<double>(n);
    const double d_alpha = alpha_eval(forbidden, r, 1);
    RatioEstimates out;
    out.main = std::exp(-alpha_eval(forbidden, r, 0));
    out.error_term = d_alpha * d_alpha * r_over_n;
    out.singleton_main = r_over_n;
    out.practical_main = 1.0 - r_over_n;
    return out;
}

double small_set_error_scale(std::int64_t n, std::int64_t m, const GapBounds& gap) {
    require_n(n, 1);
    const double r = lambert_w(n).r;
    if (m < 1 || static_cast<double>(m) > gap.delta1 * r) {
        std::ostringstream msg;
        msg << "small_set_error_scale needs 1 <= m <= delta1 r = " << gap.delta1 * r << "; got m = " << m;
        throw std::invalid_argument(msg.str());
    }
    const double md = static_cast<double>(m);
    return std::exp((2.0 * md - 2.0) * (1.0 + std::log(r) - std::log(md)) - r);
}

LogValue rough_upper_bound_log(std::int64_t n, std::int64_t m) {
    require_n(n, 1);
    if (m < 0) throw std::invalid_argument("rough_upper_bound_log requires m >= 0");
    const double nd = static_cast<double>(n);
    const double r = lambert_w(n).r;
    // e^r - beta_m(r); summed directly once the tail is small relative to e^r
    const double tail = static_cast<double>(m + 1) > r ? exp_tail(m, r) : nd / r - beta_eval(m, r);
    return {log_factorial(n).ln + tail - nd * std::log(r)};
}

LogValue log_of_bigcount(const BigCount& x) {
    if (x < 1) throw std::invalid_argument("log_of_bigcount requires x >= 1");
    long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, x.get_mpz_t());  // x ~ mantissa * 2^exponent
    return {std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2};
}

std::vector<mpq_class> egf_coefficients(int n_max, const BlockSizeSet& forbidden) {
    if (n_max < 0 || n_max > kEgfMaxN) {
        throw std::invalid_argument("egf_coefficients supports 0 <= n_max <= " + std::to_string(kEgfMaxN));
    }
    // exponent E(z) = sum_{k >= 1, k not in S} z^k / k!
    std::vector<mpq_class> e(static_cast<std::size_t>(n_max) + 1, 0);
    mpz_class fact = 1;
    for (int k = 1; k <= n_max; ++k) {
        fact *= k;
        if (!forbidden.contains(k)) e[k] = mpq_class(mpz_class(1), fact);
    }
    // G = exp(E) satisfies G' = E' G: j g_j = sum_{k=1}^{j} k e_k g_{j-k}
    std::vector<mpq_class> g(static_cast<std::size_t>(n_max) + 1, 0);
    g[0] = 1;
    for (int j = 1; j <= n_max; ++j) {
        mpq_class acc = 0;
        for (int k = 1; k <= j; ++k) {
            if (e[k] != 0) acc += k * e[k] * g[j - k];
        }
        acc /= j;
        acc.canonicalize();
        g[j] = acc;
    }
    return g;
}

}  // namespace blockfree
