#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "blockfree/block_size_set.hpp"
#include "blockfree/exact_counts.hpp"

namespace blockfree {

/// Natural logarithm of a positive quantity. Products and quotients of the
/// represented quantities are sums and differences of the logs.
struct LogValue {
    double ln = 0.0;

    double value() const { return std::exp(ln); }

    friend LogValue operator+(LogValue a, LogValue b) { return {a.ln + b.ln}; }
    friend LogValue operator-(LogValue a, LogValue b) { return {a.ln - b.ln}; }
    friend auto operator<=>(LogValue, LogValue) = default;
};

/// expm1(a - b): relative error of quantity a against reference b.
inline double relative_error(LogValue approx, LogValue exact) { return std::expm1(approx.ln - exact.ln); }

/// Positive solution r of r e^r = n.
struct SaddlePoint {
    std::int64_t n = 0;
    double r = 0.0;
    double residual = 0.0;  // r e^r - n
    int iterations = 0;
    bool used_bisection = false;
};

/// Newton iteration on r e^r - n, bisection fallback. Requires n >= 1.
SaddlePoint lambert_w(std::int64_t n);

/// log n - log log n + log log n / log n, with error O((log log n / log n)^2).
/// Requires n >= 16.
double lambert_w_expansion(std::int64_t n);

/// The two real solutions of eta (1 - log eta) = 1/2.
struct EtaRoots {
    double eta1 = 0.0;
    double eta2 = 0.0;
};

EtaRoots eta_roots();

/// eta (1 - log eta) - 1/2.
inline double eta_equation(double eta) { return eta * (1.0 - std::log(eta)) - 0.5; }

/// Thrown when a series term would overflow a double.
class SeriesOverflowError : public std::overflow_error {
    using std::overflow_error::overflow_error;
};

/// order-th derivative of alpha_S(r) = sum_{k in S} r^k / k!, for order 0..2.
double alpha_eval(const BlockSizeSet& forbidden, double r, int order = 0);

/// beta_m(r) = sum_{j=0}^{m} r^j / j!.
double beta_eval(std::int64_t m, double r);

/// sum_{j > m} r^j / j!, summed directly.
double exp_tail(std::int64_t m, double r);

/// Gap parameters 0 < delta1 < eta1 and delta2 > eta2.
struct GapBounds {
    double delta1 = 0.18;
    double delta2 = 2.16;
};

/// Throws std::invalid_argument unless delta1 in (0, eta1) and delta2 > eta2.
void check_gap_bounds(const GapBounds& gap);

/// No element of S lies in [delta1 r(n), delta2 r(n)].
bool admissible(const BlockSizeSet& forbidden, std::int64_t n, const GapBounds& gap = {});

class InadmissibleSetError : public std::domain_error {
public:
    InadmissibleSetError(std::int64_t element, double lo, double hi);
    std::int64_t element() const { return element_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    std::int64_t element_;
    double lo_, hi_;
};

enum class Admissibility { enforce, unchecked };

/// ln(n!) as a compensated cumulative sum of ln k, cached across calls.
LogValue log_factorial(std::int64_t n);

/// ln of n! exp(e^r - 1 - alpha(r)) / (r^n sqrt(2 pi r (r+1) e^r)) with
/// e^r replaced by n/r.
LogValue log_main_term(std::int64_t n, const BlockSizeSet& forbidden,
                               Admissibility policy = Admissibility::enforce, const GapBounds& gap = {});

struct RatioEstimates {
    double main = 0.0;            // exp(-alpha(r)) ~ B_{n,S} / B_n
    double error_term = 0.0;      // alpha'(r)^2 e^{-r}
    double singleton_main = 0.0;  // r/n ~ B_{n,1}/B_n ~ I_n/B_n
    double practical_main = 0.0;  // 1 - r/n ~ P_n/B_n
};

RatioEstimates ratio_estimates(std::int64_t n, const BlockSizeSet& forbidden,
                               Admissibility policy = Admissibility::enforce, const GapBounds& gap = {});

/// (e r/m)^{2m-2} / e^r: scale of the relative error for max S = m with
/// 1 <= m <= delta1 r. An upper-bound scale, not the error itself.
double small_set_error_scale(std::int64_t n, std::int64_t m, const GapBounds& gap = {});

/// ln of n! exp(e^r - beta_m(r)) / r^n, an upper bound for B_{n,m}.
LogValue rough_upper_bound_log(std::int64_t n, std::int64_t m);

/// ln x for x >= 1 from the leading bits and the bit length.
LogValue log_of_bigcount(const BigCount& x);

/// Taylor coefficients [z^j] exp(e^z - 1 - alpha_S(z)) for j = 0..n_max, n_max <= 60.
std::vector<mpq_class> egf_coefficients(int n_max, const BlockSizeSet& forbidden);

inline constexpr int kEgfMaxN = 60;

}  // namespace blockfree
