#pragma once

// Nonparametric two-sample tests and the special functions behind their
// p-values. Everything in this header is a pure function of its arguments,
// so it is safe to call from any number of concurrent workers.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hirebias/errors.hpp"

namespace hirebias::stats {

enum class TestMethod { ChiSquare, WilcoxonRankSum, KSTwoSample, KSOneSample };
enum class TestMode { Asymptotic, ExactPermutation };

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;  // always clamped to [0,1]
    std::size_t n_a = 0;
    std::size_t n_b = 0;
    TestMethod method = TestMethod::ChiSquare;
    TestMode mode = TestMode::Asymptotic;
    bool degenerate = false;            // p forced to 1 on degenerate input
    bool parameters_estimated = false;  // one-sample KS fitted its parameters from the data
};

// =============================================================================
// Special functions
// =============================================================================

namespace detail {

// Regularized lower incomplete gamma P(a,x) by power series; converges
// quickly for x < a+1.
inline double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 1000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a,x) by modified Lentz continued
// fraction; converges quickly for x >= a+1.
inline double gamma_q_cf(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a,x) = 1 - P(a,x), the regularized upper incomplete gamma function.
inline double gamma_q(double a, double x) {
    if (x == 0.0) return 1.0;
    return (x < a + 1.0) ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

inline double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

inline void require_nonempty(std::span<const double> s, const char* which) {
    if (s.empty()) throw DomainError(std::string(which) + " sample is empty");
}

}  // namespace detail

// Survival function of the chi-square distribution with df degrees of
// freedom: Q(df/2, x/2). Non-increasing in x.
inline double chi_square_sf(double x, unsigned df) {
    if (df == 0) throw DomainError("chi_square_sf: df must be >= 1");
    if (!std::isfinite(x) || x < 0.0) throw DomainError("chi_square_sf: x must be finite and >= 0");
    return detail::clamp01(detail::gamma_q(0.5 * df, 0.5 * x));
}

// Standard normal CDF via erfc(|z|/sqrt 2) = Q(1/2, z^2/2). Accurate well
// below 1e-7 absolute everywhere.
inline double normal_cdf(double z) {
    if (!std::isfinite(z)) throw DomainError("normal_cdf: z must be finite");
    if (z == 0.0) return 0.5;
    const double half_erfc = 0.5 * detail::gamma_q(0.5, 0.5 * z * z);
    return z > 0.0 ? 1.0 - half_erfc : half_erfc;
}

// Kolmogorov limiting survival function
//   Q_KS(lambda) = 2 * sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2),
// truncated once a term drops below 1e-12 and clamped to [0,1]. Below
// lambda = 0.2 the CDF is under 5e-14, so the limit value 1 is returned
// directly; summing the slowly-decaying alternating series there only
// accumulates roundoff and can break monotonicity.
inline double kolmogorov_sf(double lambda) {
    if (!(lambda >= 0.0)) throw DomainError("kolmogorov_sf: lambda must be >= 0");
    if (lambda <= 0.2) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 1000; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-12) break;
        sign = -sign;
    }
    return detail::clamp01(2.0 * sum);
}

// =============================================================================
// Chi-square test on a 2x2 contingency table
// =============================================================================

// Pearson chi-square with df = 1. Yates continuity correction is off by
// default. Rows are groups, columns are outcomes.
inline TestResult chi_square_2x2(const std::array<std::array<double, 2>, 2>& table,
                                 bool yates_correction = false) {
    for (const auto& row : table)
        for (double v : row)
            if (!std::isfinite(v) || v < 0.0)
                throw DomainError("chi_square_2x2: counts must be finite and >= 0");

    const double r0 = table[0][0] + table[0][1];
    const double r1 = table[1][0] + table[1][1];
    const double c0 = table[0][0] + table[1][0];
    const double c1 = table[0][1] + table[1][1];
    if (r0 == 0.0) throw DegenerateTableError("chi_square_2x2: row 0 margin is empty");
    if (r1 == 0.0) throw DegenerateTableError("chi_square_2x2: row 1 margin is empty");
    if (c0 == 0.0) throw DegenerateTableError("chi_square_2x2: column 0 margin is empty");
    if (c1 == 0.0) throw DegenerateTableError("chi_square_2x2: column 1 margin is empty");

    const double n = r0 + r1;
    const double rows[2] = {r0, r1};
    const double cols[2] = {c0, c1};
    double stat = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double expected = rows[i] * cols[j] / n;
            double dev = std::fabs(table[i][j] - expected);
            if (yates_correction) dev = std::max(0.0, dev - 0.5);
            stat += dev * dev / expected;
        }
    }

    TestResult r;
    r.statistic = stat;
    r.p_value = chi_square_sf(stat, 1);
    r.n_a = static_cast<std::size_t>(r0);
    r.n_b = static_cast<std::size_t>(r1);
    r.method = TestMethod::ChiSquare;
    r.mode = TestMode::Asymptotic;
    return r;
}

// =============================================================================
// Wilcoxon rank-sum (Mann-Whitney) test
// =============================================================================

namespace detail {

// Midranks over the pooled sample, doubled so they stay integral (a midrank
// is always a multiple of 1/2). values[i].second is 0 for sample a, 1 for b.
struct RankedPool {
    std::vector<long long> doubled_rank;  // parallel to sorted pool
    std::vector<int> group;               // parallel to sorted pool
    double tie_term = 0.0;                // sum over tie groups of (t^3 - t)
};

inline RankedPool rank_pooled(std::span<const double> a, std::span<const double> b) {
    std::vector<std::pair<double, int>> pool;
    pool.reserve(a.size() + b.size());
    for (double v : a) pool.emplace_back(v, 0);
    for (double v : b) pool.emplace_back(v, 1);
    std::sort(pool.begin(), pool.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    RankedPool out;
    out.doubled_rank.resize(pool.size());
    out.group.resize(pool.size());
    std::size_t i = 0;
    while (i < pool.size()) {
        std::size_t j = i;
        while (j + 1 < pool.size() && pool[j + 1].first == pool[i].first) ++j;
        // ranks i+1 .. j+1 share the midrank ((i+1)+(j+1))/2; doubled = i+j+2
        const long long doubled = static_cast<long long>(i) + static_cast<long long>(j) + 2;
        const double t = static_cast<double>(j - i + 1);
        out.tie_term += t * t * t - t;
        for (std::size_t k = i; k <= j; ++k) {
            out.doubled_rank[k] = doubled;
            out.group[k] = pool[k].second;
        }
        i = j + 1;
    }
    return out;
}

// Enumerate all C(N, n_a) assignments of pooled observations to group a and
// count how many produce a doubled rank sum <= / >= the observed one.
inline void enumerate_rank_sums(const std::vector<long long>& doubled_rank, std::size_t n_a,
                                long long observed2, double& count_le, double& count_ge,
                                double& total) {
    const std::size_t n = doubled_rank.size();
    std::vector<std::size_t> idx(n_a);
    for (std::size_t i = 0; i < n_a; ++i) idx[i] = i;
    count_le = count_ge = total = 0.0;
    while (true) {
        long long sum2 = 0;
        for (std::size_t i : idx) sum2 += doubled_rank[i];
        total += 1.0;
        if (sum2 <= observed2) count_le += 1.0;
        if (sum2 >= observed2) count_ge += 1.0;
        // next combination in lexicographic order
        std::size_t i = n_a;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - n_a) {
                ++idx[i];
                for (std::size_t j = i + 1; j < n_a; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
        if (n_a == 0) return;
    }
}

}  // namespace detail

// Two-sided Mann-Whitney test. Asymptotic mode uses midranks, the
// tie-corrected variance and (by default) a 0.5 continuity correction.
// Exact mode enumerates every C(N, n_a) label assignment and doubles the
// smaller tail; it is permitted only for N <= 20.
inline TestResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b,
                                    TestMode mode = TestMode::Asymptotic,
                                    bool continuity_correction = true) {
    detail::require_nonempty(a, "wilcoxon_rank_sum: first");
    detail::require_nonempty(b, "wilcoxon_rank_sum: second");
    const std::size_t n_a = a.size(), n_b = b.size(), n = n_a + n_b;
    if (mode == TestMode::ExactPermutation && n > 20)
        throw ModeError("wilcoxon_rank_sum: exact mode limited to n_a + n_b <= 20, got " +
                        std::to_string(n));

    const auto pool = detail::rank_pooled(a, b);
    long long rank2_a = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (pool.group[i] == 0) rank2_a += pool.doubled_rank[i];
    // U = R_a - n_a(n_a+1)/2, carried doubled to stay integral under midranks
    const long long u2 = rank2_a - static_cast<long long>(n_a) * (static_cast<long long>(n_a) + 1);
    const double u = 0.5 * static_cast<double>(u2);

    TestResult r;
    r.statistic = u;
    r.n_a = n_a;
    r.n_b = n_b;
    r.method = TestMethod::WilcoxonRankSum;
    r.mode = mode;

    if (mode == TestMode::ExactPermutation) {
        double count_le = 0.0, count_ge = 0.0, total = 0.0;
        // U orders assignments the same way as the rank sum, so tails can be
        // counted on doubled rank sums directly.
        detail::enumerate_rank_sums(pool.doubled_rank, n_a, rank2_a, count_le, count_ge, total);
        r.p_value = detail::clamp01(2.0 * std::min(count_le, count_ge) / total);
        return r;
    }

    const double mean_u = 0.5 * static_cast<double>(n_a) * static_cast<double>(n_b);
    const double nn = static_cast<double>(n);
    const double tie_adjust = pool.tie_term / (nn * (nn - 1.0));
    const double variance =
        (static_cast<double>(n_a) * static_cast<double>(n_b) / 12.0) * (nn + 1.0 - tie_adjust);
    double z = 0.0;
    if (variance > 0.0) {
        double dev = std::fabs(u - mean_u);
        if (continuity_correction) dev = std::max(0.0, dev - 0.5);
        z = dev / std::sqrt(variance);
        if (u < mean_u) z = -z;
    }
    r.p_value = z == 0.0 ? 1.0 : detail::clamp01(2.0 * normal_cdf(-std::fabs(z)));
    return r;
}

// =============================================================================
// Kolmogorov-Smirnov tests
// =============================================================================

// Two-sample KS: D is the sup over pooled points of |ECDF_a - ECDF_b|;
// the p-value uses the Stephens effective-n scaling
//   lambda = (sqrt(n_e) + 0.12 + 0.11/sqrt(n_e)) * D,  n_e = n_a n_b / (n_a + n_b).
inline TestResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
    detail::require_nonempty(a, "ks_two_sample: first");
    detail::require_nonempty(b, "ks_two_sample: second");

    std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double n_a = static_cast<double>(sa.size());
    const double n_b = static_cast<double>(sb.size());

    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < sa.size() || j < sb.size()) {
        double t;
        if (i < sa.size() && j < sb.size())
            t = std::min(sa[i], sb[j]);
        else if (i < sa.size())
            t = sa[i];
        else
            t = sb[j];
        while (i < sa.size() && sa[i] == t) ++i;
        while (j < sb.size() && sb[j] == t) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / n_a - static_cast<double>(j) / n_b));
    }

    const double n_e = n_a * n_b / (n_a + n_b);
    const double sqrt_ne = std::sqrt(n_e);
    const double lambda = (sqrt_ne + 0.12 + 0.11 / sqrt_ne) * d;

    TestResult r;
    r.statistic = d;
    r.p_value = kolmogorov_sf(lambda);
    r.n_a = sa.size();
    r.n_b = sb.size();
    r.method = TestMethod::KSTwoSample;
    r.mode = TestMode::Asymptotic;
    return r;
}

enum class DistTarget { Normal, LogNormal };

// One-sample KS diagnostic against a Normal or LogNormal fit. Mean and
// standard deviation are estimated from the (log-transformed) sample, so the
// p-value carries the usual Lilliefors caveat; the result is flagged via
// parameters_estimated rather than corrected.
inline TestResult ks_one_sample_diagnostic(std::span<const double> x, DistTarget target) {
    if (x.size() < 3) throw DomainError("ks_one_sample_diagnostic: need at least 3 observations");

    std::vector<double> y(x.begin(), x.end());
    if (target == DistTarget::LogNormal) {
        for (double& v : y) {
            if (!(v > 0.0))
                throw DomainError("ks_one_sample_diagnostic: log-normal target needs positive values");
            v = std::log(v);
        }
    }

    const double n = static_cast<double>(y.size());
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : y) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    if (sd == 0.0) throw DomainError("ks_one_sample_diagnostic: sample has zero variance");

    std::sort(y.begin(), y.end());
    double d = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double f = normal_cdf((y[i] - mean) / sd);
        const double lo = f - static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n - f;
        d = std::max(d, std::max(lo, hi));
    }

    const double sqrt_n = std::sqrt(n);
    const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;

    TestResult r;
    r.statistic = d;
    r.p_value = kolmogorov_sf(lambda);
    r.n_a = y.size();
    r.n_b = 0;
    r.method = TestMethod::KSOneSample;
    r.mode = TestMode::Asymptotic;
    r.parameters_estimated = true;
    return r;
}

}  // namespace hirebias::stats
