#pragma once

// Test-only oracles. Each one reaches the same quantity as the library by an
// independent route (quadrature, series, brute-force enumeration) so the two
// sides of every check stay uncoupled.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace oracles {

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature
// ---------------------------------------------------------------------------

inline double simpson_segment(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double eps,
                                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_segment(a, m, fa, flm, fm);
    const double right = simpson_segment(m, b, fm, frm, fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * eps)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double eps = 1e-12) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson_segment(a, b, fa, fm, fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, eps, 40);
}

// Chi-square survival function with df = 1 by quadrature. The substitution
// x = u^2 removes the density's singularity at zero:
//   SF(x) = sqrt(2/pi) * Integral_{sqrt(x)}^{inf} exp(-u^2/2) du.
inline double chi_square_sf_df1_quadrature(double x) {
    if (x == 0.0) return 1.0;
    const double lo = std::sqrt(x);
    const double hi = lo + 42.0;  // exp(-hi^2/2) is far below double precision
    const double integral =
        adaptive_simpson([](double u) { return std::exp(-0.5 * u * u); }, lo, hi, 1e-13);
    return std::sqrt(2.0 / M_PI) * integral;
}

// Chi-square survival function for general integer df by quadrature on the
// complementary integral, with the same singularity-removing substitution.
inline double chi_square_sf_quadrature(double x, unsigned df) {
    if (x == 0.0) return 1.0;
    const double k = static_cast<double>(df);
    const double log_norm = -0.5 * k * std::log(2.0) - std::lgamma(0.5 * k);
    // CDF(x) = Integral_0^sqrt(x) 2u (u^2)^{k/2-1} exp(-u^2/2) du / (2^{k/2} Gamma(k/2))
    const double cdf = adaptive_simpson(
        [&](double u) {
            if (u == 0.0) return k == 1.0 ? 0.0 : 0.0;  // integrand -> 0 for k >= 2
            const double log_f =
                std::log(2.0) + (k - 1.0) * std::log(u) - 0.5 * u * u + log_norm;
            return std::exp(log_f);
        },
        0.0, std::sqrt(x), 1e-13);
    return 1.0 - cdf;
}

// ---------------------------------------------------------------------------
// Error-function series
// ---------------------------------------------------------------------------

// Standard normal CDF from the Maclaurin series of erf, in extended
// precision. Converges for the |z| <= 8 range the tests use.
inline double normal_cdf_series(double z) {
    const long double x = static_cast<long double>(z) / std::sqrt(2.0L);
    long double term = x;
    long double sum = x;
    for (int n = 1; n < 400; ++n) {
        term *= -x * x / static_cast<long double>(n);
        const long double contrib = term / static_cast<long double>(2 * n + 1);
        sum += contrib;
        if (std::fabs(static_cast<double>(contrib)) < 1e-20) break;
    }
    const long double erf = 2.0L / std::sqrt(static_cast<long double>(M_PI)) * sum;
    return static_cast<double>(0.5L * (1.0L + erf));
}

// ---------------------------------------------------------------------------
// Kolmogorov series
// ---------------------------------------------------------------------------

// Fixed 50-term evaluation of 2 * sum (-1)^{k-1} exp(-2 k^2 lambda^2) in
// extended precision.
inline double kolmogorov_sf_series50(double lambda) {
    long double sum = 0.0L;
    long double sign = 1.0L;
    for (int k = 1; k <= 50; ++k) {
        sum += sign * std::exp(-2.0L * k * k * static_cast<long double>(lambda) * lambda);
        sign = -sign;
    }
    const long double q = 2.0L * sum;
    return static_cast<double>(std::min(1.0L, std::max(0.0L, q)));
}

// ---------------------------------------------------------------------------
// Brute-force empirical CDF statistics
// ---------------------------------------------------------------------------

inline double ecdf(std::span<const double> sample, double t) {
    std::size_t count = 0;
    for (double v : sample)
        if (v <= t) ++count;
    return static_cast<double>(count) / static_cast<double>(sample.size());
}

// Two-sample KS statistic: evaluate |ECDF_a - ECDF_b| at every pooled point.
inline double ks_statistic_brute_force(std::span<const double> a, std::span<const double> b) {
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    double d = 0.0;
    for (double t : pooled) d = std::max(d, std::fabs(ecdf(a, t) - ecdf(b, t)));
    return d;
}

// One-sample KS statistic against an arbitrary fitted CDF, evaluated at every
// sample point with both one-sided deviations.
inline double ks_one_sample_statistic_brute_force(std::vector<double> x,
                                                  const std::function<double(double)>& cdf) {
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max(d, std::max(f - static_cast<double>(i) / n,
                                 static_cast<double>(i + 1) / n - f));
    }
    return d;
}

// ---------------------------------------------------------------------------
// Exhaustive Mann-Whitney permutation distribution
// ---------------------------------------------------------------------------

// Two-sided exact rank-sum p-value by direct enumeration over all subsets of
// size n_a, written independently of the library (recursive subset walk over
// raw values, U computed by pair counting with 1/2 credit for ties).
inline double wilcoxon_exact_p_brute_force(std::span<const double> a, std::span<const double> b) {
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::size_t n = pooled.size(), n_a = a.size();

    auto u_of = [&](const std::vector<double>& xs, const std::vector<double>& ys) {
        double u = 0.0;
        for (double x : xs)
            for (double y : ys) {
                if (x > y)
                    u += 1.0;
                else if (x == y)
                    u += 0.5;
            }
        return u;
    };

    std::vector<double> xs(a.begin(), a.end()), ys(b.begin(), b.end());
    const double u_obs = u_of(xs, ys);

    double count_le = 0.0, count_ge = 0.0, total = 0.0;
    std::vector<double> left, right;
    left.reserve(n_a);
    right.reserve(n - n_a);
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (left.size() > n_a || right.size() > n - n_a) return;
        if (i == n) {
            const double u = u_of(left, right);
            total += 1.0;
            if (u <= u_obs + 1e-9) count_le += 1.0;
            if (u >= u_obs - 1e-9) count_ge += 1.0;
            return;
        }
        left.push_back(pooled[i]);
        walk(i + 1);
        left.pop_back();
        right.push_back(pooled[i]);
        walk(i + 1);
        right.pop_back();
    };
    walk(0);
    return std::min(1.0, 2.0 * std::min(count_le, count_ge) / total);
}

}  // namespace oracles
