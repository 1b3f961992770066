#pragma once

// Small statistics kit for the Monte-Carlo harness: binomial standard
// errors and a chi-squared goodness-of-fit p-value via the regularized
// incomplete gamma function (series + continued fraction).

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace evendec {

namespace detail {

inline double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 1000; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_q_contfrac(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1e300;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace detail

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
inline double gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q: need a > 0 and x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - detail::gamma_p_series(a, x);
    return detail::gamma_q_contfrac(a, x);
}

// Survival function of the chi-squared distribution.
inline double chi2_sf(double stat, double dof) { return gamma_q(dof / 2.0, stat / 2.0); }

struct GofResult {
    double statistic = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
};

// Pearson goodness-of-fit against the uniform distribution over the cells.
inline GofResult chi2_uniform_gof(const std::vector<std::uint64_t>& counts) {
    if (counts.size() < 2) throw std::invalid_argument("chi2_uniform_gof: need at least two cells");
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    if (total == 0) throw std::invalid_argument("chi2_uniform_gof: empty sample");
    double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    GofResult r;
    for (auto c : counts) {
        double diff = static_cast<double>(c) - expected;
        r.statistic += diff * diff / expected;
    }
    r.dof = static_cast<double>(counts.size() - 1);
    r.p_value = chi2_sf(r.statistic, r.dof);
    return r;
}

inline double binomial_stderr(double phat, std::uint64_t samples) {
    if (samples == 0) return 0.0;
    return std::sqrt(phat * (1.0 - phat) / static_cast<double>(samples));
}

} // namespace evendec
