#include "cosec/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace cosec {

namespace {

void check_nk(int n, int k) {
    if (n < 1 || k < 0 || k > n) throw std::invalid_argument("require 0 <= k <= n, n >= 1");
    if (n > 4096) throw std::invalid_argument("bounds support n up to 4096");
}

double log_binomial(int n, int i) {
    return std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0);
}

}  // namespace

double gaussian_q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double tvd_achievability(int n, int k, double epsilon) {
    check_nk(n, k);
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("tvd_achievability: epsilon must be in (0, 1)");
    const double rate = static_cast<double>(k) / n;
    return gaussian_q((epsilon - rate) * std::sqrt(n / (epsilon - epsilon * epsilon)));
}

double tvd_converse(int n, int k, double epsilon) {
    check_nk(n, k);
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("tvd_converse: epsilon must be in [0, 1]");
    double sum = 0.0;
    for (int i = 0; i <= k; ++i) {
        const double weight = 1.0 - std::exp2(static_cast<double>(i - k));
        if (weight <= 0.0) continue;  // i = k term vanishes
        double log_p;
        if (epsilon == 0.0) {
            if (i != 0) continue;
            log_p = 0.0;
        } else if (epsilon == 1.0) {
            if (i != n) continue;
            log_p = 0.0;
        } else {
            log_p = log_binomial(n, i) + i * std::log(epsilon) +
                    (n - i) * std::log1p(-epsilon);
        }
        sum += std::exp(log_p) * weight;
    }
    return sum;
}

std::pair<double, double> eq_loss_bounds(int n, int k, double epsilon) {
    check_nk(n, k);
    if (k == 0) return {0.0, 0.0};
    const double lower = 2.0 * tvd_converse(n, k, epsilon);
    const double upper =
        k / (1.0 - std::exp2(static_cast<double>(-k))) * tvd_achievability(n, k, epsilon);
    return {lower, upper};
}

std::pair<double, double> chi2_bounds(int n, int k, double epsilon) {
    check_nk(n, k);
    if (k == 0) return {0.0, 0.0};
    const double lower = 2.0 * tvd_converse(n, k, epsilon);
    const double upper = std::exp2(static_cast<double>(k)) * tvd_achievability(n, k, epsilon);
    return {lower, upper};
}

double chi2_converse_direct(int n, int kappa, double epsilon) {
    if (n < 1 || kappa < 1) throw std::invalid_argument("require n >= 1, kappa >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("chi2_converse_direct: epsilon must be in (0, 1)");
    // (2-eps)^n 2^{-kappa} (1 + (2^kappa - 1) (eps/(2-eps))^{n 2^{kappa-1}/(2^kappa-1)}) - 1,
    // evaluated in the log domain to survive large n.
    const double m = std::exp2(kappa) - 1.0;
    const double exponent = n * std::exp2(kappa - 1) / m;
    const double log_ratio_term = exponent * std::log(epsilon / (2.0 - epsilon));
    const double log_value = n * std::log(2.0 - epsilon) - kappa * std::numbers::ln2 +
                             std::log1p(m * std::exp(log_ratio_term));
    return std::expm1(log_value);
}

BoundReport bound_report(int n, int k, int kappa, double epsilon) {
    BoundReport r;
    r.n = n;
    r.k = k;
    r.kappa = kappa;
    r.epsilon = epsilon;
    if (epsilon > 0.0 && epsilon < 1.0) r.tvd_achievability = tvd_achievability(n, k, epsilon);
    r.tvd_converse = tvd_converse(n, k, epsilon);
    std::tie(r.eq_loss_lower, r.eq_loss_upper) = eq_loss_bounds(n, k, epsilon);
    std::tie(r.chi2_lower, r.chi2_upper) = chi2_bounds(n, k, epsilon);
    if (kappa >= 1 && epsilon > 0.0 && epsilon < 1.0)
        r.chi2_converse_direct = chi2_converse_direct(n, kappa, epsilon);
    return r;
}

}  // namespace cosec
