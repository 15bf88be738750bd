#ifndef COSEC_BOUNDS_HPP
#define COSEC_BOUNDS_HPP

#include <utility>

// Finite-blocklength achievability and converse bounds on total variation
// distance, equivocation loss and chi-squared divergence for the binary
// erasure wiretap channel.

namespace cosec {

struct BoundReport {
    int n = 0;
    int k = 0;
    int kappa = 0;
    double epsilon = 0.0;
    double tvd_achievability = 0.0;
    double tvd_converse = 0.0;
    double eq_loss_lower = 0.0;
    double eq_loss_upper = 0.0;
    double chi2_lower = 0.0;
    double chi2_upper = 0.0;
    double chi2_converse_direct = 0.0;
};

/// Gaussian tail probability Q(x).
double gaussian_q(double x);

/// Achievability bound on TVD: Q((eps - k/n) sqrt(n / (eps - eps^2))).
double tvd_achievability(int n, int k, double epsilon);

/// Converse bound on TVD: binomial tail sum, log-domain terms (n up to 4096).
double tvd_converse(int n, int k, double epsilon);

/// (lower, upper) bounds on equivocation loss.
std::pair<double, double> eq_loss_bounds(int n, int k, double epsilon);

/// (lower, upper) bounds on chi-squared divergence via TVD.
std::pair<double, double> chi2_bounds(int n, int k, double epsilon);

/// Direct chi-squared converse: lambda evaluated at the uniform fraction
/// code, in closed form.
double chi2_converse_direct(int n, int kappa, double epsilon);

BoundReport bound_report(int n, int k, int kappa, double epsilon);

}  // namespace cosec

#endif
