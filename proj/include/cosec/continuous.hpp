#ifndef COSEC_CONTINUOUS_HPP
#define COSEC_CONTINUOUS_HPP

#include <vector>

#include "cosec/gf2.hpp"

// Closed-form secrecy metrics l (equivocation loss) and lambda (chi-squared
// divergence) on the continuous code-definition vector q, plus their
// gradients. q has 2^kappa - 1 entries; q[i-1] is the fraction of generator
// columns equal to nu(i).

namespace cosec {

inline constexpr int kMaxKappaEqLoss = 10;  // full subspace lattice
inline constexpr int kMaxKappaChi2 = 12;    // hyperplanes only

struct CodeDefVector {
    int kappa = 0;
    int n = 0;  // target blocklength
    std::vector<double> q;  // size 2^kappa - 1, indexed by nu value minus one

    std::size_t size() const { return q.size(); }

    /// Uniform fraction code: every entry 1/(2^kappa - 1).
    static CodeDefVector uniform(int kappa, int n);
};

/// Throws unless q satisfies nonnegativity, unit sum (1e-9) and the
/// single-use column bound q_i <= 1/n (1e-12).
void validate(const CodeDefVector& q);

/// zeta(S, q): total fraction of columns lying in subspace S.
double zeta(const Subspace& s, const CodeDefVector& q);

/// Equivocation loss l(n, epsilon, q). Requires epsilon in (0,1).
double eq_loss_l(int n, double epsilon, const CodeDefVector& q);

/// Chi-squared divergence lambda(n, epsilon, q). Requires epsilon in (0,1).
double chi2_lambda(int n, double epsilon, const CodeDefVector& q);

/// Gradient of l with respect to q.
std::vector<double> grad_eq_loss(int n, double epsilon, const CodeDefVector& q);

/// Gradient of lambda with respect to q.
std::vector<double> grad_chi2(int n, double epsilon, const CodeDefVector& q);

/// Column-fraction vector of a generator matrix; always valid per the sum
/// and nonnegativity constraints. `realizable_single_use` reports whether no
/// column repeats (the q_i <= 1/n box bound holds exactly).
CodeDefVector q_from_generator(const GeneratorMatrix& g, bool* realizable_single_use = nullptr);

/// Rounds n*q to integer column counts and builds the generator matrix,
/// columns in ascending nu order. Tolerance 1e-6 per entry, with a
/// largest-remainder fix when the rounded counts miss n by one.
GeneratorMatrix realize_generator(const CodeDefVector& q, int n);

/// zeta over every hyperplane (normal a = 1..2^kappa-1) via direct
/// membership sums.
std::vector<double> hyperplane_zetas_direct(const CodeDefVector& q);

/// Same values via a Walsh-Hadamard transform of q extended with q_0 = 0:
/// zeta for the hyperplane with normal a equals (1 + WHT(q)[a]) / 2.
std::vector<double> hyperplane_zetas_wht(const CodeDefVector& q);

/// Cached per-kappa subspace lists, grouped by dimension 0..kappa.
/// Enumeration order is fixed, so reductions over it are deterministic.
const std::vector<std::vector<Subspace>>& subspace_table(int kappa);

}  // namespace cosec

#endif
