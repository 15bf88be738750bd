#ifndef COSEC_EXACT_HPP
#define COSEC_EXACT_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "cosec/gf2.hpp"

// Brute-force secrecy metrics over all 2^n erasure patterns. Ground truth for
// small n; the eavesdropper sees each codeword symbol erased independently
// with probability epsilon.

namespace cosec {

inline constexpr int kMaxExactBlocklength = 24;

/// Set of codeword positions revealed to the eavesdropper, as a bitmask over
/// positions 0..n-1.
struct ErasurePattern {
    std::uint32_t revealed = 0;
    int n = 0;

    int count() const;
};

struct MetricReport {
    double eq_loss = 0.0;
    double chi2 = 0.0;
    std::optional<double> tvd;  // only available from the exact sweep
    double achievability_gap = 0.0;
    double epsilon = 0.0;
};

/// Eavesdropper message equivocation H(M | Z=z) in bits for one revealed set.
double per_observation_equivocation(const GeneratorMatrix& g, const ErasurePattern& r);

/// Exact equivocation loss I(M;Z) = k - H(M|Z), summed over all patterns.
double equivocation_loss_exact(const GeneratorMatrix& g, double epsilon);

/// Exact chi-squared divergence between joint and product distributions.
double chi2_exact(const GeneratorMatrix& g, double epsilon);

/// Exact total variation distance.
double tvd_exact(const GeneratorMatrix& g, double epsilon);

/// Per-symbol equivocation loss at epsilon = k/n.
double achievability_gap(const GeneratorMatrix& g);

/// All three exact metrics in one pattern sweep.
MetricReport exact_metrics(const GeneratorMatrix& g, double epsilon);

/// Coset encoding: x = [m | m_aux] * [G'; G] where G' is the canonical
/// completion of G's rows to a basis of F_2^n. m has k bits, m_aux kappa bits;
/// the returned word holds codeword bit p at bit position p.
std::uint64_t coset_encode(std::uint64_t m, std::uint32_t m_aux, const GeneratorMatrix& g);

/// Rows of G as vectors over F_2^n (bit p = entry of column p).
std::vector<std::uint64_t> generator_rows(const GeneratorMatrix& g);

}  // namespace cosec

#endif
