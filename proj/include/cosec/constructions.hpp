#ifndef COSEC_CONSTRUCTIONS_HPP
#define COSEC_CONSTRUCTIONS_HPP

#include <cstdint>
#include <vector>

#include "cosec/gf2.hpp"

// Reference code generators used for comparison: random codes, LDPC-dual
// codes, subspace exclusion codes and the incremental construction grown from
// a best-known-linear-code seed.

namespace cosec {

/// Probability distribution over the 2^kappa syndromes of the current code.
struct SyndromeDistribution {
    int kappa = 0;
    std::vector<double> p;  // size 2^kappa, sums to 1

    static SyndromeDistribution point_mass(int kappa);

    /// Folds in one generator column over a BSC with crossover probability
    /// bsc_p: the column's bit flips with probability bsc_p, translating the
    /// syndrome by the column value.
    void apply_column(std::uint32_t column, double bsc_p);

    double entropy_bits() const;
};

/// n distinct nonzero columns drawn uniformly without replacement.
GeneratorMatrix random_code(int kappa, int n, std::uint64_t seed);

/// All weight-2 columns, then weight-3, ..., the last partial weight class
/// filled by seeded selection without replacement.
GeneratorMatrix ldpc_dual_code(int kappa, int n, std::uint64_t seed);

/// Every nonzero column outside the canonical u-dimensional subspace
/// (span of the first u unit vectors); n = 2^kappa - 2^u.
GeneratorMatrix subspace_exclusion_code(int kappa, int u);

/// Unique p in [0, 1/2] with binary entropy h(p) = epsilon.
double bsc_p_from_epsilon(double epsilon);

/// Greedy incremental growth from a full-rank seed: each appended column
/// maximizes the syndrome entropy after the BSC update, ties broken by
/// lowest column index.
GeneratorMatrix bklc_incremental(const GeneratorMatrix& seed_matrix, int n, double bsc_p);

}  // namespace cosec

#endif
