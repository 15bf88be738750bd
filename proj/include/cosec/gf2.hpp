#ifndef COSEC_GF2_HPP
#define COSEC_GF2_HPP

#include <cstdint>
#include <vector>

// GF(2) linear algebra over the code space W = F_2^kappa. Vectors are packed
// into machine words; coordinate j of a vector is bit j of its word.

namespace cosec {

inline constexpr int kMaxKappa = 16;

/// A vector in F_2^kappa packed into the low bits of a word.
struct BitVector {
    std::uint32_t bits = 0;
    int kappa = 0;

    friend bool operator==(const BitVector&, const BitVector&) = default;
};

/// Generator matrix of a (n, kappa) base code, stored column-wise.
/// Columns are nonzero elements of F_2^kappa; n = columns.size().
struct GeneratorMatrix {
    int kappa = 0;
    std::vector<std::uint32_t> columns;

    int n() const { return static_cast<int>(columns.size()); }
    int k() const { return n() - kappa; }
};

/// A linear subspace of F_2^kappa with canonical reduced-echelon basis.
/// Basis rows are ordered by descending pivot bit; each pivot bit is set in
/// exactly one basis row. The canonical form is unique per subspace.
struct Subspace {
    int kappa = 0;
    int dim = 0;
    std::vector<std::uint32_t> basis;

    friend bool operator==(const Subspace&, const Subspace&) = default;
};

/// i-th binary vector, 1 <= i <= 2^kappa - 1.
BitVector nu(std::uint32_t i, int kappa);

/// GF(2) rank of the matrix whose columns are the given words.
int rank(const std::vector<std::uint32_t>& columns);

/// All d-dimensional subspaces of F_2^kappa, each exactly once.
std::vector<Subspace> enumerate_subspaces(int kappa, int d);

/// Number of d-dimensional subspaces of F_2^kappa (Gaussian binomial).
std::uint64_t gaussian_binomial(int kappa, int d);

bool subspace_contains(const Subspace& s, const BitVector& v);

/// Completes a set of linearly independent rows over F_2^n to a basis of
/// F_2^n. Returns the added rows; canonical choice is the lowest-index unit
/// vector outside the current span, repeatedly.
std::vector<std::uint64_t> extend_basis(const std::vector<std::uint64_t>& rows, int n);

}  // namespace cosec

#endif
