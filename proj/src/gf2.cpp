#include "cosec/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace cosec {

namespace {

void check_kappa(int kappa) {
    if (kappa < 1 || kappa > kMaxKappa)
        throw std::invalid_argument("kappa must be in [1, " + std::to_string(kMaxKappa) + "]");
}

}  // namespace

BitVector nu(std::uint32_t i, int kappa) {
    check_kappa(kappa);
    if (i == 0 || i >= (1u << kappa))
        throw std::out_of_range("nu: index must be in [1, 2^kappa - 1]");
    return BitVector{i, kappa};
}

int rank(const std::vector<std::uint32_t>& columns) {
    // Incremental echelon basis keyed by most significant bit.
    std::uint32_t pivot[32] = {};
    int r = 0;
    for (std::uint32_t c : columns) {
        while (c != 0) {
            int msb = 31 - std::countl_zero(c);
            if (pivot[msb] == 0) {
                pivot[msb] = c;
                ++r;
                break;
            }
            c ^= pivot[msb];
        }
    }
    return r;
}

std::uint64_t gaussian_binomial(int kappa, int d) {
    if (d < 0 || d > kappa) return 0;
    // q-Pascal recurrence [k,d] = [k-1,d-1] + 2^d [k-1,d]; exact in 64 bits
    // for kappa <= 16.
    std::vector<std::uint64_t> row(kappa + 1, 0);
    row[0] = 1;
    for (int k = 1; k <= kappa; ++k)
        for (int j = k; j >= 1; --j) row[j] = row[j - 1] + (row[j] << j);
    return row[d];
}

std::vector<Subspace> enumerate_subspaces(int kappa, int d) {
    check_kappa(kappa);
    if (d < 0 || d > kappa)
        throw std::out_of_range("enumerate_subspaces: d must be in [0, kappa]");

    std::vector<Subspace> out;
    out.reserve(gaussian_binomial(kappa, d));
    if (d == 0) {
        out.push_back(Subspace{kappa, 0, {}});
        return out;
    }

    // Enumerate canonical echelon bases by pivot-bit pattern. Pivots are bit
    // positions p_0 > p_1 > ... > p_{d-1}; row i has bit p_i set, zeros at all
    // other pivots and above p_i, and free values at non-pivot bits below p_i.
    std::uint32_t pattern_limit = 1u << kappa;
    for (std::uint32_t pattern = 0; pattern < pattern_limit; ++pattern) {
        if (std::popcount(pattern) != d) continue;

        std::vector<int> pivots;  // descending
        for (int b = kappa - 1; b >= 0; --b)
            if (pattern & (1u << b)) pivots.push_back(b);

        // Free positions per row: non-pivot bits strictly below the row pivot.
        std::vector<std::vector<int>> free_bits(d);
        int total_free = 0;
        for (int row = 0; row < d; ++row) {
            for (int b = pivots[row] - 1; b >= 0; --b)
                if (!(pattern & (1u << b))) free_bits[row].push_back(b);
            total_free += static_cast<int>(free_bits[row].size());
        }

        for (std::uint64_t fill = 0; fill < (1ull << total_free); ++fill) {
            Subspace s{kappa, d, std::vector<std::uint32_t>(d)};
            int bit_idx = 0;
            for (int row = 0; row < d; ++row) {
                std::uint32_t v = 1u << pivots[row];
                for (int b : free_bits[row]) {
                    if (fill & (1ull << bit_idx)) v |= 1u << b;
                    ++bit_idx;
                }
                s.basis[row] = v;
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

bool subspace_contains(const Subspace& s, const BitVector& v) {
    if (s.kappa != v.kappa)
        throw std::invalid_argument("subspace_contains: dimension mismatch");
    std::uint32_t w = v.bits;
    for (std::uint32_t row : s.basis) {
        int msb = 31 - std::countl_zero(row);
        if (w & (1u << msb)) w ^= row;
    }
    return w == 0;
}

std::vector<std::uint64_t> extend_basis(const std::vector<std::uint64_t>& rows, int n) {
    if (n < 1 || n > 64) throw std::invalid_argument("extend_basis: n must be in [1, 64]");

    std::uint64_t pivot[64] = {};
    int r = 0;
    for (std::uint64_t row : rows) {
        std::uint64_t w = row;
        bool inserted = false;
        while (w != 0) {
            int msb = 63 - std::countl_zero(w);
            if (pivot[msb] == 0) {
                pivot[msb] = w;
                ++r;
                inserted = true;
                break;
            }
            w ^= pivot[msb];
        }
        if (!inserted)
            throw std::invalid_argument("extend_basis: input rows are linearly dependent");
    }

    std::vector<std::uint64_t> added;
    for (int j = 0; j < n && r < n; ++j) {
        std::uint64_t w = 1ull << j;
        std::uint64_t reduced = w;
        while (reduced != 0) {
            int msb = 63 - std::countl_zero(reduced);
            if (pivot[msb] == 0) break;
            reduced ^= pivot[msb];
        }
        if (reduced != 0) {
            int msb = 63 - std::countl_zero(reduced);
            pivot[msb] = reduced;
            ++r;
            added.push_back(w);
        }
    }
    return added;
}

}  // namespace cosec
