#include "cosec/constructions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "cosec/rng.hpp"

namespace cosec {

namespace {

void check_kappa(int kappa) {
    if (kappa < 1 || kappa > kMaxKappa) throw std::invalid_argument("invalid kappa");
}

// Seeded uniform draw of `count` values from `pool` without replacement
// (partial Fisher-Yates); preserves determinism per seed.
std::vector<std::uint32_t> draw_without_replacement(std::vector<std::uint32_t> pool,
                                                    std::size_t count, Rng& rng) {
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + rng.below(pool.size() - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    return pool;
}

}  // namespace

SyndromeDistribution SyndromeDistribution::point_mass(int kappa) {
    check_kappa(kappa);
    SyndromeDistribution d{kappa, std::vector<double>(1u << kappa, 0.0)};
    d.p[0] = 1.0;
    return d;
}

void SyndromeDistribution::apply_column(std::uint32_t column, double bsc_p) {
    if (column >= p.size()) throw std::invalid_argument("column out of range");
    std::vector<double> next(p.size());
    for (std::uint32_t s = 0; s < p.size(); ++s)
        next[s] = (1.0 - bsc_p) * p[s] + bsc_p * p[s ^ column];
    p = std::move(next);
}

double SyndromeDistribution::entropy_bits() const {
    double h = 0.0;
    for (double v : p)
        if (v > 0.0) h -= v * std::log2(v);
    return h;
}

GeneratorMatrix random_code(int kappa, int n, std::uint64_t seed) {
    check_kappa(kappa);
    const std::uint32_t m = (1u << kappa) - 1u;
    if (n < 1 || static_cast<std::uint32_t>(n) > m)
        throw std::invalid_argument("random_code: n must be in [1, 2^kappa - 1]");
    std::vector<std::uint32_t> pool(m);
    for (std::uint32_t i = 0; i < m; ++i) pool[i] = i + 1;
    Rng rng(seed);
    return GeneratorMatrix{kappa, draw_without_replacement(std::move(pool), n, rng)};
}

GeneratorMatrix ldpc_dual_code(int kappa, int n, std::uint64_t seed) {
    check_kappa(kappa);
    const int capacity = (1 << kappa) - 1 - kappa;  // all columns of weight >= 2
    if (n < 1 || n > capacity)
        throw std::invalid_argument("ldpc_dual_code: n exceeds the weight>=2 column capacity");

    Rng rng(seed);
    GeneratorMatrix g{kappa, {}};
    g.columns.reserve(n);
    for (int w = 2; w <= kappa && g.n() < n; ++w) {
        std::vector<std::uint32_t> cls;
        for (std::uint32_t c = 1; c < (1u << kappa); ++c)
            if (std::popcount(c) == w) cls.push_back(c);
        const std::size_t need = static_cast<std::size_t>(n - g.n());
        if (need >= cls.size()) {
            g.columns.insert(g.columns.end(), cls.begin(), cls.end());
        } else {
            std::vector<std::uint32_t> picked = draw_without_replacement(std::move(cls), need, rng);
            std::sort(picked.begin(), picked.end());
            g.columns.insert(g.columns.end(), picked.begin(), picked.end());
        }
    }
    return g;
}

GeneratorMatrix subspace_exclusion_code(int kappa, int u) {
    check_kappa(kappa);
    if (u < 0 || u >= kappa)
        throw std::invalid_argument("subspace_exclusion_code: require 0 <= u < kappa");
    const std::uint32_t excluded = (1u << u) - 1u;  // span of the first u unit vectors
    GeneratorMatrix g{kappa, {}};
    for (std::uint32_t c = 1; c < (1u << kappa); ++c)
        if ((c | excluded) != excluded) g.columns.push_back(c);
    return g;
}

double bsc_p_from_epsilon(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("bsc_p_from_epsilon: epsilon must be in [0, 1]");
    if (epsilon == 0.0) return 0.0;
    if (epsilon == 1.0) return 0.5;
    auto entropy = [](double p) {
        return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
    };
    double lo = 0.0, hi = 0.5;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double h = entropy(mid);
        if (std::abs(h - epsilon) <= 1e-12) return mid;
        (h < epsilon ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

GeneratorMatrix bklc_incremental(const GeneratorMatrix& seed_matrix, int n, double bsc_p) {
    check_kappa(seed_matrix.kappa);
    if (rank(seed_matrix.columns) != seed_matrix.kappa)
        throw std::invalid_argument("bklc_incremental: seed matrix is rank-deficient");
    if (n < seed_matrix.n())
        throw std::invalid_argument("bklc_incremental: target blocklength below seed length");

    SyndromeDistribution dist = SyndromeDistribution::point_mass(seed_matrix.kappa);
    for (std::uint32_t c : seed_matrix.columns) dist.apply_column(c, bsc_p);

    GeneratorMatrix g = seed_matrix;
    const std::uint32_t m = (1u << seed_matrix.kappa) - 1u;
    while (g.n() < n) {
        std::uint32_t best = 1;
        double best_entropy = -1.0;
        for (std::uint32_t c = 1; c <= m; ++c) {
            SyndromeDistribution trial = dist;
            trial.apply_column(c, bsc_p);
            const double h = trial.entropy_bits();
            if (h > best_entropy + 1e-15) {
                best_entropy = h;
                best = c;
            }
        }
        dist.apply_column(best, bsc_p);
        g.columns.push_back(best);
    }
    return g;
}

}  // namespace cosec
