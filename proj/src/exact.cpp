#include "cosec/exact.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace cosec {

namespace {

void check_epsilon(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("epsilon must be in [0, 1]");
}

void check_sweep_size(const GeneratorMatrix& g) {
    if (g.n() > kMaxExactBlocklength)
        throw std::invalid_argument("exact metrics limited to n <= " +
                                    std::to_string(kMaxExactBlocklength));
}

// b(r) = |r| - rank(G_r): equivocation loss in bits under one revealed set.
int pattern_loss_bits(const GeneratorMatrix& g, std::uint32_t revealed) {
    std::uint32_t pivot[kMaxKappa] = {};
    int rank = 0, size = 0;
    std::uint32_t mask = revealed;
    while (mask != 0) {
        int p = std::countr_zero(mask);
        mask &= mask - 1;
        ++size;
        std::uint32_t c = g.columns[p];
        while (c != 0) {
            int msb = 31 - std::countl_zero(c);
            if (pivot[msb] == 0) {
                pivot[msb] = c;
                ++rank;
                break;
            }
            c ^= pivot[msb];
        }
    }
    return size - rank;
}

// One sweep accumulating sum over patterns of Pr(r) * f(b(r)) for the three
// kernels at once. Pr(r) = (1-eps)^{|r|} eps^{n-|r|}.
struct SweepResult {
    double eq_loss = 0.0;
    double chi2 = 0.0;
    double tvd = 0.0;
};

SweepResult sweep(const GeneratorMatrix& g, double epsilon) {
    check_sweep_size(g);
    check_epsilon(epsilon);
    const int n = g.n();

    // Pattern probabilities by revealed count.
    std::vector<double> prob(n + 1);
    for (int s = 0; s <= n; ++s)
        prob[s] = std::pow(1.0 - epsilon, s) * std::pow(epsilon, n - s);

    SweepResult out;
    const std::uint32_t limit = n < 32 ? (1u << n) : 0;
    for (std::uint32_t r = 0;; ++r) {
        int b = pattern_loss_bits(g, r);
        if (b > 0) {
            double p = prob[std::popcount(r)];
            out.eq_loss += p * b;
            out.chi2 += p * (std::exp2(b) - 1.0);
            out.tvd += p * (1.0 - std::exp2(-b));
        }
        if (r + 1 == limit || r == 0xffffffffu) break;
    }
    return out;
}

}  // namespace

int ErasurePattern::count() const { return std::popcount(revealed); }

double per_observation_equivocation(const GeneratorMatrix& g, const ErasurePattern& r) {
    if (r.n != g.n())
        throw std::invalid_argument("pattern blocklength does not match code");
    if (g.n() < 32 && (r.revealed >> g.n()) != 0)
        throw std::invalid_argument("pattern references positions beyond n");
    return g.k() - pattern_loss_bits(g, r.revealed);
}

double equivocation_loss_exact(const GeneratorMatrix& g, double epsilon) {
    return sweep(g, epsilon).eq_loss;
}

double chi2_exact(const GeneratorMatrix& g, double epsilon) {
    return sweep(g, epsilon).chi2;
}

double tvd_exact(const GeneratorMatrix& g, double epsilon) {
    return sweep(g, epsilon).tvd;
}

double achievability_gap(const GeneratorMatrix& g) {
    const double eps = static_cast<double>(g.k()) / g.n();
    return equivocation_loss_exact(g, eps) / g.n();
}

MetricReport exact_metrics(const GeneratorMatrix& g, double epsilon) {
    SweepResult s = sweep(g, epsilon);
    MetricReport rep;
    rep.eq_loss = s.eq_loss;
    rep.chi2 = s.chi2;
    rep.tvd = s.tvd;
    rep.epsilon = epsilon;
    rep.achievability_gap = achievability_gap(g);
    return rep;
}

std::vector<std::uint64_t> generator_rows(const GeneratorMatrix& g) {
    std::vector<std::uint64_t> rows(g.kappa, 0);
    for (int p = 0; p < g.n(); ++p)
        for (int j = 0; j < g.kappa; ++j)
            if (g.columns[p] & (1u << j)) rows[j] |= 1ull << p;
    return rows;
}

std::uint64_t coset_encode(std::uint64_t m, std::uint32_t m_aux, const GeneratorMatrix& g) {
    const int n = g.n();
    const int k = g.k();
    if (n > 64) throw std::invalid_argument("coset_encode: n must be <= 64");
    std::vector<std::uint64_t> g_rows = generator_rows(g);
    if (rank(g.columns) != g.kappa)
        throw std::invalid_argument("coset_encode: generator matrix is rank-deficient");

    std::vector<std::uint64_t> g_prime = extend_basis(g_rows, n);
    // g_prime has k rows by construction (rank kappa input, ambient dim n).
    std::uint64_t x = 0;
    for (int j = 0; j < k; ++j)
        if (m & (1ull << j)) x ^= g_prime[j];
    for (int j = 0; j < g.kappa; ++j)
        if (m_aux & (1u << j)) x ^= g_rows[j];
    return x;
}

}  // namespace cosec
