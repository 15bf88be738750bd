#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <utility>
#include <vector>

#include "cosec/constructions.hpp"
#include "cosec/exact.hpp"
#include "cosec/rng.hpp"

using namespace cosec;

namespace {

// Independent oracle: equivocation loss from first principles by tabulating
// the joint distribution of (message, observation) via full codebook
// enumeration, no rank shortcuts.
double eq_loss_bruteforce(const GeneratorMatrix& g, double epsilon) {
    const int n = g.n();
    const int k = g.k();
    double h_m_given_z = 0.0;
    for (std::uint32_t revealed = 0; revealed < (1u << n); ++revealed) {
        const int cnt = std::popcount(revealed);
        const double p_pattern =
            std::pow(1.0 - epsilon, cnt) * std::pow(epsilon, n - cnt);
        // Enumerate every (message, auxiliary) codeword, keep (observation,
        // message) pairs, then group by observation to read off H(M | Z=z).
        std::vector<std::pair<std::uint64_t, std::uint64_t>> cw;  // (obs, m)
        for (std::uint64_t m = 0; m < (1ull << k); ++m)
            for (std::uint32_t ma = 0; ma < (1u << g.kappa); ++ma) {
                const std::uint64_t x = coset_encode(m, ma, g);
                std::uint64_t obs = 0;
                for (int p = 0; p < n; ++p)
                    if (revealed & (1u << p)) obs |= ((x >> p) & 1ull) << p;
                cw.emplace_back(obs, m);
            }
        // group by observation
        std::sort(cw.begin(), cw.end());
        double h = 0.0;
        std::size_t i = 0;
        const double total_words = static_cast<double>(cw.size());
        while (i < cw.size()) {
            std::size_t j = i;
            while (j < cw.size() && cw[j].first == cw[i].first) ++j;
            const double p_obs = static_cast<double>(j - i) / total_words;
            // message distribution within this observation
            std::size_t a = i;
            double h_cond = 0.0;
            while (a < j) {
                std::size_t b = a;
                while (b < j && cw[b].second == cw[a].second) ++b;
                const double pm = static_cast<double>(b - a) / static_cast<double>(j - i);
                h_cond -= pm * std::log2(pm);
                a = b;
            }
            h += p_obs * h_cond;
            i = j;
        }
        h_m_given_z += p_pattern * h;
    }
    return k - h_m_given_z;
}

}  // namespace

TEST_CASE("single parity-check code, kappa=1 n=2 epsilon=0.5") {
    const GeneratorMatrix g{1, {1, 1}};
    // Frozen oracle values: leakage only when both symbols are revealed.
    CHECK(equivocation_loss_exact(g, 0.5) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(chi2_exact(g, 0.5) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(tvd_exact(g, 0.5) == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("rank-based equivocation matches codebook enumeration") {
    Rng rng(101);
    for (int trial = 0; trial < 8; ++trial) {
        const int kappa = 1 + static_cast<int>(rng.below(3));
        const int max_n = std::min(7, (1 << kappa) - 1 + kappa);
        const int n = kappa + static_cast<int>(rng.below(max_n - kappa + 1));
        GeneratorMatrix g{kappa, {}};
        // full-rank random generator with possible repeats
        do {
            g.columns.clear();
            for (int i = 0; i < n; ++i)
                g.columns.push_back(1 + static_cast<std::uint32_t>(rng.below((1u << kappa) - 1)));
        } while (rank(g.columns) != kappa);
        for (double eps : {0.3, 0.5, 0.7}) {
            CHECK(equivocation_loss_exact(g, eps) ==
                  doctest::Approx(eq_loss_bruteforce(g, eps)).epsilon(1e-10));
        }
    }
}

TEST_CASE("metrics are invariant under column permutation") {
    const GeneratorMatrix g{3, {1, 2, 4, 7, 3, 5}};
    const GeneratorMatrix h{3, {7, 5, 4, 3, 2, 1}};
    const auto mg = exact_metrics(g, 0.4);
    const auto mh = exact_metrics(h, 0.4);
    CHECK(mg.eq_loss == doctest::Approx(mh.eq_loss).epsilon(1e-13));
    CHECK(mg.chi2 == doctest::Approx(mh.chi2).epsilon(1e-13));
    CHECK(*mg.tvd == doctest::Approx(*mh.tvd).epsilon(1e-13));
}

TEST_CASE("metrics decrease as erasures increase") {
    const GeneratorMatrix g{2, {1, 2, 3, 1, 2}};
    double prev_eq = 1e9, prev_chi = 1e9, prev_tvd = 1e9;
    for (double eps : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const auto m = exact_metrics(g, eps);
        CHECK(m.eq_loss < prev_eq);
        CHECK(m.chi2 < prev_chi);
        CHECK(*m.tvd < prev_tvd);
        prev_eq = m.eq_loss;
        prev_chi = m.chi2;
        prev_tvd = *m.tvd;
    }
}

TEST_CASE("pinsker-style orderings hold") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = random_code(3, 6, rng.next());
        const auto m = exact_metrics(g, 0.5);
        CHECK(2.0 * *m.tvd <= m.eq_loss + 1e-12);
        CHECK(2.0 * *m.tvd <= m.chi2 + 1e-12);
        CHECK(m.eq_loss >= -1e-12);
        CHECK(m.chi2 >= -1e-12);
        CHECK(*m.tvd >= -1e-12);
    }
}

TEST_CASE("degenerate epsilon endpoints") {
    const GeneratorMatrix g{2, {1, 2, 3, 3}};
    // Everything revealed: leakage is the full message.
    CHECK(equivocation_loss_exact(g, 0.0) == doctest::Approx(g.k()).epsilon(1e-12));
    // Everything erased: no leakage.
    CHECK(equivocation_loss_exact(g, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(chi2_exact(g, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(tvd_exact(g, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("coset_encode is linear and respects the generator") {
    const GeneratorMatrix g{2, {1, 2, 3}};
    CHECK_THROWS(coset_encode(0, 0, GeneratorMatrix{2, {1, 1, 1}}));
    const auto rows = generator_rows(g);
    REQUIRE(rows.size() == 2);
    // bit p of row j equals bit j of column p
    CHECK(rows[0] == 0b101);  // columns 1,2,3 -> low bits 1,0,1
    CHECK(rows[1] == 0b110);
    // aux message alone spans the base code
    CHECK(coset_encode(0, 1, g) == rows[0]);
    CHECK(coset_encode(0, 2, g) == rows[1]);
    CHECK(coset_encode(0, 3, g) == (rows[0] ^ rows[1]));
    for (std::uint64_t m = 0; m < 2; ++m)
        for (std::uint32_t ma = 0; ma < 4; ++ma)
            CHECK(coset_encode(m, ma, g) ==
                  (coset_encode(m, 0, g) ^ coset_encode(0, ma, g)));
}

TEST_CASE("achievability gap is the per-symbol loss at rate epsilon") {
    const GeneratorMatrix g{3, {1, 2, 4, 7, 3, 5, 6, 1}};
    const double eps = static_cast<double>(g.k()) / g.n();
    CHECK(achievability_gap(g) ==
          doctest::Approx(equivocation_loss_exact(g, eps) / g.n()).epsilon(1e-12));
}
