#include "cosec/continuous.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace cosec {

namespace {

constexpr double kTermFlush = 1e-300;  // subspace terms below this are dropped

void check_epsilon_open(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("epsilon must be in the open interval (0, 1)");
}

void check_shape(const CodeDefVector& q) {
    if (q.kappa < 1 || q.kappa > kMaxKappa || q.n < 1)
        throw std::invalid_argument("invalid CodeDefVector shape");
    if (q.q.size() != (1u << q.kappa) - 1u)
        throw std::invalid_argument("CodeDefVector has wrong length");
}

// K_delta = prod_{i=1}^{delta-1} (1 - 2^i): 1, -1, 3, -21, ...
std::vector<double> k_constants(int kappa) {
    std::vector<double> k(kappa + 1);
    k[1] = 1.0;
    for (int d = 2; d <= kappa; ++d) k[d] = k[d - 1] * (1.0 - std::exp2(d - 1));
    return k;
}

// Sum of q over the nonzero span of an echelon basis (Gray-code walk).
double span_sum(const std::vector<std::uint32_t>& basis, const std::vector<double>& q) {
    double total = 0.0;
    std::uint32_t elem = 0;
    const std::uint32_t count = 1u << basis.size();
    for (std::uint32_t j = 1; j < count; ++j) {
        elem ^= basis[std::countr_zero(j)];
        total += q[elem - 1];
    }
    return total;
}

// Product of f over the nonzero span: with f_i = exp(c * q_i) this evaluates
// exp(c * zeta(S, q)) without a per-subspace exp call, which dominates the
// full-lattice sweeps otherwise.
double span_product(const std::vector<std::uint32_t>& basis, const std::vector<double>& f) {
    double total = 1.0;
    std::uint32_t elem = 0;
    const std::uint32_t count = 1u << basis.size();
    for (std::uint32_t j = 1; j < count; ++j) {
        elem ^= basis[std::countr_zero(j)];
        total *= f[elem - 1];
    }
    return total;
}

// In-place Walsh-Hadamard transform: out[a] = sum_i (-1)^{popcount(a&i)} w[i].
void wht(std::vector<double>& w) {
    const std::size_t m = w.size();
    for (std::size_t h = 1; h < m; h <<= 1) {
        for (std::size_t base = 0; base < m; base += h << 1) {
            for (std::size_t j = base; j < base + h; ++j) {
                double a = w[j], b = w[j + h];
                w[j] = a + b;
                w[j + h] = a - b;
            }
        }
    }
}

}  // namespace

CodeDefVector CodeDefVector::uniform(int kappa, int n) {
    CodeDefVector out{kappa, n, {}};
    const std::size_t m = (1u << kappa) - 1u;
    out.q.assign(m, 1.0 / static_cast<double>(m));
    return out;
}

void validate(const CodeDefVector& q) {
    check_shape(q);
    double sum = 0.0;
    const double box = 1.0 / q.n + 1e-12;
    for (double v : q.q) {
        if (v < 0.0) throw std::invalid_argument("q has a negative entry");
        if (v > box) throw std::invalid_argument("q violates the single-use column bound");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("q entries do not sum to 1");
}

const std::vector<std::vector<Subspace>>& subspace_table(int kappa) {
    static std::mutex mu;
    static std::map<int, std::vector<std::vector<Subspace>>> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(kappa);
    if (it == cache.end()) {
        std::vector<std::vector<Subspace>> table(kappa + 1);
        for (int d = 0; d <= kappa; ++d) table[d] = enumerate_subspaces(kappa, d);
        it = cache.emplace(kappa, std::move(table)).first;
    }
    return it->second;
}

double zeta(const Subspace& s, const CodeDefVector& q) {
    check_shape(q);
    if (s.kappa != q.kappa) throw std::invalid_argument("zeta: dimension mismatch");
    return span_sum(s.basis, q.q);
}

double eq_loss_l(int n, double epsilon, const CodeDefVector& q) {
    check_shape(q);
    check_epsilon_open(epsilon);
    if (q.kappa > kMaxKappaEqLoss)
        throw std::invalid_argument("equivocation-loss path limited to kappa <= " +
                                    std::to_string(kMaxKappaEqLoss));
    const auto& table = subspace_table(q.kappa);
    const std::vector<double> kd = k_constants(q.kappa);
    const double log_eps = std::log(epsilon);

    // exp(n ln(eps) (1 - zeta)) = eps^n * prod over members of exp(-n ln(eps) q_i)
    std::vector<double> f(q.q.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::exp(-n * log_eps * q.q[i]);
    const double base = std::exp(n * log_eps);

    double total = n * (1.0 - epsilon) - q.kappa;
    for (int delta = 1; delta <= q.kappa; ++delta) {
        double sub_sum = 0.0;
        for (const Subspace& s : table[q.kappa - delta]) {
            double term = base * span_product(s.basis, f);
            if (term >= kTermFlush) sub_sum += term;
        }
        total += kd[delta] * sub_sum;
    }
    return total;
}

std::vector<double> grad_eq_loss(int n, double epsilon, const CodeDefVector& q) {
    check_shape(q);
    check_epsilon_open(epsilon);
    if (q.kappa > kMaxKappaEqLoss)
        throw std::invalid_argument("equivocation-loss path limited to kappa <= " +
                                    std::to_string(kMaxKappaEqLoss));
    const auto& table = subspace_table(q.kappa);
    const std::vector<double> kd = k_constants(q.kappa);
    const double log_eps = std::log(epsilon);

    std::vector<double> f(q.q.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::exp(-n * log_eps * q.q[i]);
    const double base = std::exp(n * log_eps);

    std::vector<double> grad(q.q.size(), 0.0);
    for (int delta = 1; delta <= q.kappa; ++delta) {
        for (const Subspace& s : table[q.kappa - delta]) {
            double term = kd[delta] * base * span_product(s.basis, f);
            if (std::abs(term) < kTermFlush) continue;
            std::uint32_t elem = 0;
            const std::uint32_t count = 1u << s.basis.size();
            for (std::uint32_t j = 1; j < count; ++j) {
                elem ^= s.basis[std::countr_zero(j)];
                grad[elem - 1] += term;
            }
        }
    }
    const double pref = -static_cast<double>(n) * log_eps;
    for (double& g : grad) g *= pref;
    return grad;
}

std::vector<double> hyperplane_zetas_direct(const CodeDefVector& q) {
    check_shape(q);
    const std::uint32_t m = (1u << q.kappa) - 1u;
    std::vector<double> zetas(m);
    for (std::uint32_t a = 1; a <= m; ++a) {
        double sum = 0.0;
        for (std::uint32_t i = 1; i <= m; ++i)
            if ((std::popcount(a & i) & 1) == 0) sum += q.q[i - 1];
        zetas[a - 1] = sum;
    }
    return zetas;
}

std::vector<double> hyperplane_zetas_wht(const CodeDefVector& q) {
    check_shape(q);
    std::vector<double> w(q.q.size() + 1, 0.0);
    for (std::size_t i = 0; i < q.q.size(); ++i) w[i + 1] = q.q[i];
    wht(w);
    const double total = std::accumulate(q.q.begin(), q.q.end(), 0.0);
    std::vector<double> zetas(q.q.size());
    // sum over even-parity members = (total + WHT[a]) / 2
    for (std::size_t a = 1; a < w.size(); ++a) zetas[a - 1] = 0.5 * (total + w[a]);
    return zetas;
}

double chi2_lambda(int n, double epsilon, const CodeDefVector& q) {
    check_shape(q);
    check_epsilon_open(epsilon);
    if (q.kappa > kMaxKappaChi2)
        throw std::invalid_argument("chi2 path limited to kappa <= " +
                                    std::to_string(kMaxKappaChi2));
    const double log_ratio = std::log(epsilon / (2.0 - epsilon));
    std::vector<double> zetas = hyperplane_zetas_wht(q);
    double sub_sum = 0.0;
    for (double z : zetas) {
        double term = std::exp(n * log_ratio * (1.0 - z));
        if (term >= kTermFlush) sub_sum += term;
    }
    const double scale = std::exp(n * std::log(2.0 - epsilon) - q.kappa * std::numbers::ln2);
    return scale * (1.0 + sub_sum) - 1.0;
}

std::vector<double> grad_chi2(int n, double epsilon, const CodeDefVector& q) {
    check_shape(q);
    check_epsilon_open(epsilon);
    if (q.kappa > kMaxKappaChi2)
        throw std::invalid_argument("chi2 path limited to kappa <= " +
                                    std::to_string(kMaxKappaChi2));
    const double log_ratio = std::log(epsilon / (2.0 - epsilon));
    const double scale = std::exp(n * std::log(2.0 - epsilon) - q.kappa * std::numbers::ln2);
    const double pref = -static_cast<double>(n) * log_ratio * scale;

    std::vector<double> zetas = hyperplane_zetas_wht(q);
    // grad_i = pref * sum over hyperplanes a containing nu(i) of the varphi
    // term; the indicator (a.i even) is expanded with a second WHT.
    std::vector<double> t(zetas.size() + 1, 0.0);
    double t_total = 0.0;
    for (std::size_t a = 1; a < t.size(); ++a) {
        double term = std::exp(n * log_ratio * (1.0 - zetas[a - 1]));
        if (term < kTermFlush) term = 0.0;
        t[a] = term;
        t_total += term;
    }
    wht(t);
    std::vector<double> grad(zetas.size());
    for (std::size_t i = 1; i <= grad.size(); ++i)
        grad[i - 1] = pref * 0.5 * (t_total + t[i]);
    return grad;
}

CodeDefVector q_from_generator(const GeneratorMatrix& g, bool* realizable_single_use) {
    if (g.kappa < 1 || g.kappa > kMaxKappa)
        throw std::invalid_argument("invalid generator dimension");
    const std::uint32_t m = (1u << g.kappa) - 1u;
    std::vector<int> counts(m, 0);
    for (std::uint32_t c : g.columns) {
        if (c == 0 || c > m) throw std::invalid_argument("generator has an invalid column");
        ++counts[c - 1];
    }
    CodeDefVector out{g.kappa, g.n(), std::vector<double>(m)};
    bool single_use = true;
    for (std::uint32_t i = 0; i < m; ++i) {
        out.q[i] = static_cast<double>(counts[i]) / g.n();
        if (counts[i] > 1) single_use = false;
    }
    if (realizable_single_use) *realizable_single_use = single_use;
    return out;
}

GeneratorMatrix realize_generator(const CodeDefVector& q, int n) {
    check_shape(q);
    const std::size_t m = q.q.size();
    std::vector<int> counts(m);
    double worst = 0.0;
    int total = 0;
    for (std::size_t i = 0; i < m; ++i) {
        double scaled = n * q.q[i];
        counts[i] = static_cast<int>(std::lround(scaled));
        worst = std::max(worst, std::abs(scaled - counts[i]));
        total += counts[i];
    }
    if (worst > 1e-6)
        throw std::runtime_error("q is not realizable at this blocklength (n*q_i not integral)");
    if (total != n) {
        if (std::abs(total - n) > 1)
            throw std::runtime_error("rounded column counts are inconsistent with n");
        // Largest-remainder fix for an off-by-one total.
        const int dir = total < n ? 1 : -1;
        std::size_t best = 0;
        double best_rem = -1.0;
        for (std::size_t i = 0; i < m; ++i) {
            double rem = dir > 0 ? n * q.q[i] - counts[i] : counts[i] - n * q.q[i];
            if (counts[i] + dir >= 0 && rem > best_rem) {
                best_rem = rem;
                best = i;
            }
        }
        counts[best] += dir;
    }
    GeneratorMatrix g{q.kappa, {}};
    g.columns.reserve(n);
    for (std::size_t i = 0; i < m; ++i)
        for (int c = 0; c < counts[i]; ++c) g.columns.push_back(static_cast<std::uint32_t>(i + 1));
    return g;
}

}  // namespace cosec
