// Command-line driver: runs descents, builds reference codes, samples random
// codes, computes bounds and emits result tables as CSV.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cosec/bounds.hpp"
#include "cosec/codeio.hpp"
#include "cosec/constructions.hpp"
#include "cosec/continuous.hpp"
#include "cosec/descent.hpp"
#include "cosec/exact.hpp"
#include "cosec/rng.hpp"

namespace {

using namespace cosec;

namespace fs = std::filesystem;

std::string output_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("COSEC_OUT_DIR")) return env;
    return ".";
}

fs::path prepare_out(const std::string& dir) {
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

double default_epsilon(int kappa, int n) {
    return static_cast<double>(n - kappa) / n;
}

Objective parse_objective(const std::string& name) {
    if (name == "equiv") return Objective::equivocation_loss;
    if (name == "chi2") return Objective::chi2;
    throw CLI::ValidationError("--objective must be equiv or chi2");
}

/// Metric dispatch: exact pattern sweep for n <= 24, closed form when kappa
/// permits; when both paths apply their agreement is asserted.
double evaluate_code(const GeneratorMatrix& g, double epsilon, Objective obj) {
    const bool exact_ok = g.n() <= kMaxExactBlocklength;
    const int kappa_limit =
        obj == Objective::equivocation_loss ? kMaxKappaEqLoss : kMaxKappaChi2;
    const bool closed_ok = g.kappa <= kappa_limit && epsilon > 0.0 && epsilon < 1.0;
    std::optional<double> exact, closed;
    if (exact_ok)
        exact = obj == Objective::equivocation_loss ? equivocation_loss_exact(g, epsilon)
                                                    : chi2_exact(g, epsilon);
    if (closed_ok) {
        const auto q = q_from_generator(g);
        closed = obj == Objective::equivocation_loss ? eq_loss_l(g.n(), epsilon, q)
                                                     : chi2_lambda(g.n(), epsilon, q);
    }
    if (exact && closed && std::abs(*exact - *closed) > 1e-9 * std::max(1.0, std::abs(*exact)))
        throw std::runtime_error("metric dispatch: exact and closed-form paths disagree");
    if (exact) return *exact;
    if (closed) return *closed;
    throw std::runtime_error("code too large for every evaluation path");
}

struct SampleStats {
    double mean = 0.0;
    double stddev = 0.0;  // Bessel-corrected
    int count = 0;
};

SampleStats sample_random_codes(int kappa, int n, double epsilon, Objective obj,
                                int sample_size, std::uint64_t seed) {
    if (sample_size < 2) throw std::runtime_error("sample size must be at least 2");
    std::vector<double> vals(sample_size);
    for (int i = 0; i < sample_size; ++i) {
        const auto g = random_code(kappa, n, Rng::derive_seed(seed, i));
        vals[i] = evaluate_code(g, epsilon, obj);
    }
    SampleStats s;
    s.count = sample_size;
    for (double v : vals) s.mean += v;
    s.mean /= sample_size;
    double ss = 0.0;
    for (double v : vals) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / (sample_size - 1));
    return s;
}

nlohmann::json metric_report_json(const GeneratorMatrix& g, double epsilon) {
    nlohmann::json j;
    j["kappa"] = g.kappa;
    j["n"] = g.n();
    j["k"] = g.k();
    j["epsilon"] = epsilon;
    if (g.n() <= kMaxExactBlocklength) {
        const auto m = exact_metrics(g, epsilon);
        j["eq_loss"] = m.eq_loss;
        j["chi2"] = m.chi2;
        j["tvd"] = *m.tvd;
        j["achievability_gap"] = m.achievability_gap;
        // Cross-check against the closed forms when those apply too.
        evaluate_code(g, epsilon, Objective::equivocation_loss);
        evaluate_code(g, epsilon, Objective::chi2);
    } else {
        j["eq_loss"] = evaluate_code(g, epsilon, Objective::equivocation_loss);
        j["chi2"] = evaluate_code(g, epsilon, Objective::chi2);
    }
    return j;
}

nlohmann::json bound_report_json(const BoundReport& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["k"] = r.k;
    j["kappa"] = r.kappa;
    j["epsilon"] = r.epsilon;
    j["tvd_achievability"] = r.tvd_achievability;
    j["tvd_converse"] = r.tvd_converse;
    j["eq_loss_lower"] = r.eq_loss_lower;
    j["eq_loss_upper"] = r.eq_loss_upper;
    j["chi2_lower"] = r.chi2_lower;
    j["chi2_upper"] = r.chi2_upper;
    j["chi2_converse_direct"] = r.chi2_converse_direct;
    return j;
}

std::string csv_cell(std::optional<double> v) {
    if (!v) return "";
    std::ostringstream os;
    os.precision(10);
    os << *v;
    return os.str();
}

int cmd_table(int kappa, std::vector<int> n_list, double epsilon_flag, Objective obj,
              int sample_size, std::uint64_t seed, const std::string& out_flag,
              const std::string& bklc_seed_file, const DescentParams& base_params) {
    if (n_list.empty()) {
        if (kappa < 4)
            throw std::runtime_error("no default blocklength grid below kappa=4; pass --n-list");
        for (int i = 1; i <= 15; ++i) {
            const int n = (1 << (kappa - 4)) * i;
            if (n > kappa && n < (1 << kappa)) n_list.push_back(n);
        }
    }
    for (int n : n_list)
        if (n <= kappa || n >= (1 << kappa))
            throw std::runtime_error("blocklength out of range: " + std::to_string(n));

    std::optional<GeneratorMatrix> bklc_seed;
    if (!bklc_seed_file.empty()) bklc_seed = read_code_file(bklc_seed_file);

    const fs::path dir = prepare_out(output_dir(out_flag));
    const fs::path path = dir / "table.csv";
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string());

    const std::time_t now = std::time(nullptr);
    char stamp[64];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    f << "# generated " << stamp << '\n';
    f << "# kappa=" << kappa << " objective="
      << (obj == Objective::equivocation_loss ? "equiv" : "chi2")
      << " sample_size=" << sample_size << " seed=" << seed << '\n';
    if (!bklc_seed) f << "# bklc column omitted: no seed matrix configured\n";

    f << "n,epsilon,random_mean,random_std,descent,descent_rel,ldpc_dual,ldpc_dual_rel,"
         "sec,sec_rel";
    if (bklc_seed) f << ",bklc,bklc_rel";
    f << ",bound_lower,bound_upper\n";
    f.precision(10);

    int cell = 0;
    for (int n : n_list) {
        const double eps = epsilon_flag >= 0.0 ? epsilon_flag : default_epsilon(kappa, n);
        const SampleStats stats =
            sample_random_codes(kappa, n, eps, obj, sample_size, Rng::derive_seed(seed, cell++));

        auto relative = [&](double v) { return (v - stats.mean) / stats.stddev; };
        auto guarded = [&](auto&& fn, const char* what) -> std::optional<double> {
            try {
                return fn();
            } catch (const std::exception& e) {
                std::cerr << "warning: " << what << " at n=" << n << " failed: " << e.what()
                          << '\n';
                return std::nullopt;
            }
        };

        const auto descent_val = guarded(
            [&] {
                DescentParams p = base_params;
                p.objective = obj;
                p.seed = Rng::derive_seed(seed, 10000 + cell);
                return run_descent(kappa, n, eps, p).final_objective;
            },
            "descent");
        const auto ldpc_val = guarded(
            [&] {
                return evaluate_code(ldpc_dual_code(kappa, n, Rng::derive_seed(seed, 20000 + cell)),
                                     eps, obj);
            },
            "ldpc-dual");
        // Subspace exclusion exists only at n = 2^kappa - 2^u.
        std::optional<double> sec_val;
        for (int u = 0; u < kappa; ++u)
            if (n == (1 << kappa) - (1 << u))
                sec_val = guarded(
                    [&] { return evaluate_code(subspace_exclusion_code(kappa, u), eps, obj); },
                    "subspace-exclusion");
        std::optional<double> bklc_val;
        if (bklc_seed)
            bklc_val = guarded(
                [&] {
                    return evaluate_code(bklc_incremental(*bklc_seed, n, bsc_p_from_epsilon(eps)),
                                         eps, obj);
                },
                "bklc");

        const int k = n - kappa;
        double lower, upper;
        if (obj == Objective::equivocation_loss) {
            std::tie(lower, upper) = eq_loss_bounds(n, k, eps);
        } else {
            std::tie(lower, upper) = chi2_bounds(n, k, eps);
            lower = std::max(lower, chi2_converse_direct(n, kappa, eps));
        }

        auto rel_of = [&](const std::optional<double>& v) -> std::optional<double> {
            if (!v) return std::nullopt;
            return relative(*v);
        };
        f << n << ',' << eps << ',' << stats.mean << ',' << stats.stddev << ','
          << csv_cell(descent_val) << ',' << csv_cell(rel_of(descent_val)) << ','
          << csv_cell(ldpc_val) << ',' << csv_cell(rel_of(ldpc_val)) << ','
          << csv_cell(sec_val) << ',' << csv_cell(rel_of(sec_val));
        if (bklc_seed) f << ',' << csv_cell(bklc_val) << ',' << csv_cell(rel_of(bklc_val));
        f << ',' << lower << ',' << upper << '\n';
    }
    std::cout << "wrote " << path.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coset secrecy code designer for the binary erasure wiretap channel"};
    app.require_subcommand(1);

    int kappa = 8, n = 16, sample_size = 256, u = 0;
    double epsilon = -1.0;  // negative = use the k/n default
    std::string objective = "equiv", out, code_file, kind = "random", seed_matrix_file;
    std::vector<int> n_list;
    std::uint64_t seed = 0;
    bool verbose_trace = false;
    DescentParams dp;

    auto add_common = [&](CLI::App* c, bool with_eps = true) {
        c->add_option("--kappa", kappa, "base code dimension");
        c->add_option("--n", n, "blocklength");
        if (with_eps) c->add_option("--epsilon", epsilon, "erasure rate (default k/n)");
        c->add_option("--seed", seed, "master RNG seed");
        c->add_option("--out", out, "output directory (default $COSEC_OUT_DIR or .)");
    };
    auto add_descent_params = [&](CLI::App* c) {
        c->add_option("--objective", objective, "equiv or chi2");
        c->add_option("--step-cost", dp.s, "step cost s");
        c->add_option("--grad-period", dp.n_g, "steps between gradient updates");
        c->add_option("--alpha", dp.alpha, "controller gain exponent");
        c->add_option("--tau-target", dp.tau_t, "fluctuation ratio target");
        c->add_option("--offset-sigma", dp.sigma, "random offset standard deviation");
        c->add_option("--max-outer", dp.max_outer_iterations, "outer iteration cap");
        c->add_option("--trace-stride", dp.trace_stride,
                      "record every k-th outer iteration in the trace");
    };

    auto* descend = app.add_subcommand("descend", "optimize a code by gradient descent");
    add_common(descend);
    add_descent_params(descend);
    descend->add_flag("--verbose-trace", verbose_trace, "record q snapshots in the trace");

    auto* eval = app.add_subcommand("eval", "evaluate a code file");
    eval->add_option("--code", code_file, "code JSON file")->required();
    eval->add_option("--epsilon", epsilon, "erasure rate (default k/n)");

    auto* construct = app.add_subcommand("construct", "build a reference code");
    add_common(construct);
    construct->add_option("--kind", kind,
                          "random | ldpc-dual | subspace-exclusion | bklc");
    construct->add_option("--u", u, "excluded subspace dimension (subspace-exclusion)");
    construct->add_option("--seed-matrix", seed_matrix_file, "seed code JSON file (bklc)");

    auto* sample = app.add_subcommand("sample-random", "random-code sample statistics");
    add_common(sample);
    sample->add_option("--objective", objective, "equiv or chi2");
    sample->add_option("--sample-size", sample_size, "number of random codes");

    auto* bounds = app.add_subcommand("bounds", "finite-blocklength bounds");
    bounds->add_option("--n", n, "blocklength");
    bounds->add_option("--kappa", kappa, "base code dimension");
    bounds->add_option("--epsilon", epsilon, "erasure rate (default k/n)");

    auto* table = app.add_subcommand("table", "comparison table across blocklengths");
    add_common(table);
    add_descent_params(table);
    table->add_option("--n-list", n_list, "explicit blocklength list");
    table->add_option("--sample-size", sample_size, "random sample size per row");
    table->add_option("--bklc-seed", seed_matrix_file, "seed code JSON enabling the bklc column");

    CLI11_PARSE(app, argc, argv);

    try {
        if (descend->parsed()) {
            dp.objective = parse_objective(objective);
            dp.seed = seed;
            const double eps = epsilon >= 0.0 ? epsilon : default_epsilon(kappa, n);
            const fs::path dir = prepare_out(output_dir(out));
            DescentResult result;
            try {
                result = run_descent(kappa, n, eps, dp, verbose_trace);
            } catch (const DescentTimeout& t) {
                write_trace_file((dir / "trace.csv").string(), t.trace);
                std::cerr << "error: " << t.what() << '\n';
                return 3;
            }
            write_code_file((dir / "code.json").string(), result.code);
            write_trace_file((dir / "trace.csv").string(), result.trace);
            std::cout << "objective " << result.final_objective << "\nwrote "
                      << (dir / "code.json").string() << " and "
                      << (dir / "trace.csv").string() << '\n';
        } else if (eval->parsed()) {
            const auto g = read_code_file(code_file);
            const double eps = epsilon >= 0.0 ? epsilon : default_epsilon(g.kappa, g.n());
            std::cout << metric_report_json(g, eps).dump(2) << '\n';
        } else if (construct->parsed()) {
            GeneratorMatrix g;
            if (kind == "random") {
                g = random_code(kappa, n, seed);
            } else if (kind == "ldpc-dual") {
                g = ldpc_dual_code(kappa, n, seed);
            } else if (kind == "subspace-exclusion") {
                g = subspace_exclusion_code(kappa, u);
            } else if (kind == "bklc") {
                if (seed_matrix_file.empty())
                    throw std::runtime_error("bklc requires --seed-matrix");
                const auto seed_g = read_code_file(seed_matrix_file);
                const double eps =
                    epsilon >= 0.0 ? epsilon : default_epsilon(seed_g.kappa, n);
                g = bklc_incremental(seed_g, n, bsc_p_from_epsilon(eps));
            } else {
                throw std::runtime_error("unknown construction kind: " + kind);
            }
            const fs::path dir = prepare_out(output_dir(out));
            write_code_file((dir / "code.json").string(), g);
            std::cout << "wrote " << (dir / "code.json").string() << '\n';
        } else if (sample->parsed()) {
            const double eps = epsilon >= 0.0 ? epsilon : default_epsilon(kappa, n);
            const auto obj = parse_objective(objective);
            const auto stats = sample_random_codes(kappa, n, eps, obj, sample_size, seed);
            nlohmann::json j;
            j["kappa"] = kappa;
            j["n"] = n;
            j["epsilon"] = eps;
            j["objective"] = objective;
            j["sample_size"] = stats.count;
            j["mean"] = stats.mean;
            j["stddev"] = stats.stddev;
            std::cout << j.dump(2) << '\n';
        } else if (bounds->parsed()) {
            const double eps = epsilon >= 0.0 ? epsilon : default_epsilon(kappa, n);
            std::cout << bound_report_json(bound_report(n, n - kappa, kappa, eps)).dump(2)
                      << '\n';
        } else if (table->parsed()) {
            return cmd_table(kappa, n_list, epsilon, parse_objective(objective), sample_size,
                             seed, out, seed_matrix_file, dp);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
