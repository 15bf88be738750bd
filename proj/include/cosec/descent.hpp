#ifndef COSEC_DESCENT_HPP
#define COSEC_DESCENT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cosec/continuous.hpp"
#include "cosec/gf2.hpp"
#include "cosec/rng.hpp"

// Constrained gradient descent over the code-definition vector q. The
// optimizer walks q from the uniform fraction code outward until every entry
// sits at 0 or 1/n, at which point the code is realizable. Box bounds are
// enforced by a trigonometric update that maps each q_i onto a semicircle;
// the unit-sum constraint is restored after every step by rotating the
// semicircle centroid back into place.

namespace cosec {

enum class Objective { equivocation_loss, chi2 };

struct DescentParams {
    double s = 0.0001;        // step cost
    int n_g = 25;             // gradient recalculation period
    double alpha = 0.5;       // controller gain exponent
    double tau_t = 1.0;       // fluctuation ratio target
    double sigma = 0.000001;  // random offset standard deviation
    Objective objective = Objective::equivocation_loss;
    std::uint64_t seed = 0;
    long max_outer_iterations = 1000000;
    long trace_stride = 1;  // record every trace_stride-th outer iteration
};

struct TraceRecord {
    long step = 0;
    double objective = 0.0;
    double dist_from_uniform = 0.0;
    double q_norm_sq = 0.0;
    double k_g = 0.0;
    double tau = 0.0;
};

struct DescentTrace {
    std::uint64_t seed = 0;
    std::vector<TraceRecord> records;
    std::vector<std::vector<double>> q_snapshots;  // filled only when verbose
};

struct DescentResult {
    GeneratorMatrix code;
    DescentTrace trace;
    double final_objective = 0.0;
};

/// Raised when the outer-iteration cap is hit; carries the partial trace.
class DescentTimeout : public std::runtime_error {
public:
    DescentTimeout(std::string what, DescentTrace trace)
        : std::runtime_error(std::move(what)), trace(std::move(trace)) {}
    DescentTrace trace;
};

/// Movement cost per unit step of q_i; infinite at the box bounds.
double unit_cost(double q_i, int n);

/// Boundary-compliant update f(q_i, x): moves q_i along its semicircle by
/// angle x and never leaves [0, 1/n].
double trig_update(double q_i, double x, int n);

/// Rotates all entries so the sum returns to 1 (within 1e-10) while keeping
/// every entry inside [0, 1/n].
void mean_adjust(CodeDefVector& q);

/// Unit direction of steepest constrained descent, orthogonal (in the
/// cost-weighted sense) to both the unit-sum and radial constraints.
std::vector<double> dir_gradient(const CodeDefVector& q, const std::vector<double>& g);

/// Unit direction of steepest constrained outward (radial) movement.
std::vector<double> dir_radial(const CodeDefVector& q);

/// Value-weighted combination of the gradient and radial directions.
std::vector<double> combine_direction(const CodeDefVector& q, const std::vector<double>& g,
                                      const std::vector<double>& dir_g,
                                      const std::vector<double>& dir_m, double k_g);

struct ControllerState {
    double k_g = 1.0;
    double g_bar = 0.0;
    double w_var = 1.0;
};

/// One controller update from the latest gradient directional value and
/// radial value; steers the fluctuation ratio toward tau_t.
void update_kg(ControllerState& state, double directional_value, double radial_value,
               double alpha, double tau_t);

DescentResult run_descent(int kappa, int n, double epsilon, const DescentParams& params,
                          bool verbose_trace = false);

}  // namespace cosec

#endif
