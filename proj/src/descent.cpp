#include "cosec/descent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cosec {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// Q^{-1} diagonal: sqrt(q_i (1/n - q_i)) with q_i clamped strictly inside the
// box so the cost matrix stays invertible.
std::vector<double> inverse_cost_diag(const CodeDefVector& q) {
    const double delta = 1e-12 / q.n;
    const double hi = 1.0 / q.n - delta;
    std::vector<double> qinv(q.q.size());
    for (std::size_t i = 0; i < q.q.size(); ++i) {
        const double c = std::clamp(q.q[i], delta, hi);
        qinv[i] = std::sqrt(c * (1.0 / q.n - c));
    }
    return qinv;
}

// P_1 v = v - qinv * (qinv . v) / (qinv . qinv)
void project_unit_sum(const std::vector<double>& qinv, std::vector<double>& v) {
    const double scale = dot(qinv, v) / dot(qinv, qinv);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= scale * qinv[i];
}

std::vector<double> radial_diff(const CodeDefVector& q) {
    const double uniform = 1.0 / static_cast<double>(q.q.size());
    std::vector<double> d(q.q.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = q.q[i] - uniform;
    return d;
}

class DegenerateDirection : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace

double unit_cost(double q_i, int n) {
    const double hi = 1.0 / n;
    if (q_i <= 0.0 || q_i >= hi) return std::numeric_limits<double>::infinity();
    const double delta = 1e-12 / n;
    const double c = std::clamp(q_i, delta, hi - delta);
    return 1.0 / std::sqrt(c * (hi - c));
}

double trig_update(double q_i, double x, int n) {
    const double hi = 1.0 / n;
    if (q_i < -1e-12 || q_i > hi + 1e-12)
        throw std::invalid_argument("trig_update: q_i outside [0, 1/n]");
    const double cos_arg = std::clamp(2.0 * n * q_i - 1.0, -1.0, 1.0);
    return 0.5 * hi * (1.0 + std::cos(x + std::acos(cos_arg)));
}

void mean_adjust(CodeDefVector& q) {
    const std::size_t m = q.q.size();
    const double center = 0.5 / q.n;
    const double target_offset = 1.0 / static_cast<double>(m) - center;

    for (int iter = 0; iter < 100; ++iter) {
        double sum = 0.0, height = 0.0;
        for (double v : q.q) {
            sum += v;
            height += std::sqrt(std::max(v * (1.0 / q.n - v), 0.0));
        }
        if (std::abs(sum - 1.0) <= 1e-10) return;

        const double ax = sum / m - center;
        const double ay = height / m;
        const double radius = std::hypot(ax, ay);
        // |c| can exceed 1 when a rigid rotation alone cannot reach the unit
        // sum (typical very close to a vertex); clamping rotates the centroid
        // onto the axis and the induced boundary reflections let later
        // iterations close the gap. The iteration cap catches true failure.
        const double c = std::clamp(target_offset / radius, -1.0, 1.0);
        const double omega = std::acos(c) - std::atan2(ay, ax);
        for (double& v : q.q) v = trig_update(v, omega, q.n);
    }
    throw std::runtime_error("mean_adjust: failed to restore the unit sum");
}

std::vector<double> dir_radial(const CodeDefVector& q) {
    const std::vector<double> qinv = inverse_cost_diag(q);
    std::vector<double> rt = radial_diff(q);
    for (std::size_t i = 0; i < rt.size(); ++i) rt[i] *= qinv[i];
    project_unit_sum(qinv, rt);
    const double rt_norm = norm(rt);
    if (rt_norm < 1e-14)
        throw DegenerateDirection("dir_radial: q coincides with the uniform fraction code");
    for (double& v : rt) v /= rt_norm;
    return rt;
}

std::vector<double> dir_gradient(const CodeDefVector& q, const std::vector<double>& g) {
    const std::vector<double> qinv = inverse_cost_diag(q);

    std::vector<double> rt = radial_diff(q);
    for (std::size_t i = 0; i < rt.size(); ++i) rt[i] *= qinv[i];
    project_unit_sum(qinv, rt);
    const double rt_sq = dot(rt, rt);
    if (rt_sq < 1e-28)
        throw DegenerateDirection("dir_gradient: q coincides with the uniform fraction code");

    std::vector<double> u(g.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = qinv[i] * g[i];
    const double u_scale = norm(u);
    project_unit_sum(qinv, u);
    const double radial_comp = dot(rt, u) / rt_sq;
    for (std::size_t i = 0; i < u.size(); ++i) u[i] -= radial_comp * rt[i];

    const double u_norm = norm(u);
    if (u_norm < 1e-12 * std::max(u_scale, 1e-300))
        throw DegenerateDirection("dir_gradient: projected gradient vanishes");
    for (double& v : u) v /= u_norm;

    double g_dot = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) g_dot += g[i] * qinv[i] * u[i];
    if (g_dot > 0.0)
        for (double& v : u) v = -v;
    return u;
}

std::vector<double> combine_direction(const CodeDefVector& q, const std::vector<double>& g,
                                      const std::vector<double>& dir_g,
                                      const std::vector<double>& dir_m, double k_g) {
    const std::vector<double> qinv = inverse_cost_diag(q);
    const std::vector<double> diff = radial_diff(q);

    double g_dot = 0.0, g_len_sq = 0.0;
    for (std::size_t i = 0; i < qinv.size(); ++i) {
        g_dot += g[i] * qinv[i] * dir_g[i];
        g_len_sq += qinv[i] * qinv[i] * dir_g[i] * dir_g[i];
    }
    const double w_g = g_len_sq > 0.0 ? -k_g * g_dot / std::sqrt(g_len_sq) : 0.0;

    double m_dot = 0.0, m_len_sq = 0.0;
    for (std::size_t i = 0; i < qinv.size(); ++i) {
        m_dot += diff[i] * qinv[i] * dir_m[i];
        m_len_sq += qinv[i] * qinv[i] * dir_m[i] * dir_m[i];
    }
    const double diff_norm = norm(diff);
    const double w_m =
        (diff_norm > 0.0 && m_len_sq > 0.0) ? m_dot / (diff_norm * std::sqrt(m_len_sq)) : 0.0;

    const double denom = std::hypot(w_g, w_m);
    if (denom == 0.0) throw std::runtime_error("combine_direction: both direction weights vanish");

    std::vector<double> out(dir_g.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = (w_g * dir_g[i] + w_m * dir_m[i]) / denom;
    return out;
}

void update_kg(ControllerState& state, double directional_value, double radial_value,
               double alpha, double tau_t) {
    const double dev = directional_value - state.g_bar;
    state.w_var = (1.0 - alpha) * state.w_var + alpha * (1.0 - alpha) * dev * dev;
    state.g_bar = (1.0 - alpha) * state.g_bar + alpha * directional_value;

    const double noise = std::sqrt(state.w_var);
    if (noise > 0.0 && radial_value > 0.0) {
        state.k_g *= std::pow(tau_t * radial_value / (state.k_g * noise), alpha);
        state.k_g = std::clamp(state.k_g, 1e-12, 1e12);
    }
}

DescentResult run_descent(int kappa, int n, double epsilon, const DescentParams& params,
                          bool verbose_trace) {
    if (kappa < 1 || kappa > kMaxKappa)
        throw std::invalid_argument("run_descent: invalid kappa");
    if (n < 1 || n > (1 << kappa) - 1)
        throw std::invalid_argument("run_descent: n must be in [1, 2^kappa - 1]");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("run_descent: epsilon must be in (0, 1)");
    if (params.s <= 0.0 || params.n_g < 1 || params.alpha <= 0.0 || params.alpha > 1.0 ||
        params.tau_t <= 0.0 || params.sigma < 0.0 || params.trace_stride < 1)
        throw std::invalid_argument("run_descent: invalid parameters");
    const int kappa_limit =
        params.objective == Objective::equivocation_loss ? kMaxKappaEqLoss : kMaxKappaChi2;
    if (kappa > kappa_limit)
        throw std::invalid_argument("run_descent: kappa exceeds the objective's ceiling");

    auto value = [&](const CodeDefVector& q) {
        return params.objective == Objective::equivocation_loss ? eq_loss_l(n, epsilon, q)
                                                                : chi2_lambda(n, epsilon, q);
    };
    auto gradient = [&](const CodeDefVector& q) {
        return params.objective == Objective::equivocation_loss ? grad_eq_loss(n, epsilon, q)
                                                                : grad_chi2(n, epsilon, q);
    };

    CodeDefVector q = CodeDefVector::uniform(kappa, n);
    const double target = 1.0 / n;
    // |q|^2 = 1/n exactly at a vertex; the slack keeps every n*q_i within
    // ~1e-7 of an integer so the realization tolerance (1e-6) always holds.
    const double slack = 1e-7 / (static_cast<double>(n) * n);
    Rng rng(params.seed);
    ControllerState ctrl;
    long step_count = 0;

    DescentResult result;
    result.trace.seed = params.seed;
    auto record = [&](double tau) {
        result.trace.records.push_back(TraceRecord{step_count, value(q), norm(radial_diff(q)),
                                                   dot(q.q, q.q), ctrl.k_g, tau});
        if (verbose_trace) result.trace.q_snapshots.push_back(q.q);
    };
    auto norm_sq = [&] { return dot(q.q, q.q); };

    record(0.0);

    long outer = 0;
    while (norm_sq() < target - slack) {
        if (++outer > params.max_outer_iterations) {
            record(0.0);
            throw DescentTimeout("run_descent: outer iteration cap reached", result.trace);
        }

        // Random offset pushes q off any degenerate ray (including q = q_bar).
        for (double& v : q.q) v = trig_update(v, rng.normal(params.sigma), n);
        mean_adjust(q);

        const std::vector<double> g = gradient(q);

        double dir_value = 0.0, radial_value = 0.0, tau_radial = 0.0;
        bool stepped = false;
        for (int j = 0; j < params.n_g; ++j) {
            const std::vector<double> qinv = inverse_cost_diag(q);
            const double qinv_sq = dot(qinv, qinv);
            const std::vector<double> diff = radial_diff(q);

            std::vector<double> rt(diff.size());
            for (std::size_t i = 0; i < rt.size(); ++i) rt[i] = qinv[i] * diff[i];
            {
                const double scale = dot(qinv, rt) / qinv_sq;
                for (std::size_t i = 0; i < rt.size(); ++i) rt[i] -= scale * qinv[i];
            }
            const double rt_sq = dot(rt, rt);
            if (rt_sq < 1e-28) break;  // re-offset
            const double rt_norm = std::sqrt(rt_sq);
            std::vector<double> dir_m(rt.size());
            for (std::size_t i = 0; i < rt.size(); ++i) dir_m[i] = rt[i] / rt_norm;

            std::vector<double> dir_g(rt.size());
            double w_g = 0.0;
            bool have_gradient_dir = false;
            {
                std::vector<double> u(g.size());
                for (std::size_t i = 0; i < u.size(); ++i) u[i] = qinv[i] * g[i];
                const double u_scale = norm(u);
                const double scale = dot(qinv, u) / qinv_sq;
                for (std::size_t i = 0; i < u.size(); ++i) u[i] -= scale * qinv[i];
                const double radial_comp = dot(rt, u) / rt_sq;
                for (std::size_t i = 0; i < u.size(); ++i) u[i] -= radial_comp * rt[i];
                const double u_norm = norm(u);
                if (u_norm > 1e-12 * std::max(u_scale, 1e-300)) {
                    have_gradient_dir = true;
                    double g_dot = 0.0, g_len_sq = 0.0;
                    for (std::size_t i = 0; i < u.size(); ++i) {
                        dir_g[i] = u[i] / u_norm;
                        g_dot += g[i] * qinv[i] * dir_g[i];
                        g_len_sq += qinv[i] * qinv[i] * dir_g[i] * dir_g[i];
                    }
                    if (g_dot > 0.0) {
                        g_dot = -g_dot;
                        for (double& v : dir_g) v = -v;
                    }
                    dir_value = g_dot / std::sqrt(g_len_sq);
                    w_g = -ctrl.k_g * dir_value;
                }
            }

            double m_dot = 0.0, m_len_sq = 0.0;
            for (std::size_t i = 0; i < qinv.size(); ++i) {
                m_dot += diff[i] * qinv[i] * dir_m[i];
                m_len_sq += qinv[i] * qinv[i] * dir_m[i] * dir_m[i];
            }
            const double diff_norm = norm(diff);
            const double w_m = m_dot / (diff_norm * std::sqrt(m_len_sq));
            radial_value = m_dot / diff_norm;
            tau_radial = radial_value;

            const double denom = std::hypot(w_g, w_m);
            if (denom == 0.0) break;

            std::vector<double> step_dir(dir_m.size());
            double step_len_sq = 0.0;
            for (std::size_t i = 0; i < step_dir.size(); ++i) {
                step_dir[i] =
                    ((have_gradient_dir ? w_g * dir_g[i] : 0.0) + w_m * dir_m[i]) / denom;
                step_len_sq += qinv[i] * qinv[i] * step_dir[i] * step_dir[i];
            }
            // trig_update moves q_i by -qinv_i per unit angle, so the angle is
            // the negated step direction: the radial part then points outward
            // and the gradient part descends.
            const double x_scale = params.s / std::sqrt(step_len_sq);
            for (std::size_t i = 0; i < q.q.size(); ++i)
                q.q[i] = trig_update(q.q[i], -x_scale * step_dir[i], n);
            mean_adjust(q);
            ++step_count;
            stepped = true;
            if (norm_sq() >= target - slack) break;
        }

        if (stepped) update_kg(ctrl, dir_value, radial_value, params.alpha, params.tau_t);
        if (outer % params.trace_stride == 0 || norm_sq() >= target - slack) {
            const double tau =
                tau_radial > 0.0 ? ctrl.k_g * std::sqrt(ctrl.w_var) / tau_radial : 0.0;
            record(tau);
        }
    }

    result.code = realize_generator(q, n);
    result.final_objective = value(q_from_generator(result.code));
    if (result.trace.records.back().step != step_count) record(0.0);
    return result;
}

}  // namespace cosec
