#include "romnav/planner.hpp"

#include <cmath>

namespace romnav {

void PlanProblem::validate() const {
    if (horizon_steps < 1) throw DimensionError("PlanProblem: horizon needs >= 1 step");
    if (!(dt_seconds > 0.0)) throw DimensionError("PlanProblem: dt must be positive");
    if (!(u_max > 0.0)) throw DimensionError("PlanProblem: u_max must be positive");
    if (w_p < 0.0 || w_u < 0.0 || w_f < 0.0)
        throw DimensionError("PlanProblem: weights must be nonnegative");
    if (!bounds.contains(x0))
        throw OutOfDomainError("PlanProblem: x0 outside the state box", x0[0], x0[1], x0[2]);
    if (!x_ref.allFinite()) throw DimensionError("PlanProblem: non-finite target");
}

Trajectory rollout(const PlanProblem& prob, const ControlSequence& u, const FlowField& flow) {
    prob.validate();
    const int N = prob.horizon_steps;
    if (u.u.size() != N) throw DimensionError("rollout: input length != horizon");

    const double dt_h = prob.dt_seconds / 3600.0;
    const double km_per_mps = prob.dt_seconds * 1e-3;  // m/s * dt -> km

    Trajectory traj;
    traj.states.reserve(static_cast<std::size_t>(N) + 1);
    traj.times_hours.reserve(static_cast<std::size_t>(N) + 1);
    traj.inputs = u.u;
    traj.clamp_overshoot2 = Eigen::VectorXd::Zero(N + 1);

    traj.states.push_back(prob.x0);
    traj.times_hours.push_back(prob.t0_hours);
    for (int i = 0; i < N; ++i) {
        const Eigen::Vector3d x = traj.states.back();
        const double t = traj.times_hours.back();
        Eigen::Vector3d v;
        try {
            v = flow.velocity(x, t);
        } catch (const OutOfDomainError& e) {
            throw OutOfDomainError("rollout: flow query failed at step " +
                                       std::to_string(i) + ": " + e.what(),
                                   e.coordinate[0], e.coordinate[1], e.coordinate[2]);
        }
        v[2] += u.u[i];
        double over2 = 0.0;
        traj.states.push_back(prob.bounds.clamp(x + km_per_mps * v, &over2));
        traj.clamp_overshoot2[i + 1] = over2;
        traj.times_hours.push_back(prob.t0_hours + (i + 1) * dt_h);
    }
    return traj;
}

double plan_cost(const PlanProblem& prob, const Trajectory& traj) {
    const int N = prob.horizon_steps;
    if (static_cast<int>(traj.states.size()) != N + 1 || traj.inputs.size() != N)
        throw DimensionError("plan_cost: trajectory does not match the horizon");

    double J = prob.w_f * prob.target_dist2(traj.states.back());
    for (int i = 0; i < N; ++i)
        J += prob.w_p * prob.target_dist2(traj.states[static_cast<std::size_t>(i)]) +
             prob.w_u * traj.inputs[i] * traj.inputs[i];
    // boundary penalty keeps clamped trajectories expensive but feasible
    J += 1e3 * prob.w_p * traj.clamp_overshoot2.sum();
    return J;
}

namespace {

Eigen::VectorXd clamp_inputs(const Eigen::VectorXd& u, double u_max) {
    return u.cwiseMax(-u_max).cwiseMin(u_max);
}

} // namespace

MpcSolution solve_mpc(const PlanProblem& prob, const FlowField& flow,
                      const std::optional<ControlSequence>& warm_start) {
    prob.validate();
    const int N = prob.horizon_steps;

    Eigen::VectorXd u = warm_start ? clamp_inputs(warm_start->u, prob.u_max)
                                   : Eigen::VectorXd::Zero(N);
    if (u.size() != N) throw DimensionError("solve_mpc: warm start length != horizon");

    auto evaluate = [&](const Eigen::VectorXd& candidate) {
        return plan_cost(prob, rollout(prob, ControlSequence{candidate}, flow));
    };

    // central finite differences; one-sided where the probe would leave the
    // box so every rollout stays feasible
    auto fd_gradient = [&](const Eigen::VectorXd& at, double J_at) {
        const double h = 1e-4 * prob.u_max;
        Eigen::VectorXd g(N);
        for (int i = 0; i < N; ++i) {
            double up = at[i] + h, um = at[i] - h;
            if (up > prob.u_max) up = at[i];
            if (um < -prob.u_max) um = at[i];
            Eigen::VectorXd probe = at;
            probe[i] = up;
            const double Jp = (up == at[i]) ? J_at : evaluate(probe);
            probe[i] = um;
            const double Jm = (um == at[i]) ? J_at : evaluate(probe);
            g[i] = (Jp - Jm) / (up - um);
        }
        return g;
    };

    double J = evaluate(u);
    Eigen::VectorXd g = fd_gradient(u, J);
    Eigen::VectorXd prev_u, prev_g;
    double alpha_seed = -1.0;
    int iter = 0;

    for (; iter < 200; ++iter) {
        const Eigen::VectorXd pg = u - clamp_inputs(u - g, prob.u_max);
        if (pg.norm() < 1e-6 * (1.0 + std::abs(J))) break;

        // spectral (Barzilai-Borwein) step when history exists, cautious
        // gradient scaling otherwise
        double alpha;
        if (prev_u.size() > 0) {
            const Eigen::VectorXd s = u - prev_u;
            const Eigen::VectorXd y = g - prev_g;
            const double sy = s.dot(y);
            alpha = sy > 1e-300 ? s.squaredNorm() / sy : alpha_seed;
        } else {
            alpha = prob.u_max / std::max(g.cwiseAbs().maxCoeff(), 1e-12);
        }
        alpha = std::clamp(alpha, 1e-14, 1e14);

        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            const Eigen::VectorXd trial = clamp_inputs(u - alpha * g, prob.u_max);
            const Eigen::VectorXd step = u - trial;
            if (step.cwiseAbs().maxCoeff() == 0.0) break;
            const double Jt = evaluate(trial);
            if (Jt <= J - 1e-4 * g.dot(step)) {
                prev_u = u;
                prev_g = g;
                u = trial;
                J = Jt;
                g = fd_gradient(u, J);
                alpha_seed = alpha;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            ++iter;
            break;  // no admissible descent step left at this scale
        }
    }

    MpcSolution sol;
    sol.u = ControlSequence{u};
    sol.trajectory = rollout(prob, sol.u, flow);
    sol.cost = J;
    sol.iterations = iter;
    return sol;
}

ControlSequence shift_warm_start(const ControlSequence& u) {
    const Eigen::Index N = u.u.size();
    ControlSequence out;
    out.u.resize(N);
    if (N > 0) {
        out.u.head(N - 1) = u.u.tail(N - 1);
        out.u[N - 1] = u.u[N - 1];
    }
    return out;
}

MpcStepResult mpc_step(const PlanProblem& prob, const FlowField& flow,
                       const std::optional<ControlSequence>& warm_start) {
    MpcStepResult res;
    res.solution = solve_mpc(prob, flow, warm_start);
    res.applied_u = res.solution.u.u.size() > 0 ? res.solution.u.u[0] : 0.0;
    res.next_position = res.solution.trajectory.states[1];
    res.next_warm_start = shift_warm_start(res.solution.u);
    return res;
}

} // namespace romnav
