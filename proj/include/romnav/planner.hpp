#ifndef ROMNAV_PLANNER_HPP
#define ROMNAV_PLANNER_HPP

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "romnav/errors.hpp"
#include "romnav/flow.hpp"

namespace romnav {

enum class DistanceMode { Horizontal, Full3d };

/// Axis-aligned box of admissible positions (km).
struct AxisBox {
    Eigen::Vector3d lo{0, 0, 0};
    Eigen::Vector3d hi{1, 1, 1};

    bool contains(const Eigen::Vector3d& p) const {
        return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all();
    }
    /// Componentwise clamp; overshoot2 receives the squared distance moved.
    Eigen::Vector3d clamp(const Eigen::Vector3d& p, double* overshoot2 = nullptr) const {
        const Eigen::Vector3d c = p.cwiseMax(lo).cwiseMin(hi);
        if (overshoot2) *overshoot2 = (p - c).squaredNorm();
        return c;
    }
};

/// Finite-horizon problem for the vertical-speed planner. Positions and the
/// target in km, sampling time in seconds, speeds in m/s; stage weights are
/// w_p on squared target distance, w_u on squared input, w_f on the terminal
/// squared distance.
struct PlanProblem {
    Eigen::Vector3d x0{0, 0, 0};
    double t0_hours = 0.0;
    int horizon_steps = 1;   // N
    double dt_seconds = 600.0;
    Eigen::Vector3d x_ref{0, 0, 0};
    double w_p = 1.0;
    double w_u = 1e4;
    double w_f = 10.0;
    double u_max = 1.0;
    AxisBox bounds;
    DistanceMode distance = DistanceMode::Horizontal;

    void validate() const;
    double horizon_hours() const { return horizon_steps * dt_seconds / 3600.0; }
    /// Squared target distance under the configured metric (km^2).
    double target_dist2(const Eigen::Vector3d& p) const {
        const Eigen::Vector3d d = p - x_ref;
        return distance == DistanceMode::Horizontal ? d.head<2>().squaredNorm()
                                                    : d.squaredNorm();
    }
};

struct ControlSequence {
    Eigen::VectorXd u;  // m/s, |u_i| <= u_max
};

/// Forward-Euler prediction under a flow. states[i+1] results from applying
/// inputs[i] at states[i]; positions are clamped to the box after every step
/// and the pre-clamp squared overshoot is recorded as the constraint-activity
/// flag.
struct Trajectory {
    std::vector<Eigen::Vector3d> states;   // N+1
    std::vector<double> times_hours;       // N+1
    Eigen::VectorXd inputs;                // N
    Eigen::VectorXd clamp_overshoot2;      // N+1, km^2, [0] always 0

    bool any_clamped() const { return clamp_overshoot2.maxCoeff() > 0.0; }
};

Trajectory rollout(const PlanProblem& prob, const ControlSequence& u, const FlowField& flow);

/// J = w_f d(x_N)^2 + sum_i [w_p d(x_i)^2 + w_u u_i^2], plus a quadratic
/// boundary penalty of 1e3 w_p on any clamped overshoot.
double plan_cost(const PlanProblem& prob, const Trajectory& traj);

struct MpcSolution {
    ControlSequence u;
    Trajectory trajectory;
    double cost = 0.0;
    int iterations = 0;
};

/// Projected-gradient descent with Armijo backtracking on the box-constrained
/// input sequence; gradients by central finite differences through the
/// rollout (step 1e-4 u_max, one-sided at active bounds). Starts from the
/// warm sequence when given, else from zero. Stops when the projected
/// gradient falls below 1e-6 (1 + |J|) or after 200 iterations; the returned
/// sequence is always feasible and never costs more than the start.
MpcSolution solve_mpc(const PlanProblem& prob, const FlowField& flow,
                      const std::optional<ControlSequence>& warm_start);

/// Receding-horizon warm start: drop the applied first input, repeat the last.
ControlSequence shift_warm_start(const ControlSequence& u);

struct MpcStepResult {
    double applied_u = 0.0;          // m/s, first optimal input
    Eigen::Vector3d next_position;   // one predicted step under the same flow
    ControlSequence next_warm_start;
    MpcSolution solution;
};

/// One receding-horizon iteration: solve, apply the first input through a
/// single prediction step, and shift the sequence for the next solve.
MpcStepResult mpc_step(const PlanProblem& prob, const FlowField& flow,
                       const std::optional<ControlSequence>& warm_start);

} // namespace romnav

#endif
