#include "romnav/sim.hpp"

#include <chrono>
#include <cmath>

#include "romnav/rng.hpp"

namespace romnav {

SyntheticWind::SyntheticWind(std::vector<WindLayer> layers, const Grid3& domain)
    : layers_(std::move(layers)), domain_(domain) {
    for (const auto& l : layers_) {
        if (!(l.z_width_km > 0.0))
            throw DimensionError("SyntheticWind: layer width must be positive");
        if (l.period_hours < 0.0)
            throw DimensionError("SyntheticWind: negative period");
    }
}

Eigen::Vector3d SyntheticWind::velocity(const Eigen::Vector3d& p, double t_hours) const {
    if (!domain_.contains(p))
        throw OutOfDomainError("SyntheticWind: query outside the domain", p[0], p[1], p[2]);
    ++queries_;

    Eigen::Vector3d v = Eigen::Vector3d::Zero();
    for (const auto& l : layers_) {
        const double s = (p[2] - l.z_center_km) / l.z_width_km;
        double w = std::exp(-s * s);
        if (l.period_hours > 0.0)
            w *= std::cos(2.0 * M_PI * t_hours / l.period_hours + l.phase_rad);
        v[0] += w * l.vx_mps;
        v[1] += w * l.vy_mps;
    }
    return v;
}

SnapshotSet snapshot_campaign(const SyntheticWind& wind, const Grid3& grid,
                              const std::vector<double>& times) {
    if (!wind.domain().contains(grid.box_min()) || !wind.domain().contains(grid.box_max()))
        throw OutOfDomainError("snapshot_campaign: grid leaves the wind domain",
                               grid.box_min()[0], grid.box_min()[1], grid.box_min()[2]);

    SnapshotSet set;
    set.grid = grid;
    for (double t : times) {
        VectorField3 f(grid);
        for (Eigen::Index k = 0; k < grid.dims[2]; ++k)
            for (Eigen::Index j = 0; j < grid.dims[1]; ++j)
                for (Eigen::Index i = 0; i < grid.dims[0]; ++i)
                    f.set(i, j, k, wind.velocity(grid.node(i, j, k), t));
        set.snapshots.push_back(std::move(f));
        set.timestamps.push_back(t);
    }
    set.validate();
    return set;
}

Eigen::Vector3d agent_step(const Eigen::Vector3d& x, double t_hours, double dt_seconds,
                           double u_z, const FlowField& truth, const AxisBox& box,
                           bool* clamped) {
    Eigen::Vector3d v = truth.velocity(x, t_hours);
    v[2] += u_z;
    double over2 = 0.0;
    const Eigen::Vector3d next = box.clamp(x + dt_seconds * 1e-3 * v, &over2);
    if (clamped) *clamped = over2 > 0.0;
    return next;
}

int PlannerConfig::horizon_steps() const {
    const double steps = horizon_hours * 3600.0 / dt_seconds;
    const int n = static_cast<int>(std::lround(steps));
    if (n < 1 || std::abs(steps - n) > 1e-9)
        throw ConfigError("planner horizon_hours must be a positive multiple of dt_seconds");
    return n;
}

EpisodeLog run_episode(const Scenario& sc, const PodBasis& basis, const RomModel& model,
                       const EkfConfig& ekf_cfg, const PlannerConfig& plan_cfg) {
    if (basis.n_modes() != model.n)
        throw DimensionError("run_episode: basis and model dimensions disagree");
    if (!(sc.sample_minutes > 0.0)) throw ConfigError("scenario sample_minutes must be > 0");
    const double dt_h = sc.sample_minutes / 60.0;
    if (std::abs(ekf_cfg.dt_hours - dt_h) > 1e-12)
        throw ConfigError("ekf dt must equal the scenario sampling interval");
    if (std::abs(plan_cfg.dt_seconds - sc.sample_minutes * 60.0) > 1e-9)
        throw ConfigError("planner dt_seconds must equal the scenario sampling interval");
    if (!plan_cfg.bounds.contains(sc.agent_start))
        throw ConfigError("scenario agent_start outside the planner bounds");
    if (!basis.grid.contains(plan_cfg.bounds.lo) || !basis.grid.contains(plan_cfg.bounds.hi))
        throw ConfigError("planner bounds leave the basis grid");

    const double step_count = sc.episode_hours * 60.0 / sc.sample_minutes;
    const int n_steps = static_cast<int>(std::lround(step_count));
    if (n_steps < 0 || std::abs(step_count - n_steps) > 1e-9)
        throw ConfigError("scenario episode_hours must be a multiple of sample_minutes");
    const int N = plan_cfg.horizon_steps();

    PlanProblem prob;
    prob.horizon_steps = N;
    prob.dt_seconds = plan_cfg.dt_seconds;
    prob.x_ref = plan_cfg.x_ref;
    prob.w_p = plan_cfg.w_p;
    prob.w_u = plan_cfg.w_u;
    prob.w_f = plan_cfg.w_f;
    prob.u_max = plan_cfg.u_max;
    prob.bounds = plan_cfg.bounds;
    prob.distance = plan_cfg.distance;

    EpisodeLog log;
    log.n_modes = model.n;
    log.sample_minutes = sc.sample_minutes;
    log.station = sc.station;
    log.x_ref = plan_cfg.x_ref;
    log.distance = plan_cfg.distance;
    log.u_max = plan_cfg.u_max;
    log.records.reserve(static_cast<std::size_t>(n_steps) + 1);

    Rng rng(sc.seed);
    Eigen::Vector3d x = sc.agent_start;
    EkfState st;
    st.a_hat = Eigen::VectorXd::Zero(model.n);
    st.P = basis.eigenvalues.asDiagonal();  // snapshot coefficient variances
    st.t = 0.0;

    std::optional<ControlSequence> warm;
    const auto wall_start = std::chrono::steady_clock::now();

    auto advance_one = [&](int k, double t) {
        if (k > 0) st = ekf_predict(model, ekf_cfg, st);
        st.t = t;  // pin against accumulation drift

        const MeasurementModel meas = measurement_matrix(basis, sc.sensors, x);
        Eigen::VectorXd y(meas.C.rows());
        Eigen::Index r = 0;
        for (const auto& s : sc.sensors.fixed) {
            const Eigen::Vector3d w = sc.wind.velocity(s.position, t);
            double val = 0.0;
            switch (s.component) {
                case MeasuredComponent::X: val = w[0]; break;
                case MeasuredComponent::Y: val = w[1]; break;
                case MeasuredComponent::Z: val = w[2]; break;
                case MeasuredComponent::Sum: val = w.sum(); break;
            }
            y[r++] = val + sc.noise_std_mps * rng.gaussian();
        }
        const Eigen::Vector3d w_agent = sc.wind.velocity(x, t);
        for (int c = 0; c < 3; ++c)
            y[r++] = w_agent[c] + sc.noise_std_mps * rng.gaussian();

        const EkfUpdateResult upd = ekf_update(ekf_cfg, st, meas, y);
        st = upd.state;

        EpisodeRecord rec;
        rec.t_hours = t;
        rec.position = x;
        rec.a_hat = st.a_hat;
        rec.innovation_norm = upd.innovation.norm();
        rec.trace_P = st.P.trace();
        rec.true_wind = w_agent;

        if (k < n_steps) {
            const auto fc = forecast_coefficients(model, st, plan_cfg.horizon_hours,
                                                  plan_cfg.dt_seconds / 3600.0,
                                                  ekf_cfg.rom_dt_max_hours);
            const PredictedFlow flow(basis, fc);
            rec.predicted_wind = flow.velocity(x, t);

            prob.x0 = x;
            prob.t0_hours = t;
            const MpcSolution sol = solve_mpc(prob, flow, warm);
            rec.u_z = sol.u.u[0];
            warm = shift_warm_start(sol.u);

            bool clamped = false;
            x = agent_step(x, t, sc.sample_minutes * 60.0, rec.u_z, sc.wind,
                           plan_cfg.bounds, &clamped);
            rec.clamped = clamped;
        } else {
            const PredictedFlow here(basis, {RomState{st.a_hat, t}});
            rec.predicted_wind = here.velocity(x, t);
        }
        log.records.push_back(std::move(rec));
    };

    for (int k = 0; k <= n_steps; ++k) {
        const double t = k * dt_h;
        // abort with the step index on any component failure
        try {
            advance_one(k, t);
        } catch (const BlowUpError& e) {
            throw BlowUpError("episode step " + std::to_string(k) + " (t = " +
                                  std::to_string(t) + " h): " + e.what(),
                              e.time);
        } catch (const OutOfDomainError& e) {
            throw OutOfDomainError("episode step " + std::to_string(k) + ": " + e.what(),
                                   e.coordinate[0], e.coordinate[1], e.coordinate[2]);
        } catch (const ConditioningError& e) {
            throw ConditioningError("episode step " + std::to_string(k) + ": " + e.what());
        }
    }

    log.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                  wall_start)
                        .count();
    return log;
}

} // namespace romnav
