#include "romnav/observer.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace romnav {

namespace {

double component_of(const Eigen::Vector3d& v, MeasuredComponent c) {
    switch (c) {
        case MeasuredComponent::X: return v[0];
        case MeasuredComponent::Y: return v[1];
        case MeasuredComponent::Z: return v[2];
        case MeasuredComponent::Sum: return v[0] + v[1] + v[2];
    }
    return 0.0;
}

} // namespace

MeasurementModel measurement_matrix(const PodBasis& basis, const SensorNetwork& fixed,
                                    const std::optional<Eigen::Vector3d>& mobile_position) {
    const int n = basis.n_modes();
    const auto p_fixed = static_cast<Eigen::Index>(fixed.fixed.size());
    const Eigen::Index p = p_fixed + (mobile_position ? 3 : 0);

    for (const auto& s : fixed.fixed)
        if (!basis.grid.strictly_inside(s.position))
            throw OutOfDomainError("measurement_matrix: fixed sensor outside the domain",
                                   s.position[0], s.position[1], s.position[2]);

    MeasurementModel m;
    m.C.resize(p, n);
    m.y_offset.resize(p);

    for (Eigen::Index r = 0; r < p_fixed; ++r) {
        const auto& s = fixed.fixed[static_cast<std::size_t>(r)];
        for (int i = 0; i < n; ++i)
            m.C(r, i) = component_of(sample(basis.modes[static_cast<std::size_t>(i)],
                                            s.position),
                                     s.component);
        m.y_offset[r] = component_of(sample(basis.mean, s.position), s.component);
    }

    if (mobile_position) {
        for (int i = 0; i < n; ++i)
            m.C.block<3, 1>(p_fixed, i) =
                sample(basis.modes[static_cast<std::size_t>(i)], *mobile_position);
        m.y_offset.segment<3>(p_fixed) = sample(basis.mean, *mobile_position);
    }
    return m;
}

EkfState ekf_predict(const RomModel& model, const EkfConfig& cfg, const EkfState& st) {
    const int n = model.n;
    if (st.a_hat.size() != n) throw DimensionError("ekf_predict: state length mismatch");
    if (!(cfg.dt_hours > 0.0)) throw DimensionError("ekf_predict: dt must be positive");

    const double t1 = st.t + cfg.dt_hours;
    auto step = [&](const Eigen::VectorXd& a) {
        return integrate_rom(model, a, st.t, t1, cfg.rom_dt_max_hours).a;
    };

    EkfState out;
    out.t = t1;
    out.a_hat = step(st.a_hat);

    // discrete Jacobian of the integrated map by central differences
    const double h = 1e-6 * std::max(1.0, st.a_hat.norm());
    Eigen::MatrixXd A(n, n);
    for (int j = 0; j < n; ++j) {
        Eigen::VectorXd ap = st.a_hat, am = st.a_hat;
        ap[j] += h;
        am[j] -= h;
        A.col(j) = (step(ap) - step(am)) / (2.0 * h);
    }

    Eigen::MatrixXd P = A * st.P * A.transpose() + cfg.Q_proc;
    out.P = 0.5 * (P + P.transpose());
    return out;
}

EkfUpdateResult ekf_update(const EkfConfig& cfg, const EkfState& st,
                           const MeasurementModel& meas, const Eigen::VectorXd& y) {
    const Eigen::Index n = st.a_hat.size();
    const Eigen::Index p = meas.C.rows();
    if (meas.C.cols() != n || meas.y_offset.size() != p || y.size() != p ||
        cfg.R_meas.rows() != p || cfg.R_meas.cols() != p)
        throw DimensionError("ekf_update: inconsistent measurement dimensions");

    const Eigen::MatrixXd S = meas.C * st.P * meas.C.transpose() + cfg.R_meas;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(S);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
        throw ConditioningError("ekf_update: innovation covariance not positive definite");
    // reciprocal condition estimate via the LDLT diagonal
    const Eigen::VectorXd d = ldlt.vectorD();
    if (!(d.minCoeff() > 0.0) || d.minCoeff() / d.maxCoeff() < 1e-300)
        throw ConditioningError("ekf_update: innovation covariance numerically singular");

    const Eigen::MatrixXd K = ldlt.solve(meas.C * st.P).transpose();  // P C^T S^-1

    EkfUpdateResult out;
    out.innovation = y - meas.y_offset - meas.C * st.a_hat;
    out.innovation_cov = S;
    out.state.t = st.t;
    out.state.a_hat = st.a_hat + K * out.innovation;
    Eigen::MatrixXd P =
        (Eigen::MatrixXd::Identity(n, n) - K * meas.C) * st.P;
    out.state.P = 0.5 * (P + P.transpose());
    return out;
}

std::vector<RomState> forecast_coefficients(const RomModel& model, const EkfState& st,
                                            double horizon_hours, double dt_hours,
                                            double rom_dt_max_hours) {
    if (horizon_hours < 0.0)
        throw DimensionError("forecast_coefficients: horizon must be nonnegative");
    if (!(dt_hours > 0.0))
        throw DimensionError("forecast_coefficients: dt must be positive");

    std::vector<RomState> out;
    out.push_back(RomState{st.a_hat, st.t});
    const auto n_steps = static_cast<long>(std::ceil(horizon_hours / dt_hours - 1e-12));
    for (long s = 1; s <= n_steps; ++s) {
        const double t_next = std::min(st.t + s * dt_hours, st.t + horizon_hours);
        out.push_back(integrate_rom(model, out.back().a, out.back().t, t_next,
                                    rom_dt_max_hours));
    }
    return out;
}

PredictedFlow::PredictedFlow(const PodBasis& basis, std::vector<RomState> samples)
    : basis_(basis), samples_(std::move(samples)) {
    if (samples_.empty())
        throw DimensionError("PredictedFlow: needs at least one coefficient sample");
}

Eigen::Vector3d PredictedFlow::velocity(const Eigen::Vector3d& p, double t_hours) const {
    // locate the bracketing samples; clamp outside the forecast window
    const auto m = static_cast<Eigen::Index>(samples_.size());
    Eigen::VectorXd a;
    if (t_hours <= samples_.front().t || m == 1) {
        a = samples_.front().a;
    } else if (t_hours >= samples_.back().t) {
        a = samples_.back().a;
    } else {
        Eigen::Index hi = 1;
        while (samples_[static_cast<std::size_t>(hi)].t < t_hours && hi < m - 1) ++hi;
        const auto& s0 = samples_[static_cast<std::size_t>(hi - 1)];
        const auto& s1 = samples_[static_cast<std::size_t>(hi)];
        const double w = (t_hours - s0.t) / (s1.t - s0.t);
        a = (1.0 - w) * s0.a + w * s1.a;
    }

    Eigen::Vector3d v = sample(basis_.mean, p);
    for (int i = 0; i < basis_.n_modes(); ++i)
        v += a[i] * sample(basis_.modes[static_cast<std::size_t>(i)], p);
    return v;
}

} // namespace romnav
