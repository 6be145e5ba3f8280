#ifndef ROMNAV_OBSERVER_HPP
#define ROMNAV_OBSERVER_HPP

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "romnav/flow.hpp"
#include "romnav/pod.hpp"
#include "romnav/rom.hpp"

namespace romnav {

/// Which functional of velocity a sensor reads.
enum class MeasuredComponent { X, Y, Z, Sum };

/// One single-channel velocity sensor; multi-component stations are several
/// entries at the same position.
struct SensorSpec {
    Eigen::Vector3d position;  // km, strictly inside the grid box
    MeasuredComponent component = MeasuredComponent::X;
};

struct SensorNetwork {
    std::vector<SensorSpec> fixed;
};

/// Coefficient estimate and covariance at time t (hours).
struct EkfState {
    Eigen::VectorXd a_hat;
    Eigen::MatrixXd P;
    double t = 0.0;
};

struct EkfConfig {
    Eigen::MatrixXd Q_proc;         // process noise, PSD
    Eigen::MatrixXd R_meas;         // measurement noise, strictly PD
    double dt_hours = 1.0 / 6.0;    // sampling period
    double rom_dt_max_hours = 60.0 / 3600.0;  // integrator cap for f_d
};

/// Linear measurement model y = C a + y_offset. Sensors read total velocity
/// while the coefficients describe fluctuations, so the mean field enters as
/// the offset.
struct MeasurementModel {
    Eigen::MatrixXd C;
    Eigen::VectorXd y_offset;
};

/// Stack the fixed-network rows (modes sampled at each sensor, the chosen
/// component or component sum) and, when a mobile position is given, three
/// rows for the full velocity vector at the agent.
MeasurementModel measurement_matrix(const PodBasis& basis, const SensorNetwork& fixed,
                                    const std::optional<Eigen::Vector3d>& mobile_position);

/// Prediction step: propagate the estimate through the discrete ROM map over
/// cfg.dt_hours; the discrete Jacobian is taken by central finite differences
/// of the map (it linearizes exactly what the filter integrates), and the
/// covariance is re-symmetrized.
EkfState ekf_predict(const RomModel& model, const EkfConfig& cfg, const EkfState& st);

struct EkfUpdateResult {
    EkfState state;
    Eigen::VectorXd innovation;      // y - y_offset - C a_hat(pre)
    Eigen::MatrixXd innovation_cov;  // C P C^T + R
};

/// Measurement update with gain K = P C^T (C P C^T + R)^-1; throws
/// ConditioningError when the innovation covariance is numerically singular.
EkfUpdateResult ekf_update(const EkfConfig& cfg, const EkfState& st,
                           const MeasurementModel& meas, const Eigen::VectorXd& y);

/// Open-loop coefficient forecast from the current estimate, sampled every
/// dt_hours out to horizon_hours (inclusive).
std::vector<RomState> forecast_coefficients(const RomModel& model, const EkfState& st,
                                            double horizon_hours, double dt_hours,
                                            double rom_dt_max_hours);

/// Forecast velocity field: mean + sum a_i(t) phi_i interpolated linearly in
/// time between coefficient samples and clamped at the ends. Holds references;
/// the basis and samples must outlive it.
class PredictedFlow : public FlowField {
public:
    PredictedFlow(const PodBasis& basis, std::vector<RomState> samples);
    Eigen::Vector3d velocity(const Eigen::Vector3d& p, double t_hours) const override;

    const std::vector<RomState>& samples() const { return samples_; }

private:
    const PodBasis& basis_;
    std::vector<RomState> samples_;
};

} // namespace romnav

#endif
