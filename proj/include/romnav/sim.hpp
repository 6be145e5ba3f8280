#ifndef ROMNAV_SIM_HPP
#define ROMNAV_SIM_HPP

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "romnav/observer.hpp"
#include "romnav/planner.hpp"
#include "romnav/pod.hpp"

namespace romnav {

/// One horizontally uniform wind stratum: a Gaussian altitude bump times an
/// optional cosine modulation in time. period_hours == 0 means steady.
struct WindLayer {
    double z_center_km = 20.0;
    double z_width_km = 2.0;
    double vx_mps = 0.0;
    double vy_mps = 0.0;
    double period_hours = 0.0;
    double phase_rad = 0.0;
};

/// Analytic layered-shear ground truth. Horizontal components depend on z and
/// t only, the vertical component is zero, so the field is divergence-free by
/// construction. Query counting supports the truth/prediction separation
/// check: the planner must never show up in this count.
class SyntheticWind : public FlowField {
public:
    SyntheticWind() = default;
    SyntheticWind(std::vector<WindLayer> layers, const Grid3& domain);

    Eigen::Vector3d velocity(const Eigen::Vector3d& p, double t_hours) const override;

    const Grid3& domain() const { return domain_; }
    const std::vector<WindLayer>& layers() const { return layers_; }
    std::uint64_t query_count() const { return queries_; }

private:
    std::vector<WindLayer> layers_;
    Grid3 domain_;
    mutable std::uint64_t queries_ = 0;
};

/// Sample the truth on a grid at each listed time (hours).
SnapshotSet snapshot_campaign(const SyntheticWind& wind, const Grid3& grid,
                              const std::vector<double>& times);

/// One forward-Euler kinematic step under the TRUE wind plus the commanded
/// vertical speed; the result is clamped to the box and the flag reports it.
Eigen::Vector3d agent_step(const Eigen::Vector3d& x, double t_hours, double dt_seconds,
                           double u_z, const FlowField& truth, const AxisBox& box,
                           bool* clamped = nullptr);

struct StationSpec {
    Eigen::Vector2d center{0, 0};  // km
    double radius_km = 50.0;
};

struct Scenario {
    SyntheticWind wind;
    SensorNetwork sensors;
    Eigen::Vector3d agent_start{0, 0, 20};
    StationSpec station;
    double episode_hours = 24.0;
    double sample_minutes = 10.0;
    double noise_std_mps = 0.1;
    std::uint64_t seed = 42;
};

/// Planner settings shared by every receding-horizon solve of an episode.
struct PlannerConfig {
    double horizon_hours = 3.0;
    double dt_seconds = 600.0;
    double w_p = 1.0;
    double w_u = 1e4;
    double w_f = 10.0;
    double u_max = 1.0;
    AxisBox bounds;
    Eigen::Vector3d x_ref{0, 0, 20};
    DistanceMode distance = DistanceMode::Horizontal;

    int horizon_steps() const;
};

struct EpisodeRecord {
    double t_hours = 0.0;
    Eigen::Vector3d position{0, 0, 0};
    double u_z = 0.0;                      // applied this step (0 on the final record)
    Eigen::VectorXd a_hat;
    double innovation_norm = 0.0;
    double trace_P = 0.0;
    Eigen::Vector3d true_wind{0, 0, 0};       // at the agent
    Eigen::Vector3d predicted_wind{0, 0, 0};  // at the agent, post-update
    bool clamped = false;                     // the step out of this record hit the box
};

struct EpisodeLog {
    std::vector<EpisodeRecord> records;
    int n_modes = 0;
    double sample_minutes = 10.0;
    StationSpec station;
    Eigen::Vector3d x_ref{0, 0, 0};
    DistanceMode distance = DistanceMode::Horizontal;
    double u_max = 1.0;
    double runtime_s = 0.0;  // closed-loop wall time, excluded from determinism checks
};

/// Closed loop: measure the true wind with seeded Gaussian noise, assimilate
/// (predict from the previous instant, then update), forecast over the
/// planner horizon, solve the receding-horizon problem warm-started from the
/// shifted previous sequence, apply the first input through the TRUE wind,
/// log. Deterministic for a fixed scenario and seed. The final instant is
/// measured and logged but no input is applied.
EpisodeLog run_episode(const Scenario& sc, const PodBasis& basis, const RomModel& model,
                       const EkfConfig& ekf_cfg, const PlannerConfig& plan_cfg);

} // namespace romnav

#endif
