#ifndef ROMNAV_CONFIG_HPP
#define ROMNAV_CONFIG_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "romnav/observer.hpp"
#include "romnav/sim.hpp"

namespace romnav {

/// Whole-pipeline configuration. Every field has a default (the layered-shear
/// benchmark); unknown keys are rejected with the offending dotted path.
struct RunConfig {
    std::string output_dir = "out";

    Grid3 grid;
    std::vector<WindLayer> wind_layers;

    int snapshot_count = 24;
    double snapshot_interval_hours = 1.0;
    double snapshot_start_hours = 0.0;

    double pod_energy_fraction = 0.99;
    int pod_max_modes = 20;

    // eddy viscosity: sets the forecast's trust-fade time w^2/nu (~45 min for
    // the default 3 km layers), which is how the open-loop model discounts
    // stale coefficient information over long horizons
    double rom_nu = 12.0;
    double rom_dt_max_seconds = 60.0;

    double ekf_q = 1e4;
    double ekf_r = 0.01;
    double ekf_dt_minutes = 10.0;

    PlannerConfig planner;

    Eigen::Vector3d agent_start{73.0, 160.0, 19.0};
    StationSpec station;
    double episode_hours = 24.0;
    double sample_minutes = 10.0;
    double noise_std_mps = 0.1;
    std::uint64_t seed = 42;

    SensorNetwork sensors;

    static RunConfig defaults();
    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig load(const std::string& path);
    nlohmann::json to_json() const;

    /// Scenario/filter objects materialized from the configuration.
    SyntheticWind make_wind() const;
    Scenario make_scenario() const;
    std::vector<double> snapshot_times() const;
    EkfConfig make_ekf_config(int n_modes, int n_measurement_rows) const;
};

/// Default seven-station lattice: tri-component sensors snapped to grid
/// nodes at spread-out fractions of the box, plus the agent at run time.
SensorNetwork default_sensor_lattice(const Grid3& grid);

} // namespace romnav

#endif
