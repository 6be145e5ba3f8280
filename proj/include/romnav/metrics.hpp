#ifndef ROMNAV_METRICS_HPP
#define ROMNAV_METRICS_HPP

#include "romnav/field.hpp"
#include "romnav/sim.hpp"

namespace romnav {

/// Episode evaluation summary. time_in_station_fraction is an extension
/// beyond the classic four (it scores the station-keeping task directly).
struct EpisodeMetrics {
    double d_f_km = 0.0;
    double gamma_bar = 0.0;
    double u_rms_mps = 0.0;
    double runtime_s = 0.0;
    double time_in_station_fraction = 0.0;
};

/// Distance from the final position to the target under the log's distance
/// mode (horizontal by default).
double final_distance(const EpisodeLog& log);

/// Time-averaged cosine between the realized per-step velocity and the
/// predicted wind at the agent. Steps where either vector is below 1e-9 m/s
/// are skipped; if every step degenerates the metric is undefined.
double mean_alignment(const EpisodeLog& log);

/// Root mean square of the applied vertical speeds (0 if none were applied).
double control_rms(const EpisodeLog& log);

/// Fraction of records within the station radius (horizontal distance).
double time_in_station(const EpisodeLog& log);

/// Root mean square pointwise velocity difference between two fields (m/s).
double field_rmse(const VectorField3& truth, const VectorField3& predicted);

EpisodeMetrics compute_metrics(const EpisodeLog& log);

} // namespace romnav

#endif
