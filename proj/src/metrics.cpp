#include "romnav/metrics.hpp"

#include <cmath>

namespace romnav {

namespace {

double target_distance(const EpisodeLog& log, const Eigen::Vector3d& p) {
    const Eigen::Vector3d d = p - log.x_ref;
    return log.distance == DistanceMode::Horizontal ? d.head<2>().norm() : d.norm();
}

} // namespace

double final_distance(const EpisodeLog& log) {
    if (log.records.empty()) throw UndefinedMetricError("final_distance: empty log");
    return target_distance(log, log.records.back().position);
}

double mean_alignment(const EpisodeLog& log) {
    if (log.records.size() < 2)
        throw UndefinedMetricError("mean_alignment: needs at least two records");

    const double dt_s = log.sample_minutes * 60.0;
    double sum = 0.0;
    long used = 0;
    for (std::size_t i = 0; i + 1 < log.records.size(); ++i) {
        const Eigen::Vector3d vel =
            (log.records[i + 1].position - log.records[i].position) * 1000.0 / dt_s;
        const Eigen::Vector3d& pred = log.records[i].predicted_wind;
        const double nv = vel.norm(), np = pred.norm();
        if (nv < 1e-9 || np < 1e-9) continue;  // degenerate step
        sum += vel.dot(pred) / (nv * np);
        ++used;
    }
    if (used == 0)
        throw UndefinedMetricError("mean_alignment: every step was degenerate");
    return sum / static_cast<double>(used);
}

double control_rms(const EpisodeLog& log) {
    if (log.records.size() < 2) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < log.records.size(); ++i)
        sum += log.records[i].u_z * log.records[i].u_z;
    return std::sqrt(sum / static_cast<double>(log.records.size() - 1));
}

double time_in_station(const EpisodeLog& log) {
    if (log.records.empty()) throw UndefinedMetricError("time_in_station: empty log");
    long in = 0;
    for (const auto& rec : log.records) {
        const double d = (rec.position.head<2>() - log.station.center).norm();
        if (d <= log.station.radius_km) ++in;
    }
    return static_cast<double>(in) / static_cast<double>(log.records.size());
}

double field_rmse(const VectorField3& truth, const VectorField3& predicted) {
    truth.require_same_grid(predicted);
    const Eigen::Index n = truth.grid().num_points();
    const double ss = (truth.samples() - predicted.samples()).squaredNorm();
    return std::sqrt(ss / static_cast<double>(n));
}

EpisodeMetrics compute_metrics(const EpisodeLog& log) {
    EpisodeMetrics m;
    m.d_f_km = final_distance(log);
    m.gamma_bar = mean_alignment(log);
    m.u_rms_mps = control_rms(log);
    m.runtime_s = log.runtime_s;
    m.time_in_station_fraction = time_in_station(log);
    return m;
}

} // namespace romnav
