#ifndef ROMNAV_FLOW_HPP
#define ROMNAV_FLOW_HPP

#include <Eigen/Core>
#include <functional>

namespace romnav {

/// Time-varying velocity field sampled at arbitrary positions. Positions in
/// km, time in hours, velocity in m/s. The planner only ever sees this
/// interface, so it cannot reach the ground truth by construction.
class FlowField {
public:
    virtual ~FlowField() = default;
    virtual Eigen::Vector3d velocity(const Eigen::Vector3d& p, double t_hours) const = 0;
};

/// Lambda-backed flow for tests and simple scenarios.
class AnalyticFlow : public FlowField {
public:
    using Fn = std::function<Eigen::Vector3d(const Eigen::Vector3d&, double)>;
    explicit AnalyticFlow(Fn fn) : fn_(std::move(fn)) {}
    Eigen::Vector3d velocity(const Eigen::Vector3d& p, double t_hours) const override {
        return fn_(p, t_hours);
    }

private:
    Fn fn_;
};

} // namespace romnav

#endif
