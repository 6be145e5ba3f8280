#ifndef ROMNAV_ERRORS_HPP
#define ROMNAV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace romnav {

/// Mismatched grids, vector lengths, or matrix shapes.
class DimensionError : public std::runtime_error {
public:
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

/// A queried position lies outside the grid bounding box.
class OutOfDomainError : public std::runtime_error {
public:
    OutOfDomainError(const std::string& what, double x, double y, double z)
        : std::runtime_error(what), coordinate{x, y, z} {}
    double coordinate[3];
};

/// Snapshot set has no usable fluctuation energy.
class DegenerateBasisError : public std::runtime_error {
public:
    explicit DegenerateBasisError(const std::string& what) : std::runtime_error(what) {}
};

/// Time integration produced a non-finite state.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, double t) : std::runtime_error(what), time(t) {}
    double time;
};

/// A matrix required to be invertible is numerically singular.
class ConditioningError : public std::runtime_error {
public:
    explicit ConditioningError(const std::string& what) : std::runtime_error(what) {}
};

/// A metric has no defined value on the given log.
class UndefinedMetricError : public std::runtime_error {
public:
    explicit UndefinedMetricError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed configuration; carries the offending key or context.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// File could not be read, written, or parsed.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace romnav

#endif
