#ifndef ROMNAV_GRID_HPP
#define ROMNAV_GRID_HPP

#include <Eigen/Core>
#include <array>

#include "romnav/errors.hpp"

namespace romnav {

/// Uniform rectilinear 3-D grid. Positions are in km. Linear node order is
/// x fastest, then y, then z; this order also fixes the on-disk layout of
/// every field file.
struct Grid3 {
    Eigen::Vector3d origin{0, 0, 0};    // km
    Eigen::Vector3d spacing{1, 1, 1};   // km, all > 0
    std::array<Eigen::Index, 3> dims{2, 2, 2};  // nx, ny, nz, all >= 2

    Grid3() = default;
    Grid3(const Eigen::Vector3d& origin_, const Eigen::Vector3d& spacing_,
          std::array<Eigen::Index, 3> dims_)
        : origin(origin_), spacing(spacing_), dims(dims_) {
        validate();
    }

    void validate() const {
        for (int a = 0; a < 3; ++a) {
            if (!(spacing[a] > 0.0))
                throw DimensionError("Grid3: spacing must be strictly positive");
            if (dims[a] < 2)
                throw DimensionError("Grid3: each dimension needs at least 2 points");
        }
        const double total = static_cast<double>(dims[0]) * static_cast<double>(dims[1]) *
                             static_cast<double>(dims[2]);
        if (total > 9.0e15)
            throw DimensionError("Grid3: point count overflows the index type");
    }

    Eigen::Index num_points() const { return dims[0] * dims[1] * dims[2]; }

    Eigen::Index index(Eigen::Index i, Eigen::Index j, Eigen::Index k) const {
        return i + dims[0] * (j + dims[1] * k);
    }

    Eigen::Vector3d node(Eigen::Index i, Eigen::Index j, Eigen::Index k) const {
        return origin + Eigen::Vector3d(i * spacing[0], j * spacing[1], k * spacing[2]);
    }

    Eigen::Vector3d box_min() const { return origin; }
    Eigen::Vector3d box_max() const {
        return origin + Eigen::Vector3d((dims[0] - 1) * spacing[0],
                                        (dims[1] - 1) * spacing[1],
                                        (dims[2] - 1) * spacing[2]);
    }

    bool contains(const Eigen::Vector3d& p) const {
        const Eigen::Vector3d lo = box_min(), hi = box_max();
        return p[0] >= lo[0] && p[0] <= hi[0] && p[1] >= lo[1] && p[1] <= hi[1] &&
               p[2] >= lo[2] && p[2] <= hi[2];
    }

    bool strictly_inside(const Eigen::Vector3d& p) const {
        const Eigen::Vector3d lo = box_min(), hi = box_max();
        return p[0] > lo[0] && p[0] < hi[0] && p[1] > lo[1] && p[1] < hi[1] &&
               p[2] > lo[2] && p[2] < hi[2];
    }

    friend bool operator==(const Grid3& a, const Grid3& b) {
        return a.origin == b.origin && a.spacing == b.spacing && a.dims == b.dims;
    }
    friend bool operator!=(const Grid3& a, const Grid3& b) { return !(a == b); }
};

} // namespace romnav

#endif
