#ifndef ROMNAV_FIELD_HPP
#define ROMNAV_FIELD_HPP

#include <Eigen/Core>
#include <vector>

#include "romnav/grid.hpp"

namespace romnav {

/// Three-component velocity samples on a Grid3, one column per node in the
/// grid's linear order. Velocities are in m/s.
class VectorField3 {
public:
    VectorField3() = default;

    /// Zero field on the given grid.
    explicit VectorField3(const Grid3& grid)
        : grid_(grid), samples_(Eigen::Matrix3Xd::Zero(3, grid.num_points())) {}

    VectorField3(const Grid3& grid, Eigen::Matrix3Xd samples)
        : grid_(grid), samples_(std::move(samples)) {
        if (samples_.cols() != grid_.num_points())
            throw DimensionError("VectorField3: sample count does not match grid");
    }

    const Grid3& grid() const { return grid_; }
    Eigen::Matrix3Xd& samples() { return samples_; }
    const Eigen::Matrix3Xd& samples() const { return samples_; }

    Eigen::Vector3d at(Eigen::Index i, Eigen::Index j, Eigen::Index k) const {
        return samples_.col(grid_.index(i, j, k));
    }
    void set(Eigen::Index i, Eigen::Index j, Eigen::Index k, const Eigen::Vector3d& v) {
        samples_.col(grid_.index(i, j, k)) = v;
    }

    bool all_finite() const { return samples_.allFinite(); }

    // in-place field arithmetic, used heavily by the decomposition
    VectorField3& operator+=(const VectorField3& o) {
        require_same_grid(o);
        samples_ += o.samples_;
        return *this;
    }
    VectorField3& operator-=(const VectorField3& o) {
        require_same_grid(o);
        samples_ -= o.samples_;
        return *this;
    }
    VectorField3& operator*=(double s) {
        samples_ *= s;
        return *this;
    }
    void axpy(double alpha, const VectorField3& o) {
        require_same_grid(o);
        samples_ += alpha * o.samples_;
    }

    void require_same_grid(const VectorField3& o) const {
        if (grid_ != o.grid_) throw DimensionError("VectorField3: grid mismatch");
    }

private:
    Grid3 grid_;
    Eigen::Matrix3Xd samples_;
};

/// One scalar per node; holds divergence and similar diagnostics.
class ScalarField3 {
public:
    ScalarField3() = default;
    explicit ScalarField3(const Grid3& grid)
        : grid_(grid), samples_(Eigen::VectorXd::Zero(grid.num_points())) {}
    ScalarField3(const Grid3& grid, Eigen::VectorXd samples)
        : grid_(grid), samples_(std::move(samples)) {
        if (samples_.size() != grid_.num_points())
            throw DimensionError("ScalarField3: sample count does not match grid");
    }

    const Grid3& grid() const { return grid_; }
    Eigen::VectorXd& samples() { return samples_; }
    const Eigen::VectorXd& samples() const { return samples_; }

    double at(Eigen::Index i, Eigen::Index j, Eigen::Index k) const {
        return samples_[grid_.index(i, j, k)];
    }

private:
    Grid3 grid_;
    Eigen::VectorXd samples_;
};

/// Trapezoidal quadrature weight of each node: product over axes of 1/2 at
/// the ends and 1 inside, times the cell volume dx*dy*dz.
Eigen::VectorXd quadrature_weights(const Grid3& grid);

/// L2 inner product over the domain, integral of f.g dV by trapezoidal
/// quadrature. Symmetric and bilinear; throws DimensionError on grid mismatch.
double inner_product(const VectorField3& f, const VectorField3& g);

/// Trilinear interpolation at p (km). Exact at grid nodes; throws
/// OutOfDomainError when p leaves the bounding box.
Eigen::Vector3d sample(const VectorField3& f, const Eigen::Vector3d& p);

/// Per-node velocity gradient; entry (i, j) of each matrix is df_i/dx_j.
/// Central second-order differences inside, one-sided first-order on faces.
std::vector<Eigen::Matrix3d> gradient_op(const VectorField3& f);

/// Componentwise 7-point Laplacian; boundary nodes use one-sided second
/// differences. Requires at least 3 points per axis.
VectorField3 laplacian_op(const VectorField3& f);

/// Pointwise advection (a . grad) b.
VectorField3 advect(const VectorField3& a, const VectorField3& b);

/// Central-difference divergence (one-sided on faces); diagnostic for how
/// solenoidal the snapshots and modes are.
ScalarField3 divergence(const VectorField3& f);

/// Flux of f through the domain boundary, integral of f.n dS by trapezoidal
/// quadrature on each face. The analysis that drops the pressure projection
/// assumes this is zero; gridded wind data does not satisfy that, so the
/// magnitude is reported as a diagnostic instead of being enforced.
double boundary_flux(const VectorField3& f);

} // namespace romnav

#endif
