#include "romnav/field.hpp"

#include <cmath>
#include <string>

namespace romnav {

namespace {

// neighbor stride per axis in the linear node order (x fastest)
std::array<Eigen::Index, 3> axis_strides(const Grid3& g) {
    return {1, g.dims[0], g.dims[0] * g.dims[1]};
}

// d/dx_axis of all three components at linear node p with axis index i:
// central inside, one-sided first order on the faces
inline Eigen::Vector3d first_derivative(const Eigen::Matrix3Xd& s, Eigen::Index p,
                                        Eigen::Index i, Eigen::Index n,
                                        Eigen::Index stride, double h) {
    if (i == 0) return (s.col(p + stride) - s.col(p)) / h;
    if (i == n - 1) return (s.col(p) - s.col(p - stride)) / h;
    return (s.col(p + stride) - s.col(p - stride)) / (2.0 * h);
}

// one-dimensional second difference; shifted stencil on the faces
inline Eigen::Vector3d second_derivative(const Eigen::Matrix3Xd& s, Eigen::Index p,
                                         Eigen::Index i, Eigen::Index n,
                                         Eigen::Index stride, double h) {
    const double h2 = h * h;
    if (i == 0)
        return (s.col(p) - 2.0 * s.col(p + stride) + s.col(p + 2 * stride)) / h2;
    if (i == n - 1)
        return (s.col(p) - 2.0 * s.col(p - stride) + s.col(p - 2 * stride)) / h2;
    return (s.col(p + stride) - 2.0 * s.col(p) + s.col(p - stride)) / h2;
}

} // namespace

Eigen::VectorXd quadrature_weights(const Grid3& grid) {
    const double cell = grid.spacing[0] * grid.spacing[1] * grid.spacing[2];
    Eigen::VectorXd w(grid.num_points());
    for (Eigen::Index k = 0; k < grid.dims[2]; ++k) {
        const double wk = (k == 0 || k == grid.dims[2] - 1) ? 0.5 : 1.0;
        for (Eigen::Index j = 0; j < grid.dims[1]; ++j) {
            const double wj = (j == 0 || j == grid.dims[1] - 1) ? 0.5 : 1.0;
            for (Eigen::Index i = 0; i < grid.dims[0]; ++i) {
                const double wi = (i == 0 || i == grid.dims[0] - 1) ? 0.5 : 1.0;
                w[grid.index(i, j, k)] = wi * wj * wk * cell;
            }
        }
    }
    return w;
}

double inner_product(const VectorField3& f, const VectorField3& g) {
    f.require_same_grid(g);
    const Eigen::VectorXd w = quadrature_weights(f.grid());
    const Eigen::ArrayXd dots =
        (f.samples().array() * g.samples().array()).colwise().sum().transpose();
    return (dots * w.array()).sum();
}

Eigen::Vector3d sample(const VectorField3& f, const Eigen::Vector3d& p) {
    const Grid3& g = f.grid();
    if (!g.contains(p))
        throw OutOfDomainError("sample: position outside grid bounding box at (" +
                                   std::to_string(p[0]) + ", " + std::to_string(p[1]) +
                                   ", " + std::to_string(p[2]) + ") km",
                               p[0], p[1], p[2]);

    Eigen::Index idx[3];
    double frac[3];
    for (int a = 0; a < 3; ++a) {
        double u = (p[a] - g.origin[a]) / g.spacing[a];
        // node coordinates are rarely exactly representable; snap so that
        // sampling at a node returns the stored value bit-for-bit
        const double r = std::round(u);
        if (std::abs(u - r) <= 1e-9) u = r;
        Eigen::Index i = static_cast<Eigen::Index>(std::floor(u));
        if (i < 0) i = 0;
        if (i > g.dims[a] - 2) i = g.dims[a] - 2;  // top face belongs to the last cell
        idx[a] = i;
        frac[a] = u - static_cast<double>(i);
    }

    Eigen::Vector3d out = Eigen::Vector3d::Zero();
    for (int dk = 0; dk < 2; ++dk)
        for (int dj = 0; dj < 2; ++dj)
            for (int di = 0; di < 2; ++di) {
                const double w = (di ? frac[0] : 1.0 - frac[0]) *
                                 (dj ? frac[1] : 1.0 - frac[1]) *
                                 (dk ? frac[2] : 1.0 - frac[2]);
                if (w != 0.0)
                    out += w * f.samples().col(g.index(idx[0] + di, idx[1] + dj, idx[2] + dk));
            }
    return out;
}

std::vector<Eigen::Matrix3d> gradient_op(const VectorField3& f) {
    const Grid3& g = f.grid();
    const auto stride = axis_strides(g);
    const Eigen::Matrix3Xd& s = f.samples();

    std::vector<Eigen::Matrix3d> grad(static_cast<std::size_t>(g.num_points()));
    for (Eigen::Index k = 0; k < g.dims[2]; ++k)
        for (Eigen::Index j = 0; j < g.dims[1]; ++j)
            for (Eigen::Index i = 0; i < g.dims[0]; ++i) {
                const Eigen::Index p = g.index(i, j, k);
                Eigen::Matrix3d& J = grad[static_cast<std::size_t>(p)];
                J.col(0) = first_derivative(s, p, i, g.dims[0], stride[0], g.spacing[0]);
                J.col(1) = first_derivative(s, p, j, g.dims[1], stride[1], g.spacing[1]);
                J.col(2) = first_derivative(s, p, k, g.dims[2], stride[2], g.spacing[2]);
            }
    return grad;
}

VectorField3 laplacian_op(const VectorField3& f) {
    const Grid3& g = f.grid();
    for (int a = 0; a < 3; ++a)
        if (g.dims[a] < 3)
            throw DimensionError("laplacian_op: needs at least 3 points per axis");

    const auto stride = axis_strides(g);
    const Eigen::Matrix3Xd& s = f.samples();
    VectorField3 out(g);
    for (Eigen::Index k = 0; k < g.dims[2]; ++k)
        for (Eigen::Index j = 0; j < g.dims[1]; ++j)
            for (Eigen::Index i = 0; i < g.dims[0]; ++i) {
                const Eigen::Index p = g.index(i, j, k);
                out.samples().col(p) =
                    second_derivative(s, p, i, g.dims[0], stride[0], g.spacing[0]) +
                    second_derivative(s, p, j, g.dims[1], stride[1], g.spacing[1]) +
                    second_derivative(s, p, k, g.dims[2], stride[2], g.spacing[2]);
            }
    return out;
}

VectorField3 advect(const VectorField3& a, const VectorField3& b) {
    a.require_same_grid(b);
    const Grid3& g = a.grid();
    const auto stride = axis_strides(g);
    const Eigen::Matrix3Xd& sb = b.samples();

    VectorField3 out(g);
    for (Eigen::Index k = 0; k < g.dims[2]; ++k)
        for (Eigen::Index j = 0; j < g.dims[1]; ++j)
            for (Eigen::Index i = 0; i < g.dims[0]; ++i) {
                const Eigen::Index p = g.index(i, j, k);
                const Eigen::Vector3d va = a.samples().col(p);
                out.samples().col(p) =
                    va[0] * first_derivative(sb, p, i, g.dims[0], stride[0], g.spacing[0]) +
                    va[1] * first_derivative(sb, p, j, g.dims[1], stride[1], g.spacing[1]) +
                    va[2] * first_derivative(sb, p, k, g.dims[2], stride[2], g.spacing[2]);
            }
    return out;
}

ScalarField3 divergence(const VectorField3& f) {
    const Grid3& g = f.grid();
    const auto stride = axis_strides(g);
    const Eigen::Matrix3Xd& s = f.samples();

    ScalarField3 out(g);
    for (Eigen::Index k = 0; k < g.dims[2]; ++k)
        for (Eigen::Index j = 0; j < g.dims[1]; ++j)
            for (Eigen::Index i = 0; i < g.dims[0]; ++i) {
                const Eigen::Index p = g.index(i, j, k);
                out.samples()[p] =
                    first_derivative(s, p, i, g.dims[0], stride[0], g.spacing[0])[0] +
                    first_derivative(s, p, j, g.dims[1], stride[1], g.spacing[1])[1] +
                    first_derivative(s, p, k, g.dims[2], stride[2], g.spacing[2])[2];
            }
    return out;
}

double boundary_flux(const VectorField3& f) {
    const Grid3& g = f.grid();

    // trapezoid weight along one axis of a face
    auto line_w = [](Eigen::Index i, Eigen::Index n) {
        return (i == 0 || i == n - 1) ? 0.5 : 1.0;
    };

    double flux = 0.0;
    // faces normal to each axis; normal component is f[axis], sign -1 at the
    // low face and +1 at the high face
    for (int axis = 0; axis < 3; ++axis) {
        const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
        const double dS = g.spacing[a1] * g.spacing[a2];
        for (int side = 0; side < 2; ++side) {
            const Eigen::Index slab = side == 0 ? 0 : g.dims[axis] - 1;
            const double sign = side == 0 ? -1.0 : 1.0;
            for (Eigen::Index j2 = 0; j2 < g.dims[a2]; ++j2)
                for (Eigen::Index j1 = 0; j1 < g.dims[a1]; ++j1) {
                    Eigen::Index ijk[3];
                    ijk[axis] = slab;
                    ijk[a1] = j1;
                    ijk[a2] = j2;
                    const double w = line_w(j1, g.dims[a1]) * line_w(j2, g.dims[a2]) * dS;
                    flux += sign * w *
                            f.samples()(axis, g.index(ijk[0], ijk[1], ijk[2]));
                }
        }
    }
    return flux;
}

} // namespace romnav
