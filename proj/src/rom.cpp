#include "romnav/rom.hpp"

#include <cmath>
#include <cstdio>

namespace romnav {

void RomModel::validate() const {
    if (c.size() != n || L.rows() != n || L.cols() != n ||
        static_cast<int>(Q.size()) != n)
        throw DimensionError("RomModel: tensor shapes do not match n");
    for (const auto& Qk : Q)
        if (Qk.rows() != n || Qk.cols() != n)
            throw DimensionError("RomModel: quadratic tensor shape mismatch");
    bool finite = c.allFinite() && L.allFinite();
    for (const auto& Qk : Q) finite = finite && Qk.allFinite();
    if (!finite) throw DimensionError("RomModel: non-finite tensor entries");
}

std::string basis_fingerprint(const PodBasis& basis) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "n=%d;dims=%ld,%ld,%ld;lambda1=%.17g",
                  basis.n_modes(), static_cast<long>(basis.grid.dims[0]),
                  static_cast<long>(basis.grid.dims[1]),
                  static_cast<long>(basis.grid.dims[2]),
                  basis.n_modes() > 0 ? basis.eigenvalues[0] : 0.0);
    return buf;
}

namespace {

// Projection workspace: modes flattened with the quadrature weight applied,
// so <field, phi_k> for all k is one matrix-vector product.
struct Projector {
    Eigen::MatrixXd weighted_modes;  // 3N x n

    Projector(const PodBasis& basis) {
        const Eigen::Index npts = basis.grid.num_points();
        const Eigen::VectorXd w = quadrature_weights(basis.grid);
        weighted_modes.resize(3 * npts, basis.n_modes());
        for (int k = 0; k < basis.n_modes(); ++k) {
            Eigen::Matrix3Xd s = basis.modes[static_cast<std::size_t>(k)].samples();
            s.array().rowwise() *= w.transpose().array();
            weighted_modes.col(k) = Eigen::Map<const Eigen::VectorXd>(s.data(), 3 * npts);
        }
    }

    Eigen::VectorXd onto_modes(const VectorField3& f) const {
        const Eigen::Map<const Eigen::VectorXd> flat(f.samples().data(),
                                                     f.samples().size());
        return weighted_modes.transpose() * flat;
    }
};

} // namespace

RomModel assemble_rom(const PodBasis& basis, double nu) {
    if (basis.n_modes() < 1) throw DegenerateBasisError("assemble_rom: empty basis");
    const int n = basis.n_modes();
    const Projector proj(basis);

    RomModel model;
    model.n = n;
    model.nu = nu;
    model.basis_id = basis_fingerprint(basis);

    // constant term from the mean flow
    {
        VectorField3 rhs = laplacian_op(basis.mean);
        rhs *= nu;
        rhs -= advect(basis.mean, basis.mean);
        model.c = proj.onto_modes(rhs);
    }

    // linear term: viscous diffusion of each mode plus both mean couplings
    model.L.resize(n, n);
    for (int i = 0; i < n; ++i) {
        const VectorField3& phi = basis.modes[static_cast<std::size_t>(i)];
        VectorField3 f = laplacian_op(phi);
        f *= nu;
        f -= advect(basis.mean, phi);
        f -= advect(phi, basis.mean);
        model.L.col(i) = proj.onto_modes(f);
    }

    // quadratic term, advection sign folded in: Q_k(i,j) = -<(phi_j.grad)phi_i, phi_k>
    model.Q.assign(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const VectorField3 adv = advect(basis.modes[static_cast<std::size_t>(j)],
                                            basis.modes[static_cast<std::size_t>(i)]);
            const Eigen::VectorXd q = proj.onto_modes(adv);
            for (int k = 0; k < n; ++k) model.Q[static_cast<std::size_t>(k)](i, j) = -q[k];
        }

    model.validate();
    return model;
}

Eigen::VectorXd rom_rhs(const RomModel& model, const Eigen::VectorXd& a) {
    if (a.size() != model.n) throw DimensionError("rom_rhs: coefficient length mismatch");
    Eigen::VectorXd dadt = model.c + model.L * a;
    for (int k = 0; k < model.n; ++k)
        dadt[k] += a.dot(model.Q[static_cast<std::size_t>(k)] * a);
    return dadt;
}

Eigen::MatrixXd rom_jacobian(const RomModel& model, const Eigen::VectorXd& a) {
    if (a.size() != model.n)
        throw DimensionError("rom_jacobian: coefficient length mismatch");
    Eigen::MatrixXd J = model.L;
    for (int k = 0; k < model.n; ++k) {
        const Eigen::MatrixXd& Qk = model.Q[static_cast<std::size_t>(k)];
        J.row(k) += (Qk * a + Qk.transpose() * a).transpose();
    }
    return J;
}

RomState integrate_rom(const RomModel& model, const Eigen::VectorXd& a0, double t0,
                       double t1, double dt_max) {
    if (a0.size() != model.n)
        throw DimensionError("integrate_rom: coefficient length mismatch");
    if (t1 < t0) throw DimensionError("integrate_rom: t1 must be >= t0");
    if (!(dt_max > 0.0)) throw DimensionError("integrate_rom: dt_max must be positive");

    const double span = t1 - t0;
    const auto n_full = span > 0.0
                            ? static_cast<long>(std::floor(span / dt_max + 1e-12))
                            : 0L;
    const double remainder = span - static_cast<double>(n_full) * dt_max;
    const bool has_tail = remainder > 1e-12 * dt_max;
    const long n_steps = n_full + (has_tail ? 1 : 0);

    Eigen::VectorXd a = a0;
    double t = t0;
    for (long s = 0; s < n_steps; ++s) {
        // full steps of dt_max, with the final step shortened to land on t1
        const double t_next = (s + 1 == n_steps) ? t1 : t0 + dt_max * (s + 1);
        const double h = t_next - t;

        const Eigen::VectorXd k1 = rom_rhs(model, a);
        const Eigen::VectorXd k2 = rom_rhs(model, a + 0.5 * h * k1);
        const Eigen::VectorXd k3 = rom_rhs(model, a + 0.5 * h * k2);
        const Eigen::VectorXd k4 = rom_rhs(model, a + h * k3);
        a += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t = t_next;

        if (!a.allFinite())
            throw BlowUpError("integrate_rom: state became non-finite at t = " +
                                  std::to_string(t) + " h",
                              t);
    }
    return RomState{std::move(a), t1};
}

} // namespace romnav
