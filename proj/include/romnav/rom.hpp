#ifndef ROMNAV_ROM_HPP
#define ROMNAV_ROM_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

#include "romnav/pod.hpp"

namespace romnav {

/// Quadratic modal ODE  da_k/dt = c_k + L_k a + a^T Q_k a  obtained by
/// projecting the flow dynamics onto the POD modes. The viscous factor and
/// the advection sign are folded into L and Q so this compact form is the
/// whole model; time is in hours. Q_k need not be symmetric — only its
/// symmetric part affects the quadratic form.
struct RomModel {
    int n = 0;
    double nu = 0.0;
    Eigen::VectorXd c;                // constant forcing from the mean flow
    Eigen::MatrixXd L;                // row k multiplies a in equation k
    std::vector<Eigen::MatrixXd> Q;   // one n x n matrix per equation
    std::string basis_id;             // fingerprint of the basis used

    void validate() const;
};

/// Modal coefficients at a point in time (hours).
struct RomState {
    Eigen::VectorXd a;
    double t = 0.0;
};

/// Short deterministic description of a basis, stored in RomModel::basis_id
/// so a model/basis pair can be sanity-checked when loaded from disk.
std::string basis_fingerprint(const PodBasis& basis);

/// Galerkin projection of the advection and viscous terms onto the basis.
/// The mean flow contributes the constant term and extra linear couplings;
/// the pressure projection is dropped (its boundary flux is reported by
/// field::boundary_flux as a diagnostic instead).
RomModel assemble_rom(const PodBasis& basis, double nu);

/// Right-hand side of the modal ODE.
Eigen::VectorXd rom_rhs(const RomModel& model, const Eigen::VectorXd& a);

/// Analytic Jacobian: row k is L_k + a^T (Q_k + Q_k^T).
Eigen::MatrixXd rom_jacobian(const RomModel& model, const Eigen::VectorXd& a);

/// Classical RK4 with fixed step <= dt_max (the last step is shortened to
/// land on t1 exactly). Throws BlowUpError with the failure time if the
/// state leaves the finite range.
RomState integrate_rom(const RomModel& model, const Eigen::VectorXd& a0, double t0,
                       double t1, double dt_max);

} // namespace romnav

#endif
