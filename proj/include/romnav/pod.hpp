#ifndef ROMNAV_POD_HPP
#define ROMNAV_POD_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

#include "romnav/field.hpp"

namespace romnav {

/// Velocity snapshot ensemble on a shared grid; timestamps in hours.
struct SnapshotSet {
    Grid3 grid;
    std::vector<VectorField3> snapshots;
    std::vector<double> timestamps;

    std::size_t size() const { return snapshots.size(); }
    void validate() const;
};

/// Orthonormal spatial basis extracted from snapshot fluctuations, together
/// with the mean field and the energy spectrum. eigenvalues holds the kept
/// modes' energies, descending; total_energy sums the full pre-truncation
/// spectrum so truncation tails can be evaluated for any cut.
struct PodBasis {
    Grid3 grid;
    VectorField3 mean;
    std::vector<VectorField3> modes;
    Eigen::VectorXd eigenvalues;
    double total_energy = 0.0;

    int n_modes() const { return static_cast<int>(modes.size()); }
    /// Energy left above truncation n (0 <= n <= n_modes).
    double energy_tail(int n) const {
        return total_energy - eigenvalues.head(n).sum();
    }
};

/// Pointwise arithmetic mean of the snapshots.
VectorField3 compute_mean(const SnapshotSet& set);

/// Snapshot correlation matrix U_ij = (1/m) <u_i', u_j'> of the
/// mean-subtracted snapshots; symmetric PSD up to rounding.
Eigen::MatrixXd correlation_matrix(const SnapshotSet& set, const VectorField3& mean);

/// Solve the correlation eigenproblem about the given mean and build
/// orthonormal modes as linear combinations of the fluctuation snapshots.
/// Keeps the smallest mode count reaching energy_fraction of the total
/// energy, capped at max_modes; eigenvalues below 1e-12 of the largest are
/// treated as rank deficiency and dropped. Mode signs are fixed so the
/// largest-magnitude sample entry is positive, making results reproducible
/// across platforms.
PodBasis pod_decompose(const SnapshotSet& set, const VectorField3& mean,
                       double energy_fraction, int max_modes);

/// Same, about the snapshots' arithmetic mean (the training pipeline default).
PodBasis pod_decompose(const SnapshotSet& set, double energy_fraction, int max_modes);

/// Modal coefficients of f: a_i = <f - mean, phi_i>.
Eigen::VectorXd project(const PodBasis& basis, const VectorField3& f);

/// mean + sum a_i phi_i.
VectorField3 reconstruct(const PodBasis& basis, const Eigen::VectorXd& a);

} // namespace romnav

#endif
