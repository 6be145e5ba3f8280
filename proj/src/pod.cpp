#include "romnav/pod.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace romnav {

void SnapshotSet::validate() const {
    if (snapshots.empty()) throw DimensionError("SnapshotSet: needs at least one snapshot");
    if (timestamps.size() != snapshots.size())
        throw DimensionError("SnapshotSet: one timestamp per snapshot required");
    for (const auto& s : snapshots)
        if (s.grid() != grid) throw DimensionError("SnapshotSet: snapshot grid mismatch");
    for (std::size_t k = 1; k < timestamps.size(); ++k)
        if (!(timestamps[k] > timestamps[k - 1]))
            throw DimensionError("SnapshotSet: timestamps must be strictly increasing");
}

VectorField3 compute_mean(const SnapshotSet& set) {
    set.validate();
    VectorField3 mean(set.grid);
    for (const auto& s : set.snapshots) mean += s;
    mean *= 1.0 / static_cast<double>(set.size());
    return mean;
}

Eigen::MatrixXd correlation_matrix(const SnapshotSet& set, const VectorField3& mean) {
    set.validate();
    if (mean.grid() != set.grid) throw DimensionError("correlation_matrix: mean grid mismatch");

    const auto m = static_cast<Eigen::Index>(set.size());
    std::vector<VectorField3> fluct;
    fluct.reserve(set.size());
    for (const auto& s : set.snapshots) {
        VectorField3 u = s;
        u -= mean;
        fluct.push_back(std::move(u));
    }

    Eigen::MatrixXd U(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = i; j < m; ++j) {
            const double v = inner_product(fluct[static_cast<std::size_t>(i)],
                                           fluct[static_cast<std::size_t>(j)]) /
                             static_cast<double>(m);
            U(i, j) = v;
            U(j, i) = v;
        }
    return U;
}

PodBasis pod_decompose(const SnapshotSet& set, double energy_fraction, int max_modes) {
    return pod_decompose(set, compute_mean(set), energy_fraction, max_modes);
}

PodBasis pod_decompose(const SnapshotSet& set, const VectorField3& mean,
                       double energy_fraction, int max_modes) {
    if (!(energy_fraction > 0.0 && energy_fraction <= 1.0))
        throw DimensionError("pod_decompose: energy_fraction must lie in (0, 1]");
    if (max_modes < 1) throw DimensionError("pod_decompose: max_modes must be >= 1");

    PodBasis basis;
    basis.grid = set.grid;
    basis.mean = mean;

    const auto m = static_cast<Eigen::Index>(set.size());
    std::vector<VectorField3> fluct;
    fluct.reserve(set.size());
    for (const auto& s : set.snapshots) {
        VectorField3 u = s;
        u -= basis.mean;
        fluct.push_back(std::move(u));
    }

    const Eigen::MatrixXd U = correlation_matrix(set, basis.mean);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(U);
    if (eig.info() != Eigen::Success)
        throw DegenerateBasisError("pod_decompose: eigensolver failed");

    // descending order; clamp the tiny negatives a PSD matrix can produce
    Eigen::VectorXd lambda = eig.eigenvalues().reverse();
    Eigen::MatrixXd vecs = eig.eigenvectors().rowwise().reverse();
    lambda = lambda.cwiseMax(0.0);

    basis.total_energy = lambda.sum();
    // rounding-level fluctuations (identical snapshots, constant wind) are as
    // degenerate as exact zeros; compare against the raw snapshot energy
    double snap_scale = 0.0;
    for (const auto& s : set.snapshots)
        snap_scale = std::max(snap_scale, inner_product(s, s));
    if (!(lambda[0] > 1e-24 * snap_scale))
        throw DegenerateBasisError(
            "pod_decompose: snapshots carry no fluctuation energy (constant field?)");

    // truncation: smallest n reaching energy_fraction, AND of the max_modes
    // cap and the rank cut
    const double rank_cut = 1e-12 * lambda[0];
    Eigen::Index n = 0;
    double captured = 0.0;
    for (Eigen::Index l = 0; l < m; ++l) {
        if (lambda[l] < rank_cut) break;
        if (n >= max_modes) break;
        ++n;
        captured += lambda[l];
        if (captured >= energy_fraction * basis.total_energy) break;
    }

    basis.eigenvalues = lambda.head(n);
    basis.modes.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index l = 0; l < n; ++l) {
        VectorField3 mode(set.grid);
        for (Eigen::Index k = 0; k < m; ++k)
            mode.axpy(vecs(k, l), fluct[static_cast<std::size_t>(k)]);
        const double norm = std::sqrt(inner_product(mode, mode));
        if (!(norm > 0.0))
            throw DegenerateBasisError("pod_decompose: zero mode for positive eigenvalue");
        mode *= 1.0 / norm;

        // sign convention: largest-magnitude sample entry positive
        Eigen::Index r, c;
        mode.samples().cwiseAbs().maxCoeff(&r, &c);
        if (mode.samples()(r, c) < 0.0) mode *= -1.0;

        basis.modes.push_back(std::move(mode));
    }
    return basis;
}

Eigen::VectorXd project(const PodBasis& basis, const VectorField3& f) {
    if (f.grid() != basis.grid) throw DimensionError("project: grid mismatch");
    VectorField3 fluct = f;
    fluct -= basis.mean;
    Eigen::VectorXd a(basis.n_modes());
    for (int i = 0; i < basis.n_modes(); ++i)
        a[i] = inner_product(fluct, basis.modes[static_cast<std::size_t>(i)]);
    return a;
}

VectorField3 reconstruct(const PodBasis& basis, const Eigen::VectorXd& a) {
    if (a.size() != basis.n_modes())
        throw DimensionError("reconstruct: coefficient length does not match mode count");
    VectorField3 f = basis.mean;
    for (int i = 0; i < basis.n_modes(); ++i)
        f.axpy(a[i], basis.modes[static_cast<std::size_t>(i)]);
    return f;
}

} // namespace romnav
