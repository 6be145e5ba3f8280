#ifndef ROMNAV_IO_HPP
#define ROMNAV_IO_HPP

#include <iosfwd>
#include <string>

#include "romnav/metrics.hpp"
#include "romnav/pod.hpp"
#include "romnav/rom.hpp"
#include "romnav/sim.hpp"

namespace romnav {

/// Full-round-trip decimal rendering of a double (17 significant digits).
std::string fmt_double(double v);

/// --- VF3 v1 ------------------------------------------------------------
/// Header line `VF3 1 nx ny nz ox oy oz dx dy dz`, then nx*ny*nz lines of
/// `vx vy vz` in storage order (x fastest, then y, then z). ASCII, LF line
/// endings, 17 significant digits.
void write_vf3(std::ostream& out, const VectorField3& field);
VectorField3 read_vf3(std::istream& in);
void save_vf3(const std::string& path, const VectorField3& field);
VectorField3 load_vf3(const std::string& path);

/// --- PODB v1 -----------------------------------------------------------
/// Header `PODB 1 n m energy_fraction` (n kept modes, m training snapshots,
/// achieved captured-energy fraction), then the mean and each mode in VF3
/// framing, then one line of n eigenvalues. The loader rebuilds total_energy
/// from the kept eigenvalues and the stored fraction.
void write_podb(std::ostream& out, const PodBasis& basis, int m_snapshots);
PodBasis read_podb(std::istream& in);
void save_podb(const std::string& path, const PodBasis& basis, int m_snapshots);
PodBasis load_podb(const std::string& path);

/// --- ROM v1 ------------------------------------------------------------
/// Header `ROM 1 n nu`, then c on one line, the n rows of L, then the n rows
/// of each Q_k in order.
void write_rom(std::ostream& out, const RomModel& model);
RomModel read_rom(std::istream& in);
void save_rom(const std::string& path, const RomModel& model);
RomModel load_rom(const std::string& path);

/// --- episode outputs -----------------------------------------------------
/// Episode CSV: one row per record with a fixed header; coefficient columns
/// a_0..a_{n-1} come last.
std::string episode_csv(const EpisodeLog& log);

/// Per-step filter diagnostics CSV: t, innovation_norm, trace_P, a_hat...
std::string ekf_diagnostics_csv(const EpisodeLog& log);

/// Flat key-value metrics JSON (deterministic; excludes wall-clock runtime,
/// which is reported separately so reruns are byte-identical).
std::string metrics_json(const EpisodeMetrics& m);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

} // namespace romnav

#endif
