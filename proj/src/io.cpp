#include "romnav/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace romnav {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void expect_token(std::istream& in, const std::string& want, const char* what) {
    std::string got;
    if (!(in >> got) || got != want)
        throw IoError(std::string(what) + ": expected '" + want + "', got '" + got + "'");
}

double read_double(std::istream& in, const char* what) {
    double v;
    if (!(in >> v)) throw IoError(std::string(what) + ": malformed number");
    return v;
}

long read_long(std::istream& in, const char* what) {
    long v;
    if (!(in >> v)) throw IoError(std::string(what) + ": malformed integer");
    return v;
}

} // namespace

void write_vf3(std::ostream& out, const VectorField3& field) {
    const Grid3& g = field.grid();
    out << "VF3 1 " << g.dims[0] << ' ' << g.dims[1] << ' ' << g.dims[2];
    for (int a = 0; a < 3; ++a) out << ' ' << fmt_double(g.origin[a]);
    for (int a = 0; a < 3; ++a) out << ' ' << fmt_double(g.spacing[a]);
    out << '\n';
    for (Eigen::Index p = 0; p < g.num_points(); ++p)
        out << fmt_double(field.samples()(0, p)) << ' ' << fmt_double(field.samples()(1, p))
            << ' ' << fmt_double(field.samples()(2, p)) << '\n';
}

VectorField3 read_vf3(std::istream& in) {
    expect_token(in, "VF3", "VF3 header");
    if (read_long(in, "VF3 version") != 1) throw IoError("VF3: unsupported version");

    Grid3 g;
    for (int a = 0; a < 3; ++a) g.dims[a] = read_long(in, "VF3 dims");
    for (int a = 0; a < 3; ++a) g.origin[a] = read_double(in, "VF3 origin");
    for (int a = 0; a < 3; ++a) g.spacing[a] = read_double(in, "VF3 spacing");
    g.validate();

    Eigen::Matrix3Xd samples(3, g.num_points());
    for (Eigen::Index p = 0; p < g.num_points(); ++p)
        for (int c = 0; c < 3; ++c) samples(c, p) = read_double(in, "VF3 sample");
    if (!samples.allFinite()) throw IoError("VF3: non-finite samples");
    return VectorField3(g, std::move(samples));
}

void save_vf3(const std::string& path, const VectorField3& field) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    write_vf3(out, field);
    if (!out) throw IoError("write failed: " + path);
}

VectorField3 load_vf3(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    return read_vf3(in);
}

void write_podb(std::ostream& out, const PodBasis& basis, int m_snapshots) {
    const double captured =
        basis.total_energy > 0.0 ? basis.eigenvalues.sum() / basis.total_energy : 1.0;
    out << "PODB 1 " << basis.n_modes() << ' ' << m_snapshots << ' ' << fmt_double(captured)
        << '\n';
    write_vf3(out, basis.mean);
    for (const auto& mode : basis.modes) write_vf3(out, mode);
    for (int i = 0; i < basis.n_modes(); ++i)
        out << (i ? " " : "") << fmt_double(basis.eigenvalues[i]);
    out << '\n';
}

PodBasis read_podb(std::istream& in) {
    expect_token(in, "PODB", "PODB header");
    if (read_long(in, "PODB version") != 1) throw IoError("PODB: unsupported version");
    const long n = read_long(in, "PODB mode count");
    (void)read_long(in, "PODB snapshot count");
    const double captured = read_double(in, "PODB energy fraction");
    if (n < 1) throw IoError("PODB: needs at least one mode");

    PodBasis basis;
    basis.mean = read_vf3(in);
    basis.grid = basis.mean.grid();
    for (long i = 0; i < n; ++i) {
        VectorField3 mode = read_vf3(in);
        if (mode.grid() != basis.grid) throw IoError("PODB: mode grid mismatch");
        basis.modes.push_back(std::move(mode));
    }
    basis.eigenvalues.resize(n);
    for (long i = 0; i < n; ++i) basis.eigenvalues[i] = read_double(in, "PODB eigenvalue");
    basis.total_energy =
        captured > 0.0 ? basis.eigenvalues.sum() / captured : basis.eigenvalues.sum();
    return basis;
}

void save_podb(const std::string& path, const PodBasis& basis, int m_snapshots) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    write_podb(out, basis, m_snapshots);
    if (!out) throw IoError("write failed: " + path);
}

PodBasis load_podb(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    return read_podb(in);
}

void write_rom(std::ostream& out, const RomModel& model) {
    out << "ROM 1 " << model.n << ' ' << fmt_double(model.nu) << '\n';
    for (int i = 0; i < model.n; ++i)
        out << (i ? " " : "") << fmt_double(model.c[i]);
    out << '\n';
    auto write_matrix = [&](const Eigen::MatrixXd& M) {
        for (int r = 0; r < M.rows(); ++r) {
            for (int c = 0; c < M.cols(); ++c) out << (c ? " " : "") << fmt_double(M(r, c));
            out << '\n';
        }
    };
    write_matrix(model.L);
    for (const auto& Qk : model.Q) write_matrix(Qk);
}

RomModel read_rom(std::istream& in) {
    expect_token(in, "ROM", "ROM header");
    if (read_long(in, "ROM version") != 1) throw IoError("ROM: unsupported version");
    const long n = read_long(in, "ROM dimension");
    if (n < 1) throw IoError("ROM: dimension must be positive");

    RomModel model;
    model.n = static_cast<int>(n);
    model.nu = read_double(in, "ROM nu");
    model.c.resize(n);
    for (long i = 0; i < n; ++i) model.c[i] = read_double(in, "ROM c");
    model.L.resize(n, n);
    for (long r = 0; r < n; ++r)
        for (long c = 0; c < n; ++c) model.L(r, c) = read_double(in, "ROM L");
    model.Q.assign(static_cast<std::size_t>(n), Eigen::MatrixXd(n, n));
    for (long k = 0; k < n; ++k)
        for (long r = 0; r < n; ++r)
            for (long c = 0; c < n; ++c)
                model.Q[static_cast<std::size_t>(k)](r, c) = read_double(in, "ROM Q");
    model.validate();
    return model;
}

void save_rom(const std::string& path, const RomModel& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    write_rom(out, model);
    if (!out) throw IoError("write failed: " + path);
}

RomModel load_rom(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    return read_rom(in);
}

std::string episode_csv(const EpisodeLog& log) {
    std::ostringstream out;
    out << "t_hours,x_km,y_km,z_km,u_z_mps,innovation_norm,true_wx_mps,true_wy_mps,"
           "true_wz_mps,pred_wx_mps,pred_wy_mps,pred_wz_mps,clamped";
    for (int i = 0; i < log.n_modes; ++i) out << ",a_" << i;
    out << '\n';
    for (const auto& r : log.records) {
        out << fmt_double(r.t_hours) << ',' << fmt_double(r.position[0]) << ','
            << fmt_double(r.position[1]) << ',' << fmt_double(r.position[2]) << ','
            << fmt_double(r.u_z) << ',' << fmt_double(r.innovation_norm) << ','
            << fmt_double(r.true_wind[0]) << ',' << fmt_double(r.true_wind[1]) << ','
            << fmt_double(r.true_wind[2]) << ',' << fmt_double(r.predicted_wind[0]) << ','
            << fmt_double(r.predicted_wind[1]) << ',' << fmt_double(r.predicted_wind[2])
            << ',' << (r.clamped ? 1 : 0);
        for (int i = 0; i < log.n_modes; ++i) out << ',' << fmt_double(r.a_hat[i]);
        out << '\n';
    }
    return out.str();
}

std::string ekf_diagnostics_csv(const EpisodeLog& log) {
    std::ostringstream out;
    out << "t,innovation_norm,trace_P";
    for (int i = 0; i < log.n_modes; ++i) out << ",a_hat_" << i;
    out << '\n';
    for (const auto& r : log.records) {
        out << fmt_double(r.t_hours) << ',' << fmt_double(r.innovation_norm) << ','
            << fmt_double(r.trace_P);
        for (int i = 0; i < log.n_modes; ++i) out << ',' << fmt_double(r.a_hat[i]);
        out << '\n';
    }
    return out.str();
}

std::string metrics_json(const EpisodeMetrics& m) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"d_f_km\": " << fmt_double(m.d_f_km) << ",\n";
    out << "  \"gamma_bar\": " << fmt_double(m.gamma_bar) << ",\n";
    out << "  \"time_in_station_fraction\": " << fmt_double(m.time_in_station_fraction)
        << ",\n";
    out << "  \"u_rms_mps\": " << fmt_double(m.u_rms_mps) << "\n";
    out << "}\n";
    return out.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << contents;
    if (!out) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace romnav
