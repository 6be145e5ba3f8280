#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "romnav/io.hpp"
#include "test_helpers.hpp"

using namespace romnav;
using namespace romnav::test;

TEST_CASE("VF3: exact round trip of awkward values") {
    Grid3 g({-1.25, 3.1e-7, 15.0}, {0.125, 1.0 / 3.0, 0.7}, {3, 4, 5});
    Rng rng(12);
    VectorField3 f = random_field(g, rng, 17.3);
    f.samples()(0, 0) = 1.0 / 3.0;
    f.samples()(1, 0) = -2.2250738585072014e-308;  // smallest normal
    f.samples()(2, 0) = 0.1 + 0.2;                 // classic non-representable sum

    std::ostringstream out;
    write_vf3(out, f);
    std::istringstream in(out.str());
    VectorField3 back = read_vf3(in);

    CHECK(back.grid() == f.grid());
    CHECK((back.samples() - f.samples()).cwiseAbs().maxCoeff() == 0.0);

    // header shape and LF endings
    const std::string text = out.str();
    CHECK(text.rfind("VF3 1 3 4 5 ", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("VF3: malformed input raises IoError") {
    std::istringstream bad_magic("VF4 1 2 2 2 0 0 0 1 1 1\n");
    CHECK_THROWS_AS(read_vf3(bad_magic), IoError);

    std::istringstream bad_version("VF3 9 2 2 2 0 0 0 1 1 1\n");
    CHECK_THROWS_AS(read_vf3(bad_version), IoError);

    std::istringstream truncated("VF3 1 2 2 2 0 0 0 1 1 1\n0 0 0\n");
    CHECK_THROWS_AS(read_vf3(truncated), IoError);

    std::istringstream nan_sample(
        "VF3 1 2 2 2 0 0 0 1 1 1\n"
        "nan 0 0\n0 0 0\n0 0 0\n0 0 0\n0 0 0\n0 0 0\n0 0 0\n0 0 0\n");
    CHECK_THROWS_AS(read_vf3(nan_sample), IoError);
}

TEST_CASE("PODB: round trip preserves modes, eigenvalues, and the energy tail") {
    Grid3 g = unit_grid(5);
    Rng rng(31);
    SnapshotSet set;
    set.grid = g;
    for (int k = 0; k < 5; ++k) {
        set.snapshots.push_back(smooth_random_field(g, rng));
        set.timestamps.push_back(static_cast<double>(k));
    }
    PodBasis basis = pod_decompose(set, 0.9, 3);

    std::ostringstream out;
    write_podb(out, basis, static_cast<int>(set.size()));
    std::istringstream in(out.str());
    PodBasis back = read_podb(in);

    REQUIRE(back.n_modes() == basis.n_modes());
    CHECK((back.eigenvalues - basis.eigenvalues).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.mean.samples() - basis.mean.samples()).cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < basis.n_modes(); ++i)
        CHECK((back.modes[i].samples() - basis.modes[i].samples()).cwiseAbs().maxCoeff() ==
              0.0);
    // total energy rebuilt from the stored captured fraction
    CHECK(back.total_energy ==
          doctest::Approx(basis.total_energy).epsilon(1e-12));
}

TEST_CASE("ROM: round trip is bit exact and validates shape") {
    Grid3 g = unit_grid(5);
    Rng rng(47);
    SnapshotSet set;
    set.grid = g;
    for (int k = 0; k < 4; ++k) {
        set.snapshots.push_back(smooth_random_field(g, rng));
        set.timestamps.push_back(static_cast<double>(k));
    }
    PodBasis basis = pod_decompose(set, 1.0, 3);
    RomModel model = assemble_rom(basis, 3.7e-4);

    std::ostringstream out;
    write_rom(out, model);
    std::istringstream in(out.str());
    RomModel back = read_rom(in);

    CHECK(back.n == model.n);
    CHECK(back.nu == model.nu);
    CHECK((back.c - model.c).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.L - model.L).cwiseAbs().maxCoeff() == 0.0);
    for (int k = 0; k < model.n; ++k)
        CHECK((back.Q[static_cast<std::size_t>(k)] - model.Q[static_cast<std::size_t>(k)])
                  .cwiseAbs()
                  .maxCoeff() == 0.0);

    std::istringstream bad("ROM 1 0 0.1\n");
    CHECK_THROWS_AS(read_rom(bad), IoError);
}

TEST_CASE("episode and diagnostics CSV carry the declared columns") {
    EpisodeLog log;
    log.n_modes = 2;
    log.sample_minutes = 10.0;
    EpisodeRecord r;
    r.t_hours = 0.5;
    r.position = {1.5, -2.0, 20.25};
    r.u_z = -0.75;
    r.a_hat = Eigen::Vector2d(0.25, -1.0 / 3.0);
    r.innovation_norm = 0.125;
    r.trace_P = 42.5;
    r.true_wind = {5, 0, 0};
    r.predicted_wind = {4.5, 0.5, 0};
    r.clamped = true;
    log.records.push_back(r);

    const std::string csv = episode_csv(log);
    CHECK(csv.rfind("t_hours,x_km,y_km,z_km,u_z_mps,innovation_norm,", 0) == 0);
    CHECK(csv.find(",a_0,a_1\n") != std::string::npos);
    CHECK(csv.find("0.33333333333333331") != std::string::npos);  // 17-digit payload
    CHECK(csv.find(",1,") != std::string::npos);                  // clamp flag

    const std::string diag = ekf_diagnostics_csv(log);
    CHECK(diag.rfind("t,innovation_norm,trace_P,a_hat_0,a_hat_1\n", 0) == 0);
    CHECK(diag.find("42.5") != std::string::npos);

    const std::string mj = metrics_json(EpisodeMetrics{1.5, 0.93, 0.25, 3.0, 0.8});
    CHECK(mj.find("\"d_f_km\": 1.5") != std::string::npos);
    CHECK(mj.find("\"gamma_bar\": 0.93") != std::string::npos);
    CHECK(mj.find("runtime") == std::string::npos);
}
