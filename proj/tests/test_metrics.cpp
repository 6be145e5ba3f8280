#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "romnav/metrics.hpp"
#include "test_helpers.hpp"

using namespace romnav;
using namespace romnav::test;

namespace {

EpisodeLog log_from_positions(const std::vector<Eigen::Vector3d>& positions,
                              const Eigen::Vector3d& x_ref) {
    EpisodeLog log;
    log.x_ref = x_ref;
    log.station.center = x_ref.head<2>();
    log.station.radius_km = 50.0;
    log.sample_minutes = 10.0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        EpisodeRecord r;
        r.t_hours = static_cast<double>(i) / 6.0;
        r.position = positions[i];
        r.a_hat = Eigen::VectorXd::Zero(1);
        log.records.push_back(r);
    }
    return log;
}

} // namespace

TEST_CASE("final_distance: center, offset, 3-4-5 triangle") {
    EpisodeLog at = log_from_positions({{0, 0, 20}}, {0, 0, 20});
    CHECK(final_distance(at) == 0.0);

    EpisodeLog east = log_from_positions({{0, 0, 20}, {3, 0, 18}}, {0, 0, 20});
    CHECK(final_distance(east) == doctest::Approx(3.0));

    EpisodeLog pyth = log_from_positions({{0, 0, 20}, {30, 40, 25}}, {0, 0, 20});
    CHECK(final_distance(pyth) == doctest::Approx(50.0));

    EpisodeLog empty;
    CHECK_THROWS_AS(final_distance(empty), UndefinedMetricError);
}

TEST_CASE("mean_alignment: aligned, opposed, orthogonal, scale-free") {
    // eastward motion of 6 km per 10-min step = 10 m/s
    EpisodeLog log = log_from_positions({{0, 0, 20}, {6, 0, 20}, {12, 0, 20}}, {0, 0, 20});
    log.records[0].predicted_wind = {10, 0, 0};
    log.records[1].predicted_wind = {10, 0, 0};
    CHECK(mean_alignment(log) == doctest::Approx(1.0).epsilon(1e-12));

    log.records[0].predicted_wind = {-4, 0, 0};
    log.records[1].predicted_wind = {-4, 0, 0};
    CHECK(mean_alignment(log) == doctest::Approx(-1.0).epsilon(1e-12));

    log.records[0].predicted_wind = {0, 2, 0};
    log.records[1].predicted_wind = {0, -7, 0};
    CHECK(mean_alignment(log) == doctest::Approx(0.0).epsilon(1e-12));

    // cosine is invariant under positive rescaling of the prediction
    Rng rng(4);
    EpisodeLog wander = log_from_positions(
        {{0, 0, 20}, {3, 2, 20}, {5, -1, 21}, {9, 1, 20}}, {0, 0, 20});
    for (auto& r : wander.records)
        r.predicted_wind = {5.0 * rng.uniform() - 2.0, 5.0 * rng.uniform() - 2.0,
                            rng.uniform() - 0.5};
    const double base = mean_alignment(wander);
    for (auto& r : wander.records) r.predicted_wind *= 37.5;
    CHECK(mean_alignment(wander) == doctest::Approx(base).epsilon(1e-12));

    // degenerate everywhere: undefined
    EpisodeLog frozen = log_from_positions({{1, 1, 20}, {1, 1, 20}}, {0, 0, 20});
    frozen.records[0].predicted_wind = {4, 0, 0};
    CHECK_THROWS_AS(mean_alignment(frozen), UndefinedMetricError);
}

TEST_CASE("control_rms: zero, saturated, mixed, permutation-invariant") {
    EpisodeLog log = log_from_positions(
        {{0, 0, 20}, {0, 0, 20}, {0, 0, 20}, {0, 0, 20}, {0, 0, 20}}, {0, 0, 20});
    CHECK(control_rms(log) == 0.0);

    for (std::size_t i = 0; i + 1 < log.records.size(); ++i) log.records[i].u_z = 1.0;
    CHECK(control_rms(log) == doctest::Approx(1.0));

    // half the steps at +-1, half at 0 -> sqrt(0.5)
    log.records[0].u_z = 1.0;
    log.records[1].u_z = -1.0;
    log.records[2].u_z = 0.0;
    log.records[3].u_z = 0.0;
    CHECK(control_rms(log) == doctest::Approx(std::sqrt(0.5)));

    std::swap(log.records[0].u_z, log.records[3].u_z);
    CHECK(control_rms(log) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("time_in_station: counts records inside the radius") {
    EpisodeLog log = log_from_positions(
        {{0, 0, 20}, {49, 0, 20}, {51, 0, 20}, {10, 48, 20}}, {0, 0, 20});
    CHECK(time_in_station(log) == doctest::Approx(0.75));
}

TEST_CASE("field_rmse: identical, uniform offset, magnitude, metric axioms") {
    Grid3 g = unit_grid(5);
    Rng rng(9);
    VectorField3 a = random_field(g, rng), b = random_field(g, rng),
                 c = random_field(g, rng);

    CHECK(field_rmse(a, a) == 0.0);

    VectorField3 shifted = a;
    for (Eigen::Index p = 0; p < g.num_points(); ++p)
        shifted.samples()(0, p) += 1.0;
    CHECK(field_rmse(a, shifted) == doctest::Approx(1.0).epsilon(1e-12));

    VectorField3 five = constant_field(g, {3, 4, 0});
    CHECK(field_rmse(five, VectorField3(g)) == doctest::Approx(5.0).epsilon(1e-12));

    // symmetry and the triangle inequality on random triples
    CHECK(field_rmse(a, b) == field_rmse(b, a));
    CHECK(field_rmse(a, c) <= field_rmse(a, b) + field_rmse(b, c) + 1e-12);
    CHECK(field_rmse(a, b) > 0.0);
}
