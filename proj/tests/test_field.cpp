#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "romnav/field.hpp"
#include "test_helpers.hpp"

using namespace romnav;
using namespace romnav::test;

namespace {
const Eigen::Vector3d ex{1, 0, 0};
const Eigen::Vector3d ey{0, 1, 0};
} // namespace

TEST_CASE("inner_product: constant fields integrate to the domain volume") {
    Grid3 g({0, 0, 0}, {0.5, 0.25, 2.0}, {5, 9, 4});
    const double volume = 2.0 * 2.0 * 6.0;
    VectorField3 f = constant_field(g, ex);
    CHECK(inner_product(f, f) == doctest::Approx(volume).epsilon(1e-13));

    VectorField3 gy = constant_field(g, ey);
    CHECK(inner_product(f, gy) == 0.0);
}

TEST_CASE("inner_product: quadrature matches the closed form of int x^2 dV") {
    Grid3 g = unit_grid(33);
    VectorField3 f = make_field(g, [](const Eigen::Vector3d& p) {
        return Eigen::Vector3d(p[0], 0, 0);
    });
    CHECK(inner_product(f, f) == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
}

TEST_CASE("inner_product: symmetry is exact and bilinearity holds to rounding") {
    Grid3 g({-1, 0, 2}, {0.3, 0.7, 0.4}, {6, 5, 7});
    Rng rng(11);
    VectorField3 f = random_field(g, rng), h = random_field(g, rng), w = random_field(g, rng);

    CHECK(inner_product(f, h) == inner_product(h, f));

    const double alpha = 2.731;
    VectorField3 af_plus_h = f;
    af_plus_h *= alpha;
    af_plus_h += h;
    const double lhs = inner_product(af_plus_h, w);
    const double rhs = alpha * inner_product(f, w) + inner_product(h, w);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
}

TEST_CASE("inner_product: grid mismatch raises a dimension error") {
    VectorField3 f = constant_field(unit_grid(3), ex);
    VectorField3 h = constant_field(unit_grid(4), ex);
    CHECK_THROWS_AS(inner_product(f, h), DimensionError);
}

TEST_CASE("sample: exact at every grid node") {
    Grid3 g({1, 2, 3}, {0.5, 0.3, 0.7}, {4, 5, 3});
    Rng rng(7);
    VectorField3 f = random_field(g, rng);
    for (Eigen::Index k = 0; k < g.dims[2]; ++k)
        for (Eigen::Index j = 0; j < g.dims[1]; ++j)
            for (Eigen::Index i = 0; i < g.dims[0]; ++i)
                CHECK((sample(f, g.node(i, j, k)) - f.at(i, j, k)).norm() == 0.0);
}

TEST_CASE("sample: trilinear reproduces fields linear in the coordinates") {
    Grid3 g({0, 0, 0}, {0.5, 0.5, 0.5}, {5, 5, 5});
    VectorField3 f = make_field(g, [](const Eigen::Vector3d& p) {
        return Eigen::Vector3d(2.0 * p[0] - 1.0, p[1] + 3.0 * p[2], -p[0]);
    });
    const Eigen::Vector3d center(0.75, 1.25, 0.25);  // a cell center
    const Eigen::Vector3d expect(2.0 * 0.75 - 1.0, 1.25 + 0.75, -0.75);
    CHECK((sample(f, center) - expect).norm() < 1e-14);
}

TEST_CASE("sample: out-of-domain position reports the offending coordinate") {
    Grid3 g = unit_grid(5);
    VectorField3 f = constant_field(g, ex);
    const double dx = g.spacing[0];
    try {
        sample(f, Eigen::Vector3d(1.0 + dx / 2.0, 0.5, 0.5));
        FAIL("expected OutOfDomainError");
    } catch (const OutOfDomainError& e) {
        CHECK(e.coordinate[0] == doctest::Approx(1.0 + dx / 2.0));
    }
}

TEST_CASE("gradient_op: zero on constants, exact on linear fields everywhere") {
    Grid3 g({0, 0, 0}, {0.25, 0.5, 0.125}, {5, 4, 9});

    auto grad_const = gradient_op(constant_field(g, {1.0, -2.0, 0.5}));
    for (const auto& J : grad_const) CHECK(J.norm() == 0.0);

    VectorField3 lin = make_field(g, [](const Eigen::Vector3d& p) {
        return Eigen::Vector3d(p[0], 0, 0);
    });
    auto grad = gradient_op(lin);
    for (const auto& J : grad) {
        CHECK(J(0, 0) == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(std::abs(J(1, 1)) < 1e-13);
    }
}

TEST_CASE("gradient_op: central difference is exact for x^2 at interior points") {
    Grid3 g({0, 0, 0}, {0.1, 0.1, 0.1}, {11, 3, 3});
    VectorField3 f = make_field(g, [](const Eigen::Vector3d& p) {
        return Eigen::Vector3d(p[0] * p[0], 0, 0);
    });
    auto grad = gradient_op(f);
    for (Eigen::Index i = 1; i + 1 < g.dims[0]; ++i) {
        const Eigen::Vector3d p = g.node(i, 1, 1);
        CHECK(grad[static_cast<std::size_t>(g.index(i, 1, 1))](0, 0) ==
              doctest::Approx(2.0 * p[0]).epsilon(1e-13));
    }
}

TEST_CASE("laplacian_op: exactness cases") {
    Grid3 g({0, 0, 0}, {0.2, 0.2, 0.2}, {6, 6, 6});

    VectorField3 lin = make_field(g, [](const Eigen::Vector3d& p) {
        return Eigen::Vector3d(p[0] - 2.0 * p[1], p[2], 1.0);
    });
    VectorField3 lap = laplacian_op(lin);
    CHECK(lap.samples().cwiseAbs().maxCoeff() < 1e-12);

    VectorField3 quad = make_field(g, [](const Eigen::Vector3d& p) {
        return Eigen::Vector3d(p[0] * p[0], 0, 0);
    });
    VectorField3 lap2 = laplacian_op(quad);
    // one-sided second difference is also exact for quadratics, so check all nodes
    for (Eigen::Index p = 0; p < g.num_points(); ++p)
        CHECK(lap2.samples()(0, p) == doctest::Approx(2.0).epsilon(1e-11));

    VectorField3 lap3 = laplacian_op(constant_field(g, {3, 1, 4}));
    CHECK(lap3.samples().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("laplacian_op: rejects grids thinner than the stencil") {
    Grid3 g({0, 0, 0}, {1, 1, 1}, {2, 5, 5});
    CHECK_THROWS_AS(laplacian_op(constant_field(g, ex)), DimensionError);
}

TEST_CASE("advect: directional derivative cases") {
    Grid3 g({0, 0, 0}, {0.25, 0.25, 0.25}, {5, 5, 5});

    VectorField3 zero(g);
    VectorField3 b = make_field(g, [](const Eigen::Vector3d& p) {
        return Eigen::Vector3d(p[0], 2.0 * p[0], 3.0 * p[0]);
    });
    CHECK(advect(zero, b).samples().cwiseAbs().maxCoeff() == 0.0);

    VectorField3 a = constant_field(g, ex);
    VectorField3 adv = advect(a, b);
    for (Eigen::Index p = 0; p < g.num_points(); ++p)
        CHECK((adv.samples().col(p) - Eigen::Vector3d(1, 2, 3)).norm() < 1e-12);

    // (a.grad) has only an x-derivative and the field does not depend on x
    VectorField3 shear = make_field(g, [](const Eigen::Vector3d& p) {
        return Eigen::Vector3d(p[1], 0, 0);
    });
    CHECK(advect(shear, shear).samples().cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("divergence: solenoidal and non-solenoidal cases") {
    Grid3 g({0, 0, 0}, {0.2, 0.3, 0.1}, {6, 6, 6});

    CHECK(divergence(constant_field(g, {1, 2, 3})).samples().cwiseAbs().maxCoeff() == 0.0);

    VectorField3 sol = make_field(g, [](const Eigen::Vector3d& p) {
        return Eigen::Vector3d(p[0], -p[1], 0);
    });
    ScalarField3 div_sol = divergence(sol);
    for (Eigen::Index k = 1; k + 1 < g.dims[2]; ++k)
        for (Eigen::Index j = 1; j + 1 < g.dims[1]; ++j)
            for (Eigen::Index i = 1; i + 1 < g.dims[0]; ++i)
                CHECK(std::abs(div_sol.at(i, j, k)) < 1e-12);

    VectorField3 expand = make_field(g, [](const Eigen::Vector3d& p) {
        return Eigen::Vector3d(p[0], 0, 0);
    });
    ScalarField3 div_exp = divergence(expand);
    for (Eigen::Index k = 1; k + 1 < g.dims[2]; ++k)
        for (Eigen::Index j = 1; j + 1 < g.dims[1]; ++j)
            for (Eigen::Index i = 1; i + 1 < g.dims[0]; ++i)
                CHECK(div_exp.at(i, j, k) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("differential operators: affine fields are exact on the boundary too") {
    Grid3 g({0, 0, 0}, {0.5, 0.25, 0.75}, {4, 5, 3});
    VectorField3 aff = make_field(g, [](const Eigen::Vector3d& p) {
        return Eigen::Vector3d(1.0 + p[0] - p[2], 2.0 * p[1], p[0] + p[1] + p[2]);
    });

    auto grad = gradient_op(aff);
    Eigen::Matrix3d expected;
    expected << 1, 0, -1, 0, 2, 0, 1, 1, 1;
    for (const auto& J : grad) CHECK((J - expected).cwiseAbs().maxCoeff() < 1e-12);

    CHECK(laplacian_op(aff).samples().cwiseAbs().maxCoeff() < 1e-12);

    ScalarField3 div = divergence(aff);
    for (Eigen::Index p = 0; p < g.num_points(); ++p)
        CHECK(div.samples()[p] == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("laplacian and interior gradient converge at second order") {
    auto field_fn = [](const Eigen::Vector3d& p) {
        return Eigen::Vector3d(std::sin(2.0 * p[0]) * std::cos(p[1]),
                               std::cos(p[2]) * std::sin(p[1]),
                               std::sin(p[0] + p[2]));
    };
    auto lap_fn = [](const Eigen::Vector3d& p) {
        return Eigen::Vector3d(-5.0 * std::sin(2.0 * p[0]) * std::cos(p[1]),
                               -2.0 * std::cos(p[2]) * std::sin(p[1]),
                               -2.0 * std::sin(p[0] + p[2]));
    };
    auto ddx_fn = [](const Eigen::Vector3d& p) {
        return Eigen::Vector3d(2.0 * std::cos(2.0 * p[0]) * std::cos(p[1]), 0.0,
                               std::cos(p[0] + p[2]));
    };

    std::vector<double> err_lap, err_grad, hs;
    for (Eigen::Index n : {9, 17, 33}) {
        Grid3 g = unit_grid(n);
        hs.push_back(g.spacing[0]);
        VectorField3 f = make_field(g, field_fn);
        VectorField3 lap = laplacian_op(f);
        auto grad = gradient_op(f);

        double e_lap = 0, e_grad = 0;
        for (Eigen::Index k = 1; k + 1 < g.dims[2]; ++k)
            for (Eigen::Index j = 1; j + 1 < g.dims[1]; ++j)
                for (Eigen::Index i = 1; i + 1 < g.dims[0]; ++i) {
                    const Eigen::Vector3d p = g.node(i, j, k);
                    e_lap = std::max(e_lap, (lap.at(i, j, k) - lap_fn(p)).norm());
                    e_grad = std::max(
                        e_grad,
                        (grad[static_cast<std::size_t>(g.index(i, j, k))].col(0) - ddx_fn(p))
                            .norm());
                }
        err_lap.push_back(e_lap);
        err_grad.push_back(e_grad);
    }

    for (int s = 0; s < 2; ++s) {
        const double slope_lap =
            std::log(err_lap[s] / err_lap[s + 1]) / std::log(hs[s] / hs[s + 1]);
        const double slope_grad =
            std::log(err_grad[s] / err_grad[s + 1]) / std::log(hs[s] / hs[s + 1]);
        CHECK(slope_lap >= 1.9);
        CHECK(slope_grad >= 1.9);
    }
}

TEST_CASE("boundary_flux: zero for tangential fields, volume rate for radial ones") {
    Grid3 g = unit_grid(9);
    // f = (x, 0, 0): flux = area of the two x faces times x there = 1
    VectorField3 f = make_field(g, [](const Eigen::Vector3d& p) {
        return Eigen::Vector3d(p[0], 0, 0);
    });
    CHECK(boundary_flux(f) == doctest::Approx(1.0).epsilon(1e-12));

    // z-flux through top and bottom faces cancels exactly
    VectorField3 t = make_field(g, [](const Eigen::Vector3d& p) {
        return Eigen::Vector3d(0, 0, p[0] * (1.0 - p[0]));
    });
    CHECK(std::abs(boundary_flux(t)) < 1e-12);
}
