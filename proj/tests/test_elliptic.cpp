#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "slipstream/elliptic.hpp"
#include "slipstream/boundary.hpp"

using namespace slipstream;

namespace {

constexpr double kPi = std::numbers::pi;

struct Setup {
    DomainGeometry geom;
    Grid grid;
    Setup(std::size_t nr, std::size_t ns)
        : geom(DomainGeometry::annulus(0.5, 1.0, ns)), grid(0.5, 1.0, nr, ns) {}
};

// Dirichlet data of the uniform stream h = eps * y on both circles
BoundaryValues uniform_stream_A(const DomainGeometry& geom, double eps) {
    BoundaryValues A = BoundaryValues::zeros(geom);
    for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t m = 0; m < geom.components()[c].n_nodes; ++m)
            A.comp[c][m] = eps * geom.components()[c].position[m].y;
    return A;
}

// -laplace h = 1 with h = 0 on both circles of the (0.5, 1) annulus
double radial_exact(double r) {
    return 0.25 * (1.0 - r * r) + 3.0 / (16.0 * std::log(2.0)) * std::log(r);
}

} // namespace

TEST_CASE("constant Dirichlet data is reproduced exactly") {
    Setup su(24, 48);
    StreamSolver solver(su.grid, su.geom);
    ScalarField zero(su.grid);
    BoundaryValues A = BoundaryValues::zeros(su.geom);
    for (std::size_t c = 0; c < 2; ++c)
        for (auto& v : A.comp[c]) v = 2.5;
    const NodeField h = solver.solve(zero, A);
    for (std::size_t i = 0; i <= su.grid.n_r(); ++i)
        for (std::size_t j = 0; j < su.grid.n_s(); ++j)
            CHECK(h(i, j) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("radial source problem matches the analytic solution") {
    auto max_err = [](std::size_t nr, std::size_t ns) {
        Setup su(nr, ns);
        StreamSolver solver(su.grid, su.geom);
        ScalarField one(su.grid);
        for (auto& v : one.data()) v = 1.0;
        const NodeField h = solver.solve(one, BoundaryValues::zeros(su.geom));
        double err = 0.0;
        for (std::size_t i = 0; i <= su.grid.n_r(); ++i)
            for (std::size_t j = 0; j < su.grid.n_s(); ++j)
                err = std::max(err, std::abs(h(i, j) - radial_exact(su.grid.r_node(i))));
        return err;
    };
    const double e32 = max_err(32, 64), e64 = max_err(64, 128);
    CHECK(e32 < 2e-4);
    CHECK(e32 / e64 > 3.0);
    CHECK(e32 / e64 < 5.0);
}

TEST_CASE("harmonic extension of the uniform stream") {
    auto max_err = [](std::size_t nr, std::size_t ns) {
        Setup su(nr, ns);
        StreamSolver solver(su.grid, su.geom);
        ScalarField zero(su.grid);
        const NodeField h = solver.solve(zero, uniform_stream_A(su.geom, 0.4));
        double err = 0.0;
        for (std::size_t i = 0; i <= su.grid.n_r(); ++i)
            for (std::size_t j = 0; j < su.grid.n_s(); ++j)
                err = std::max(err, std::abs(h(i, j) - 0.4 * su.grid.r_node(i) *
                                                           std::sin(su.grid.theta_node(j))));
        return err;
    };
    const double e32 = max_err(32, 64), e64 = max_err(64, 128);
    CHECK(e32 < 2e-4);
    CHECK(e32 / e64 > 3.0);
    CHECK(e32 / e64 < 5.0);
}

TEST_CASE("manufactured solution converges at second order") {
    // h* = (r - 0.5)(1 - r) sin(2 theta); f = -laplace h* = (4.5/r - 2/r^2) sin(2 theta)
    auto max_err = [](std::size_t nr, std::size_t ns) {
        Setup su(nr, ns);
        StreamSolver solver(su.grid, su.geom);
        ScalarField f(su.grid);
        for (std::size_t i = 0; i < su.grid.n_r(); ++i) {
            const double r = su.grid.r_center(i);
            for (std::size_t j = 0; j < su.grid.n_s(); ++j)
                f(i, j) = (4.5 / r - 2.0 / (r * r)) * std::sin(2.0 * su.grid.theta_center(j));
        }
        const NodeField h = solver.solve(f, BoundaryValues::zeros(su.geom));
        double err = 0.0;
        for (std::size_t i = 0; i <= su.grid.n_r(); ++i) {
            const double r = su.grid.r_node(i);
            const double pr = (r - 0.5) * (1.0 - r);
            for (std::size_t j = 0; j < su.grid.n_s(); ++j)
                err = std::max(err,
                               std::abs(h(i, j) - pr * std::sin(2.0 * su.grid.theta_node(j))));
        }
        return err;
    };
    const double e32 = max_err(32, 64), e64 = max_err(64, 128);
    CHECK(e32 / e64 > 3.0);
    CHECK(e32 / e64 < 5.0);
}

TEST_CASE("solver linearity") {
    Setup su(20, 40);
    StreamSolver solver(su.grid, su.geom);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);

    ScalarField w1(su.grid), w2(su.grid), wsum(su.grid);
    for (std::size_t m = 0; m < w1.data().size(); ++m) {
        w1.data()[m] = U(rng);
        w2.data()[m] = U(rng);
        wsum.data()[m] = w1.data()[m] + w2.data()[m];
    }
    BoundaryValues A1 = BoundaryValues::zeros(su.geom), A2 = A1, Asum = A1;
    for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t m = 0; m < A1.comp[c].size(); ++m) {
            A1.comp[c][m] = U(rng);
            A2.comp[c][m] = U(rng);
            Asum.comp[c][m] = A1.comp[c][m] + A2.comp[c][m];
        }
    const NodeField h1 = solver.solve(w1, A1), h2 = solver.solve(w2, A2),
                    hs = solver.solve(wsum, Asum);
    for (std::size_t i = 0; i <= su.grid.n_r(); ++i)
        for (std::size_t j = 0; j < su.grid.n_s(); ++j)
            CHECK(hs(i, j) == doctest::Approx(h1(i, j) + h2(i, j)).epsilon(1e-10));
}

TEST_CASE("discrete maximum principle for the harmonic part") {
    Setup su(24, 48);
    StreamSolver solver(su.grid, su.geom);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(-2.0, 3.0);
    BoundaryValues A = BoundaryValues::zeros(su.geom);
    double lo = 1e300, hi = -1e300;
    for (std::size_t c = 0; c < 2; ++c)
        for (auto& v : A.comp[c]) {
            v = U(rng);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    ScalarField zero(su.grid);
    const NodeField h = solver.solve(zero, A);
    for (std::size_t i = 0; i <= su.grid.n_r(); ++i)
        for (std::size_t j = 0; j < su.grid.n_s(); ++j) {
            CHECK(h(i, j) >= lo - 1e-12);
            CHECK(h(i, j) <= hi + 1e-12);
        }
}

TEST_CASE("cg method agrees with the direct solve") {
    Setup su(16, 32);
    StreamSolver direct(su.grid, su.geom, StreamSolver::Method::direct);
    StreamSolver cg(su.grid, su.geom, StreamSolver::Method::cg);
    ScalarField f(su.grid);
    for (std::size_t i = 0; i < su.grid.n_r(); ++i)
        for (std::size_t j = 0; j < su.grid.n_s(); ++j)
            f(i, j) = std::sin(3.0 * su.grid.theta_center(j)) * su.grid.r_center(i);
    const NodeField hd = direct.solve(f, BoundaryValues::zeros(su.geom));
    const NodeField hc = cg.solve(f, BoundaryValues::zeros(su.geom));
    for (std::size_t i = 0; i <= su.grid.n_r(); ++i)
        for (std::size_t j = 0; j < su.grid.n_s(); ++j)
            CHECK(std::abs(hd(i, j) - hc(i, j)) < 1e-9);
}

TEST_CASE("velocity from stream") {
    Setup su(32, 64);

    SUBCASE("constant h gives zero velocity") {
        NodeField h(su.grid, 4.2);
        const VelocityField v = velocity_from_stream(h, su.grid);
        CHECK(v.max_face_speed() == 0.0);
    }

    SUBCASE("uniform stream gives the uniform flow, second order") {
        const double eps = 0.3;
        NodeField h(su.grid);
        for (std::size_t i = 0; i <= su.grid.n_r(); ++i)
            for (std::size_t j = 0; j < su.grid.n_s(); ++j)
                h(i, j) = eps * su.grid.r_node(i) * std::sin(su.grid.theta_node(j));
        const VelocityField v = velocity_from_stream(h, su.grid);
        double err = 0.0;
        for (std::size_t i = 0; i < su.grid.n_r(); ++i)
            for (std::size_t j = 0; j < su.grid.n_s(); ++j) {
                const Vec2 u = v.cell_velocity(su.grid, i, j);
                err = std::max(err, (u - Vec2{eps, 0.0}).norm());
            }
        CHECK(err < 5e-3 * eps);
    }

    SUBCASE("radial stream gives the azimuthal profile c r / 2 - C / r") {
        const double c = 1.3, C = 0.4;
        NodeField h(su.grid);
        for (std::size_t i = 0; i <= su.grid.n_r(); ++i) {
            const double r = su.grid.r_node(i);
            for (std::size_t j = 0; j < su.grid.n_s(); ++j)
                h(i, j) = -c * r * r / 4.0 + C * std::log(r);
        }
        const VelocityField v = velocity_from_stream(h, su.grid);
        for (std::size_t i = 0; i < su.grid.n_r(); ++i) {
            const double r = su.grid.r_center(i);
            CHECK(v.ur(i, 0) == 0.0); // purely azimuthal
            CHECK(v.uth(i, 0) == doctest::Approx(c * r / 2.0 - C / r).epsilon(2e-3));
        }
    }

    SUBCASE("discrete divergence vanishes identically for random h") {
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        NodeField h(su.grid);
        for (auto& v : h.data()) v = U(rng);
        const VelocityField v = velocity_from_stream(h, su.grid);
        for (std::size_t i = 0; i < su.grid.n_r(); ++i)
            for (std::size_t j = 0; j < su.grid.n_s(); ++j)
                CHECK(std::abs(v.divergence(su.grid, i, j)) < 1e-11);
    }
}

TEST_CASE("normal trace error") {
    SUBCASE("zero data is exact") {
        Setup su(16, 32);
        NodeField h(su.grid);
        const VelocityField v = velocity_from_stream(h, su.grid);
        CHECK(normal_trace_error(v, BoundaryValues::zeros(su.geom), su.geom, su.grid) == 0.0);
    }

    SUBCASE("uniform through-flow trace is second-order accurate") {
        const double eps = 0.5;
        auto run = [&](std::size_t nr, std::size_t ns) {
            Setup su(nr, ns);
            StreamSolver solver(su.grid, su.geom);
            ScalarField zero(su.grid);
            const NodeField h = solver.solve(zero, uniform_stream_A(su.geom, eps));
            const VelocityField v = velocity_from_stream(h, su.grid);
            BoundaryValues a = BoundaryValues::zeros(su.geom);
            for (std::size_t c = 0; c < 2; ++c) {
                const auto& bc = su.geom.components()[c];
                for (std::size_t m = 0; m < bc.n_nodes; ++m)
                    a.comp[c][m] = eps * Vec2{1.0, 0.0}.dot(bc.normal[m]);
            }
            return normal_trace_error(v, a, su.geom, su.grid);
        };
        const double e256 = run(64, 256);
        CHECK(e256 < 1e-3 * eps);
        const double e512 = run(128, 512);
        CHECK(e256 / e512 > 3.0);
        CHECK(e256 / e512 < 5.0);
    }
}

TEST_CASE("slip residuals: direct and reduced forms agree") {
    // steady azimuthal state: -laplace h = c, h = 0 on both circles, omega = c,
    // alpha = 2k, b = c (so gamma = 0, g = c)
    auto gaps = [](std::size_t nr, std::size_t ns) {
        Setup su(nr, ns);
        StreamSolver solver(su.grid, su.geom);
        const double c = 1.0;
        ScalarField w(su.grid);
        for (auto& v : w.data()) v = c;
        const NodeField h = solver.solve(w, BoundaryValues::zeros(su.geom));

        BoundaryData d;
        d.omega0 = w;
        d.alpha = [&su](std::size_t comp, double, double) {
            return 2.0 * su.geom.components()[comp].curvature[0];
        };
        d.b = [=](std::size_t, double, double) { return c; };
        const auto rd = reduce_boundary_data(d, su.geom, su.grid).at(0.0);
        return slip_residual(h, w, rd, su.geom, su.grid);
    };
    const SlipResiduals r64 = gaps(64, 128);
    const SlipResiduals r128 = gaps(128, 256);
    CHECK(r128.max_gap < 1e-2);
    CHECK(r64.max_direct / r128.max_direct > 1.7);
    CHECK(r64.max_gap / r128.max_gap > 1.7);

    // gamma = 0, g = 0 with zero vorticity: the reduced residual is exactly zero
    Setup su(16, 32);
    ScalarField zero(su.grid);
    NodeField h(su.grid);
    BoundaryData d;
    d.omega0 = zero;
    d.alpha = [&su](std::size_t comp, double, double) {
        return 2.0 * su.geom.components()[comp].curvature[0];
    };
    const auto rd = reduce_boundary_data(d, su.geom, su.grid).at(0.0);
    const SlipResiduals r = slip_residual(h, zero, rd, su.geom, su.grid);
    CHECK(r.max_reduced == 0.0);
}

TEST_CASE("slip residual vanishes for the uniform flow with alpha = 2k, b = 2 a'_s") {
    auto run = [](std::size_t nr, std::size_t ns) {
        Setup su(nr, ns);
        StreamSolver solver(su.grid, su.geom);
        const double eps = 0.4;
        ScalarField zero(su.grid);
        const NodeField h = solver.solve(zero, uniform_stream_A(su.geom, eps));

        BoundaryData d;
        d.omega0 = zero;
        d.a = [=](std::size_t c, double s, double) {
            return c == 0 ? eps * std::cos(s) : -eps * std::cos(2.0 * s);
        };
        // restate a through the geometry to keep both components consistent
        d.a = [=, &su](std::size_t c, double s, double) {
            const Frame f = arc_frame(su.geom.components()[c], s);
            return eps * Vec2{1.0, 0.0}.dot(f.normal);
        };
        d.alpha = [&su](std::size_t c, double, double) {
            return 2.0 * su.geom.components()[c].curvature[0];
        };
        d.b = [=, &su](std::size_t c, double s, double) {
            // b = 2 a'_s for the uniform flow data
            const auto& bc = su.geom.components()[c];
            const double h0 = 1e-6;
            const Frame fp = arc_frame(bc, s + h0), fm = arc_frame(bc, s - h0);
            return 2.0 * eps * (Vec2{1.0, 0.0}.dot(fp.normal) - Vec2{1.0, 0.0}.dot(fm.normal)) /
                   (2.0 * h0);
        };
        const auto rd = reduce_boundary_data(d, su.geom, su.grid).at(0.0);
        return slip_residual(h, zero, rd, su.geom, su.grid);
    };
    const SlipResiduals r64 = run(64, 128), r128 = run(128, 256);
    CHECK(r128.max_direct < 2e-2);
    CHECK(r64.max_direct / r128.max_direct > 1.7);
}

TEST_CASE("discrete norms") {
    Setup su(32, 64);
    ScalarField f(su.grid);
    for (auto& v : f.data()) v = 1.0;
    CHECK(discrete_norm(f, su.grid, 2.0) == doctest::Approx(std::sqrt(0.75 * kPi)).epsilon(1e-12));

    for (auto& v : f.data()) v = -2.7;
    CHECK(discrete_norm(f, su.grid, std::numeric_limits<double>::infinity()) ==
          doctest::Approx(2.7));

    // normalized q-norms of a Gaussian profile increase to the max norm
    for (std::size_t i = 0; i < su.grid.n_r(); ++i)
        for (std::size_t j = 0; j < su.grid.n_s(); ++j) {
            const double r = su.grid.r_center(i);
            f(i, j) = std::exp(-40.0 * (r - 0.75) * (r - 0.75));
        }
    const double area = su.grid.total_area();
    const double fmax = f.max_abs();
    double prev = 0.0;
    for (double q : {4.0, 8.0, 16.0, 32.0, 64.0}) {
        const double nq = discrete_norm(f, su.grid, q) / std::pow(area, 1.0 / q);
        CHECK(nq >= prev - 1e-12);
        CHECK(nq <= fmax + 1e-12);
        prev = nq;
    }
    CHECK(prev > 0.8 * fmax);
}

TEST_CASE("gradient bound stays bounded under refinement") {
    // || grad h ||_inf / (||omega||_p + ||A|| data norm) across grids
    double prev_ratio = 0.0;
    for (std::size_t nr : {16, 32, 64}) {
        Setup su(nr, 2 * nr);
        StreamSolver solver(su.grid, su.geom);
        ScalarField w(su.grid);
        for (std::size_t i = 0; i < su.grid.n_r(); ++i)
            for (std::size_t j = 0; j < su.grid.n_s(); ++j)
                w(i, j) = std::sin(2.0 * su.grid.theta_center(j));
        const BoundaryValues A = uniform_stream_A(su.geom, 0.2);
        const NodeField h = solver.solve(w, A);
        const double gmax =
            discrete_norm(node_gradient_magnitude(h, su.grid), su.grid,
                          std::numeric_limits<double>::infinity());
        const double den = discrete_norm(w, su.grid, 4.0) + boundary_sobolev2_norm(A, su.geom, 4.0);
        const double ratio = gmax / den;
        if (prev_ratio > 0.0) CHECK(ratio < 2.0 * prev_ratio + 1.0);
        prev_ratio = ratio;
    }
}
