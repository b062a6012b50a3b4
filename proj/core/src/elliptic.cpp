#include "slipstream/elliptic.hpp"

#include <Eigen/Sparse>
#include <cassert>
#include <cmath>

#include "slipstream/errors.hpp"

namespace slipstream {

struct StreamSolver::Impl {
    Eigen::SparseMatrix<double> K;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
};

StreamSolver::StreamSolver(const Grid& grid, const DomainGeometry& geom, Method method)
    : grid_(&grid), geom_(&geom), method_(method), impl_(std::make_unique<Impl>()) {
    const std::size_t nr = grid.n_r(), ns = grid.n_s();
    const std::size_t n = (nr - 1) * ns;
    const double dr = grid.dr(), dth = grid.dth();

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(5 * n);
    auto idx = [ns](std::size_t i, std::size_t j) {
        return static_cast<Eigen::Index>((i - 1) * ns + j);
    };
    for (std::size_t i = 1; i < nr; ++i) {
        const double cr_out = grid.r_center(i) / (dr * dr);
        const double cr_in = grid.r_center(i - 1) / (dr * dr);
        const double ca = 1.0 / (grid.r_node(i) * dth * dth);
        for (std::size_t j = 0; j < ns; ++j) {
            trip.emplace_back(idx(i, j), idx(i, j), cr_out + cr_in + 2.0 * ca);
            if (i + 1 < nr) trip.emplace_back(idx(i, j), idx(i + 1, j), -cr_out);
            if (i > 1) trip.emplace_back(idx(i, j), idx(i - 1, j), -cr_in);
            trip.emplace_back(idx(i, j), idx(i, grid.jp(j)), -ca);
            trip.emplace_back(idx(i, j), idx(i, grid.jm(j)), -ca);
        }
    }
    impl_->K.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    impl_->K.setFromTriplets(trip.begin(), trip.end());
    impl_->K.makeCompressed();

    if (method_ == Method::direct) {
        impl_->ldlt.compute(impl_->K);
        if (impl_->ldlt.info() != Eigen::Success)
            throw SolverDiverged("stream matrix factorization failed");
    } else {
        impl_->cg.setTolerance(1e-12);
        impl_->cg.setMaxIterations(static_cast<Eigen::Index>(20 * n));
        impl_->cg.compute(impl_->K);
    }
}

StreamSolver::~StreamSolver() = default;
StreamSolver::StreamSolver(StreamSolver&&) noexcept = default;
StreamSolver& StreamSolver::operator=(StreamSolver&&) noexcept = default;

NodeField StreamSolver::solve(const ScalarField& source, const BoundaryValues& A) const {
    const Grid& g = *grid_;
    const std::size_t nr = g.n_r(), ns = g.n_s();
    assert(source.n_r() == nr && source.n_s() == ns);

    const auto A_out = A.grid_order(*geom_, 0);
    const auto A_in = A.grid_order(*geom_, 1);
    assert(A_out.size() == ns && A_in.size() == ns);

    const double dr = g.dr();
    Eigen::VectorXd rhs(static_cast<Eigen::Index>((nr - 1) * ns));
    for (std::size_t i = 1; i < nr; ++i) {
        for (std::size_t j = 0; j < ns; ++j) {
            // cell-to-node average of the source (second order on the smooth mesh)
            const double w = 0.25 * (source(i - 1, g.jm(j)) + source(i - 1, j) +
                                     source(i, g.jm(j)) + source(i, j));
            double r = g.r_node(i) * w;
            if (i == 1) r += g.r_center(0) / (dr * dr) * A_in[j];
            if (i == nr - 1) r += g.r_center(nr - 1) / (dr * dr) * A_out[j];
            rhs[static_cast<Eigen::Index>((i - 1) * ns + j)] = r;
        }
    }

    Eigen::VectorXd x;
    if (method_ == Method::direct) {
        x = impl_->ldlt.solve(rhs);
    } else {
        x = impl_->cg.solve(rhs);
        if (impl_->cg.info() != Eigen::Success)
            throw SolverDiverged("conjugate gradient stalled at residual " +
                                 std::to_string(impl_->cg.error()));
    }

    NodeField h(g);
    for (std::size_t j = 0; j < ns; ++j) {
        h(0, j) = A_in[j];
        h(nr, j) = A_out[j];
    }
    for (std::size_t i = 1; i < nr; ++i)
        for (std::size_t j = 0; j < ns; ++j)
            h(i, j) = x[static_cast<Eigen::Index>((i - 1) * ns + j)];
    return h;
}

VelocityField velocity_from_stream(const NodeField& h, const Grid& grid) {
    const std::size_t nr = grid.n_r(), ns = grid.n_s();
    VelocityField v(grid);
    for (std::size_t i = 0; i <= nr; ++i) {
        const double inv = 1.0 / grid.radial_face_len(i);
        for (std::size_t j = 0; j < ns; ++j)
            v.ur(i, j) = (h(i, grid.jp(j)) - h(i, j)) * inv;
    }
    const double invdr = 1.0 / grid.dr();
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < ns; ++j)
            v.uth(i, j) = (h(i, j) - h(i + 1, j)) * invdr;
    return v;
}

double normal_trace_error(const VelocityField& v, const BoundaryValues& a_nodes,
                          const DomainGeometry& geom, const Grid& grid) {
    const std::size_t ns = grid.n_s(), nr = grid.n_r();
    const auto a_out = a_nodes.grid_order(geom, 0);
    const auto a_in = a_nodes.grid_order(geom, 1);
    double err = 0.0;
    for (std::size_t j = 0; j < ns; ++j) {
        const std::size_t jp = grid.jp(j);
        const double a_face_out = 0.5 * (a_out[j] + a_out[jp]);
        const double a_face_in = 0.5 * (a_in[j] + a_in[jp]);
        err = std::max(err, std::abs(v.ur(nr, j) - a_face_out));
        err = std::max(err, std::abs(-v.ur(0, j) - a_face_in));
    }
    return err;
}

BoundaryValues tangential_trace(const NodeField& h, const DomainGeometry& geom,
                                const Grid& grid) {
    const std::size_t nr = grid.n_r(), ns = grid.n_s();
    const double dr = grid.dr();
    BoundaryValues out = BoundaryValues::zeros(geom);
    for (std::size_t j = 0; j < ns; ++j) {
        // one-sided second-order dh/dr; v_theta = -dh/dr
        const double vth_out = -(3.0 * h(nr, j) - 4.0 * h(nr - 1, j) + h(nr - 2, j)) / (2.0 * dr);
        const double vth_in = -(-3.0 * h(0, j) + 4.0 * h(1, j) - h(2, j)) / (2.0 * dr);
        out.comp[0][geom.outer().angle_index(j)] = vth_out;       // s = +e_theta
        out.comp[1][geom.inner().angle_index(j)] = -vth_in;       // s = -e_theta
    }
    return out;
}

BoundaryValues vorticity_trace(const ScalarField& omega, const DomainGeometry& geom,
                               const Grid& grid) {
    const std::size_t nr = grid.n_r(), ns = grid.n_s();
    BoundaryValues out = BoundaryValues::zeros(geom);
    for (std::size_t j = 0; j < ns; ++j) {
        const std::size_t jm = grid.jm(j);
        const double o1 = 0.5 * (omega(nr - 1, jm) + omega(nr - 1, j));
        const double o2 = 0.5 * (omega(nr - 2, jm) + omega(nr - 2, j));
        out.comp[0][geom.outer().angle_index(j)] = 1.5 * o1 - 0.5 * o2;
        const double i1 = 0.5 * (omega(0, jm) + omega(0, j));
        const double i2 = 0.5 * (omega(1, jm) + omega(1, j));
        out.comp[1][geom.inner().angle_index(j)] = 1.5 * i1 - 0.5 * i2;
    }
    return out;
}

SlipResiduals slip_residual(const NodeField& h, const ScalarField& omega,
                            const ReducedSlice& rd, const DomainGeometry& geom,
                            const Grid& grid) {
    const std::size_t nr = grid.n_r(), ns = grid.n_s();
    const double dr = grid.dr(), dth = grid.dth();
    assert(nr >= 4);

    SlipResiduals res;
    res.direct = BoundaryValues::zeros(geom);
    res.reduced = BoundaryValues::zeros(geom);

    const BoundaryValues wtr = vorticity_trace(omega, geom, grid);

    for (std::size_t c = 0; c < 2; ++c) {
        const auto& bc = geom.components()[c];
        const std::size_t ib = (c == 0) ? nr : 0;
        const double r = grid.r_node(ib);

        // a'_s to recover b = g + 2 a'_s
        const auto das = arc_derivative(rd.a.comp[c], bc.ds());

        for (std::size_t j = 0; j < ns; ++j) {
            const std::size_t m = bc.angle_index(j);

            // one-sided radial and centered angular stencils on h; on a circle
            // 2 D(v)n.s reduces to -h_rr + h_tt / r^2 + h_r / r for v = rot h
            double h0, h1, h2, h3;
            if (c == 0) {
                h0 = h(nr, j); h1 = h(nr - 1, j); h2 = h(nr - 2, j); h3 = h(nr - 3, j);
            } else {
                h0 = h(0, j); h1 = h(1, j); h2 = h(2, j); h3 = h(3, j);
            }
            const double sgn = (c == 0) ? 1.0 : -1.0; // +r runs against the stencil on the inner ring
            const double h_r = sgn * (11.0 * h0 - 18.0 * h1 + 9.0 * h2 - 2.0 * h3) / (6.0 * dr);
            const double h_rr = (2.0 * h0 - 5.0 * h1 + 4.0 * h2 - h3) / (dr * dr);
            const double h_tt =
                (h(ib, grid.jp(j)) - 2.0 * h(ib, j) + h(ib, grid.jm(j))) / (dth * dth);
            const double two_Dns = -h_rr + h_tt / (r * r) + h_r / r;

            // v.s = v_theta on the outer circle (s = +e_theta), -v_theta inside
            const double v_dot_s = (c == 0) ? -h_r : h_r;

            const double alpha = 2.0 * bc.curvature[m] - rd.gamma.comp[c][m];
            const double b = rd.g.comp[c][m] + 2.0 * das[m];

            res.direct.comp[c][m] = two_Dns + alpha * v_dot_s - b;
            res.reduced.comp[c][m] =
                wtr.comp[c][m] - rd.gamma.comp[c][m] * v_dot_s - rd.g.comp[c][m];

            res.max_direct = std::max(res.max_direct, std::abs(res.direct.comp[c][m]));
            res.max_reduced = std::max(res.max_reduced, std::abs(res.reduced.comp[c][m]));
            res.max_gap = std::max(res.max_gap,
                                   std::abs(res.direct.comp[c][m] - res.reduced.comp[c][m]));
        }
    }
    return res;
}

double discrete_norm(const ScalarField& f, const Grid& grid, double p) {
    if (std::isinf(p)) return f.max_abs();
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.n_r(); ++i) {
        const double area = grid.cell_area(i);
        for (std::size_t j = 0; j < grid.n_s(); ++j)
            acc += std::pow(std::abs(f(i, j)), p) * area;
    }
    return std::pow(acc, 1.0 / p);
}

ScalarField node_gradient_magnitude(const NodeField& h, const Grid& grid) {
    ScalarField out(grid, Quantity::generic);
    for (std::size_t i = 0; i < grid.n_r(); ++i) {
        const double rc = grid.r_center(i);
        for (std::size_t j = 0; j < grid.n_s(); ++j) {
            const std::size_t jp = grid.jp(j);
            const double hr = (h(i + 1, j) + h(i + 1, jp) - h(i, j) - h(i, jp)) / (2.0 * grid.dr());
            const double ht = (h(i, jp) + h(i + 1, jp) - h(i, j) - h(i + 1, j)) / (2.0 * grid.dth());
            out(i, j) = std::hypot(hr, ht / rc);
        }
    }
    return out;
}

} // namespace slipstream
