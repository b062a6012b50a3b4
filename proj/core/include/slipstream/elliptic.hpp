#pragma once

#include <memory>

#include "slipstream/boundary.hpp"
#include "slipstream/field.hpp"
#include "slipstream/geometry.hpp"

namespace slipstream {

/// Stream-function solver: -div(grad h) = source in the annulus with
/// Dirichlet data on both circles, discretized at the mesh nodes in the
/// symmetric polar form -[d/dr(r dh/dr) + (1/r) d2h/dth2] = r * source.
/// The factorization is built once per grid and reused across solves.
class StreamSolver {
public:
    enum class Method { direct, cg };

    StreamSolver(const Grid& grid, const DomainGeometry& geom, Method method = Method::direct);
    ~StreamSolver();
    StreamSolver(StreamSolver&&) noexcept;
    StreamSolver& operator=(StreamSolver&&) noexcept;

    /// source is cell-centered (averaged to nodes internally); A holds the
    /// Dirichlet values per boundary component in component node order.
    /// The returned NodeField has the boundary rings filled with A.
    NodeField solve(const ScalarField& source, const BoundaryValues& A) const;

    const Grid& grid() const { return *grid_; }

private:
    const Grid* grid_;
    const DomainGeometry* geom_;
    Method method_;
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Face-normal velocities from tangential differences of the stream function:
///   ur  = (h(i, j+1) - h(i, j)) / (r_i dth)
///   uth = (h(i, j) - h(i+1, j)) / dr
/// Boundary faces use the Dirichlet ring of h, so v.n on the boundary is the
/// discrete arc derivative of A. Discrete divergence vanishes identically.
VelocityField velocity_from_stream(const NodeField& h, const Grid& grid);

/// max over boundary faces of |v.n - a| with a averaged to face midpoints.
double normal_trace_error(const VelocityField& v, const BoundaryValues& a_nodes,
                          const DomainGeometry& geom, const Grid& grid);

/// Tangential velocity trace v.s at boundary nodes (one-sided second-order
/// radial stencil on h), in component node order.
BoundaryValues tangential_trace(const NodeField& h, const DomainGeometry& geom, const Grid& grid);

/// Vorticity trace at boundary nodes, extrapolated from the two adjacent
/// cell rings (second order), in component node order.
BoundaryValues vorticity_trace(const ScalarField& omega, const DomainGeometry& geom,
                               const Grid& grid);

struct SlipResiduals {
    BoundaryValues direct;   // 2 D(v)n.s + alpha v.s - b, from velocity gradients
    BoundaryValues reduced;  // omega - gamma v.s - g, from the vorticity trace
    double max_direct = 0.0;
    double max_reduced = 0.0;
    double max_gap = 0.0;    // max |direct - reduced|: pure discretization error
};

/// Both residual forms of the slip condition. alpha and b are recovered from
/// the reduced data (alpha = 2k - gamma, b = g + 2 a'_s).
SlipResiduals slip_residual(const NodeField& h, const ScalarField& omega,
                            const ReducedSlice& rd, const DomainGeometry& geom,
                            const Grid& grid);

/// Cell-area-weighted L_p norm; p = inf gives the max norm.
double discrete_norm(const ScalarField& f, const Grid& grid, double p);

/// Gradient magnitude of a node field at cell centers (four-corner stencil).
ScalarField node_gradient_magnitude(const NodeField& h, const Grid& grid);

} // namespace slipstream
