#pragma once

#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "slipstream/boundary.hpp"
#include "slipstream/elliptic.hpp"
#include "slipstream/field.hpp"

namespace slipstream {

enum class AdvectionScheme { upwind, minmod };

struct SolverParams {
    double nu = 0.0;                                      // viscosity, >= 0
    double R = std::numeric_limits<double>::infinity();   // cutoff level (inf disables)
    double theta = 0.0;                                   // window / mollification time
    double dt = 0.0;                                      // 0 = auto from CFL
    double T = 1.0;
    double cfl = 0.5;
    double p = 4.0;                                       // estimate exponent in (2, inf]
    AdvectionScheme advection = AdvectionScheme::upwind;
    std::size_t snapshot_every = 1;
    double delta = 0.0;                                   // extension blend width (0 = sigma0/2)
};

/// Pointwise clamp to [-R, R].
ScalarField cutoff(const ScalarField& omega, double R);
void cutoff_inplace(ScalarField& omega, double R);

/// Forward window average (1/theta) * integral over [t, t+theta] of the
/// clamped field, with the trajectory extended by zero beyond T. Piecewise
/// trapezoid over the samples. theta = 0 returns the clamped sample at t.
/// Throws MissingHistory if the samples do not cover [t, min(t+theta, T)].
ScalarField window_average(std::span<const ScalarField> fields, std::span<const double> times,
                           double t, double theta, double R, double T);

/// omega_Gamma(v) = gamma * (v.s) + g at boundary nodes.
BoundaryValues boundary_vorticity(const BoundaryValues& v_dot_s, const ReducedSlice& rd);

struct StepStats {
    double t = 0.0, dt = 0.0;
    double cfl = 0.0, max_speed = 0.0;
    double max_abs = 0.0, l2 = 0.0, lp = 0.0, mass = 0.0;
    double adv_boundary_flux = 0.0;   // net outward advective boundary flux of the step
    double diff_boundary_flux = 0.0;  // net inward diffusive boundary flux of the step
    double budget_residual = 0.0;     // conservative telescoping defect of the step
};

/// One conservative step: explicit first-order upwind (or minmod-limited)
/// advection followed by implicit centered diffusion. Inflow faces take the
/// Dirichlet trace through the upwind flux; with nu > 0 every boundary face
/// also enters the diffusion stencil with Dirichlet values.
class VorticityStepper {
public:
    VorticityStepper(const Grid& grid, const DomainGeometry& geom, double nu, double dt);
    ~VorticityStepper();
    VorticityStepper(VorticityStepper&&) noexcept;

    /// Advances omega in place; omega_gamma holds the Dirichlet node trace.
    /// Throws CflViolation when the donor-cell number exceeds 1, NanDetected
    /// on a non-finite result.
    StepStats advance(ScalarField& omega, const VelocityField& v,
                      const BoundaryValues& omega_gamma, AdvectionScheme scheme) const;

    double dt() const { return dt_; }
    double nu() const { return nu_; }

private:
    const Grid* grid_;
    const DomainGeometry* geom_;
    double nu_, dt_;
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct TraceSample {
    double t = 0.0;
    BoundaryValues a;            // normal trace data
    BoundaryValues v_dot_s;      // tangential velocity trace
    BoundaryValues omega_gamma;  // gamma v.s + g
    BoundaryValues omega_trace;  // extrapolated vorticity trace
};

/// Everything a run leaves behind: step times, boundary traces and step
/// statistics at every step, field snapshots at the configured cadence.
class Trajectory {
public:
    const Grid* grid = nullptr;
    const DomainGeometry* geom = nullptr;
    SolverParams params;
    bool windowed = false;   // stream source was the forward window average

    std::vector<double> times;        // t_0 .. t_N, uniform
    std::vector<TraceSample> traces;  // aligned with times
    std::vector<StepStats> stats;     // aligned with times
    std::vector<std::size_t> snap_steps;
    std::vector<ScalarField> snaps;
    ScalarField omega0;

    double dt() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
    double horizon() const { return times.empty() ? 0.0 : times.back(); }
    std::size_t n_snaps() const { return snaps.size(); }
    double snap_time(std::size_t k) const { return times[snap_steps[k]]; }
    /// Snapshot index at time t (within tol); throws MissingHistory if absent.
    std::size_t snap_at(double t, double tol) const;
};

/// Stream source at snapshot k, reconstructed exactly the way the run
/// produced it (cutoff, or the forward window average of the stored fields).
ScalarField trajectory_source(const Trajectory& traj, std::size_t snap);

/// Velocity of the coupled system at snapshot k.
VelocityField trajectory_velocity(const Trajectory& traj, std::size_t snap, const StreamSolver& solver,
                                  const ReducedData& data);

/// Time-marching construction (window treated as the identity): per step
/// solve the stream problem for the clamped vorticity, advect, diffuse.
Trajectory march_coupled(const ReducedData& data, const Grid& grid, const DomainGeometry& geom,
                         SolverParams params);

struct PicardResult {
    Trajectory trajectory;
    std::vector<double> diffs;   // sup_t L2 distance between successive iterates
    std::vector<double> ratios;  // contraction diagnostic
    std::size_t iterations = 0;
    bool converged = false;
};

/// Fixed point of the slab map: given an iterate trajectory, rebuild the
/// velocity from its forward window average at every step, then re-solve the
/// advection-diffusion slab. Requires nu > 0 and theta > 0.
/// Throws NoConvergence after max_iters (message carries the final ratio).
PicardResult picard_slab(const ReducedData& data, const Grid& grid, const DomainGeometry& geom,
                         SolverParams params, std::size_t max_iters, double tol);

/// Interior extension of the boundary trace and the initial vorticity:
///   breve(x, t) = chi(d/delta) * omega_Gamma(Pi(x), t) + (1 - chi) * rho(t) * omega0(x)
/// with chi a smoothstep from 1 at the boundary to 0 at distance delta, Pi the
/// closest-point projection, rho a ramp from 1 at t = 0 to 0 at max(2 theta, 8 dt).
class ExtensionField {
public:
    ExtensionField(const Trajectory& traj, const DomainGeometry& geom, const Grid& grid,
                   double delta, double ramp_width);

    double value(std::size_t i, std::size_t j, double t) const;
    ScalarField sample(double t) const;
    double delta() const { return delta_; }

private:
    const Trajectory* traj_;
    const DomainGeometry* geom_;
    const Grid* grid_;
    double delta_, ramp_width_;
    double trace_at(std::size_t comp, std::size_t j_cell, double t) const;
};

/// Throws BadDelta unless 0 < delta <= sigma0 / 2.
ExtensionField extend_boundary_vorticity(const Trajectory& traj, const DomainGeometry& geom,
                                         const Grid& grid, double delta);

} // namespace slipstream
