#include "slipstream/transport.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cassert>
#include <cmath>

#include "slipstream/errors.hpp"

namespace slipstream {

namespace {

double smoothstep01(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * (3.0 - 2.0 * u);
}

double minmod(double a, double b) {
    if (a * b <= 0.0) return 0.0;
    return (std::abs(a) < std::abs(b)) ? a : b;
}

double clamp_R(double x, double R) {
    if (!std::isfinite(R)) return x;
    return std::max(-R, std::min(R, x));
}

} // namespace

ScalarField cutoff(const ScalarField& omega, double R) {
    ScalarField out = omega;
    cutoff_inplace(out, R);
    return out;
}

void cutoff_inplace(ScalarField& omega, double R) {
    if (!std::isfinite(R)) return;
    for (double& x : omega.data()) x = clamp_R(x, R);
}

ScalarField window_average(std::span<const ScalarField> fields, std::span<const double> times,
                           double t, double theta, double R, double T) {
    assert(fields.size() == times.size() && !fields.empty());
    const double dt_ref = times.size() > 1 ? times[1] - times[0] : 1.0;
    const double tol = 1e-9 * std::max(dt_ref, 1e-12);

    if (theta <= 0.0) {
        for (std::size_t k = 0; k < times.size(); ++k)
            if (std::abs(times[k] - t) <= tol) return cutoff(fields[k], R);
        throw MissingHistory("no sample at t = " + std::to_string(t));
    }

    const double t_end = std::min(t + theta, T);
    if (t < times.front() - tol || times.back() < t_end - tol)
        throw MissingHistory("window [" + std::to_string(t) + ", " + std::to_string(t_end) +
                             "] not covered by the stored trajectory");

    // Per-sample trapezoid weights of the piecewise-linear clamped trajectory
    // over [t, t_end]; the zero extension beyond T enters through the fixed
    // division by theta.
    std::vector<double> w(times.size(), 0.0);
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const double lo = std::max(times[k], t);
        const double hi = std::min(times[k + 1], t_end);
        if (hi <= lo) continue;
        const double span = times[k + 1] - times[k];
        const double la = (lo - times[k]) / span;
        const double lb = (hi - times[k]) / span;
        w[k] += 0.5 * (hi - lo) * (2.0 - la - lb);
        w[k + 1] += 0.5 * (hi - lo) * (la + lb);
    }

    ScalarField out = fields[0];
    for (double& x : out.data()) x = 0.0;
    out.set_tag(Quantity::vorticity);
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (w[k] == 0.0) continue;
        const double c = w[k] / theta;
        const auto& src = fields[k].data();
        auto& dst = out.data();
        for (std::size_t m = 0; m < dst.size(); ++m) dst[m] += c * clamp_R(src[m], R);
    }
    return out;
}

BoundaryValues boundary_vorticity(const BoundaryValues& v_dot_s, const ReducedSlice& rd) {
    BoundaryValues out = v_dot_s;
    for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t m = 0; m < out.comp[c].size(); ++m)
            out.comp[c][m] = rd.gamma.comp[c][m] * v_dot_s.comp[c][m] + rd.g.comp[c][m];
    return out;
}

// ---------------------------------------------------------------------------
// stepper

struct VorticityStepper::Impl {
    Eigen::SparseMatrix<double> A; // V + nu dt K
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    double coef_in = 0.0, coef_out = 0.0; // boundary-face diffusion coefficients
    bool viscous = false;
};

VorticityStepper::VorticityStepper(const Grid& grid, const DomainGeometry& geom, double nu,
                                   double dt)
    : grid_(&grid), geom_(&geom), nu_(nu), dt_(dt), impl_(std::make_unique<Impl>()) {
    impl_->viscous = nu > 0.0;
    if (!impl_->viscous) return;

    const std::size_t nr = grid.n_r(), ns = grid.n_s();
    const double dr = grid.dr(), dth = grid.dth();
    impl_->coef_in = grid.radial_face_len(0) / (0.5 * dr);
    impl_->coef_out = grid.radial_face_len(nr) / (0.5 * dr);

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(5 * nr * ns);
    auto idx = [ns](std::size_t i, std::size_t j) {
        return static_cast<Eigen::Index>(i * ns + j);
    };
    const double s = nu * dt;
    for (std::size_t i = 0; i < nr; ++i) {
        const double ca = dr / (grid.r_center(i) * dth);
        double diag = grid.cell_area(i) + s * 2.0 * ca;
        diag += s * (i > 0 ? grid.radial_face_len(i) / dr : impl_->coef_in);
        diag += s * (i + 1 < nr ? grid.radial_face_len(i + 1) / dr : impl_->coef_out);
        for (std::size_t j = 0; j < ns; ++j) {
            trip.emplace_back(idx(i, j), idx(i, j), diag);
            if (i > 0)
                trip.emplace_back(idx(i, j), idx(i - 1, j), -s * grid.radial_face_len(i) / dr);
            if (i + 1 < nr)
                trip.emplace_back(idx(i, j), idx(i + 1, j), -s * grid.radial_face_len(i + 1) / dr);
            trip.emplace_back(idx(i, j), idx(i, grid.jp(j)), -s * ca);
            trip.emplace_back(idx(i, j), idx(i, grid.jm(j)), -s * ca);
        }
    }
    impl_->A.resize(static_cast<Eigen::Index>(nr * ns), static_cast<Eigen::Index>(nr * ns));
    impl_->A.setFromTriplets(trip.begin(), trip.end());
    impl_->A.makeCompressed();
    impl_->ldlt.compute(impl_->A);
    if (impl_->ldlt.info() != Eigen::Success)
        throw SolverDiverged("diffusion matrix factorization failed");
}

VorticityStepper::~VorticityStepper() = default;
VorticityStepper::VorticityStepper(VorticityStepper&&) noexcept = default;

StepStats VorticityStepper::advance(ScalarField& omega, const VelocityField& v,
                                    const BoundaryValues& omega_gamma,
                                    AdvectionScheme scheme) const {
    const Grid& g = *grid_;
    const std::size_t nr = g.n_r(), ns = g.n_s();
    StepStats st;
    st.dt = dt_;

    const auto wg_out = omega_gamma.grid_order(*geom_, 0);
    const auto wg_in = omega_gamma.grid_order(*geom_, 1);

    double mass_before = 0.0;
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < ns; ++j) mass_before += omega(i, j) * g.cell_area(i);

    // limited slopes (index space); radial edges stay first-order donor-cell
    std::vector<double> slope_r, slope_a;
    if (scheme == AdvectionScheme::minmod) {
        slope_r.assign(nr * ns, 0.0);
        slope_a.assign(nr * ns, 0.0);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < ns; ++j) {
                if (i > 0 && i + 1 < nr)
                    slope_r[i * ns + j] =
                        minmod(omega(i, j) - omega(i - 1, j), omega(i + 1, j) - omega(i, j));
                slope_a[i * ns + j] =
                    minmod(omega(i, j) - omega(i, g.jm(j)), omega(i, g.jp(j)) - omega(i, j));
            }
    }
    auto face_val_r = [&](std::size_t iface, std::size_t j, double u) -> double {
        if (iface == 0) return u >= 0.0 ? 0.5 * (wg_in[j] + wg_in[g.jp(j)]) : omega(0, j);
        if (iface == nr) return u < 0.0 ? 0.5 * (wg_out[j] + wg_out[g.jp(j)]) : omega(nr - 1, j);
        if (u >= 0.0) {
            double w = omega(iface - 1, j);
            if (scheme == AdvectionScheme::minmod) w += 0.5 * slope_r[(iface - 1) * ns + j];
            return w;
        }
        double w = omega(iface, j);
        if (scheme == AdvectionScheme::minmod) w -= 0.5 * slope_r[iface * ns + j];
        return w;
    };
    auto face_val_a = [&](std::size_t i, std::size_t jface, double u) -> double {
        if (u >= 0.0) {
            double w = omega(i, g.jm(jface));
            if (scheme == AdvectionScheme::minmod) w += 0.5 * slope_a[i * ns + g.jm(jface)];
            return w;
        }
        double w = omega(i, jface);
        if (scheme == AdvectionScheme::minmod) w -= 0.5 * slope_a[i * ns + jface];
        return w;
    };

    // advective fluxes in the +e_r / +e_theta directions
    std::vector<double> Fr((nr + 1) * ns), Fa(nr * ns);
    for (std::size_t i = 0; i <= nr; ++i) {
        const double L = g.radial_face_len(i);
        for (std::size_t j = 0; j < ns; ++j) {
            const double u = v.ur(i, j);
            Fr[i * ns + j] = u * L * face_val_r(i, j, u);
        }
    }
    const double dr = g.angular_face_len();
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < ns; ++j) {
            const double u = v.uth(i, j);
            Fa[i * ns + j] = u * dr * face_val_a(i, j, u);
        }

    // donor-cell CFL number
    double max_rate = 0.0;
    for (std::size_t i = 0; i < nr; ++i) {
        const double invV = 1.0 / g.cell_area(i);
        for (std::size_t j = 0; j < ns; ++j) {
            const double out = std::max(v.ur(i + 1, j), 0.0) * g.radial_face_len(i + 1) +
                               std::max(-v.ur(i, j), 0.0) * g.radial_face_len(i) +
                               std::max(v.uth(i, g.jp(j)), 0.0) * dr +
                               std::max(-v.uth(i, j), 0.0) * dr;
            max_rate = std::max(max_rate, out * invV);
        }
    }
    st.cfl = dt_ * max_rate;
    st.max_speed = v.max_face_speed();
    if (st.cfl > 1.0 + 1e-9)
        throw CflViolation("donor-cell number " + std::to_string(st.cfl) + " exceeds 1");

    for (std::size_t i = 0; i < nr; ++i) {
        const double c = dt_ / g.cell_area(i);
        for (std::size_t j = 0; j < ns; ++j)
            omega(i, j) -= c * (Fr[(i + 1) * ns + j] - Fr[i * ns + j] +
                                Fa[i * ns + g.jp(j)] - Fa[i * ns + j]);
    }
    for (std::size_t j = 0; j < ns; ++j) st.adv_boundary_flux += Fr[nr * ns + j] - Fr[j];

    if (impl_->viscous) {
        Eigen::VectorXd rhs(static_cast<Eigen::Index>(nr * ns));
        const double s = nu_ * dt_;
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < ns; ++j) {
                double r = omega(i, j) * g.cell_area(i);
                if (i == 0) r += s * impl_->coef_in * 0.5 * (wg_in[j] + wg_in[g.jp(j)]);
                if (i + 1 == nr) r += s * impl_->coef_out * 0.5 * (wg_out[j] + wg_out[g.jp(j)]);
                rhs[static_cast<Eigen::Index>(i * ns + j)] = r;
            }
        Eigen::VectorXd x = impl_->ldlt.solve(rhs);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < ns; ++j)
                omega(i, j) = x[static_cast<Eigen::Index>(i * ns + j)];
        for (std::size_t j = 0; j < ns; ++j) {
            const std::size_t jp = g.jp(j);
            st.diff_boundary_flux +=
                nu_ * impl_->coef_in * (0.5 * (wg_in[j] + wg_in[jp]) - omega(0, j)) +
                nu_ * impl_->coef_out * (0.5 * (wg_out[j] + wg_out[jp]) - omega(nr - 1, j));
        }
    }

    if (!omega.all_finite()) throw NanDetected("non-finite vorticity after step");

    double mass_after = 0.0;
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < ns; ++j) mass_after += omega(i, j) * g.cell_area(i);
    st.mass = mass_after;
    st.budget_residual =
        mass_after - mass_before + dt_ * st.adv_boundary_flux - dt_ * st.diff_boundary_flux;
    st.max_abs = omega.max_abs();
    return st;
}

// ---------------------------------------------------------------------------
// trajectory helpers

std::size_t Trajectory::snap_at(double t, double tol) const {
    for (std::size_t k = 0; k < snap_steps.size(); ++k)
        if (std::abs(times[snap_steps[k]] - t) <= tol) return k;
    throw MissingHistory("no snapshot at t = " + std::to_string(t));
}

namespace {

std::vector<double> snap_times_of(const Trajectory& traj) {
    std::vector<double> ts(traj.snap_steps.size());
    for (std::size_t k = 0; k < ts.size(); ++k) ts[k] = traj.times[traj.snap_steps[k]];
    return ts;
}

} // namespace

ScalarField trajectory_source(const Trajectory& traj, std::size_t snap) {
    if (!traj.windowed) return cutoff(traj.snaps[snap], traj.params.R);
    const auto ts = snap_times_of(traj);
    return window_average(std::span<const ScalarField>(traj.snaps.data(), traj.snaps.size()),
                          std::span<const double>(ts.data(), ts.size()), ts[snap],
                          traj.params.theta, traj.params.R, traj.params.T);
}

VelocityField trajectory_velocity(const Trajectory& traj, std::size_t snap,
                                  const StreamSolver& solver, const ReducedData& data) {
    const double t = traj.times[traj.snap_steps[snap]];
    const NodeField h = solver.solve(trajectory_source(traj, snap), data.A_at(t));
    return velocity_from_stream(h, *traj.grid);
}

namespace {

struct StepSetup {
    double dt = 0.0;
    std::size_t n_steps = 0;
};

StepSetup resolve_dt(const SolverParams& params, const Grid& grid, const VelocityField& v0) {
    StepSetup s;
    double dt = params.dt;
    if (dt <= 0.0) {
        double max_rate = 0.0;
        for (std::size_t i = 0; i < grid.n_r(); ++i) {
            const double invV = 1.0 / grid.cell_area(i);
            for (std::size_t j = 0; j < grid.n_s(); ++j) {
                const double tot = std::abs(v0.ur(i + 1, j)) * grid.radial_face_len(i + 1) +
                                   std::abs(v0.ur(i, j)) * grid.radial_face_len(i) +
                                   (std::abs(v0.uth(i, grid.jp(j))) + std::abs(v0.uth(i, j))) *
                                       grid.angular_face_len();
                max_rate = std::max(max_rate, tot * invV);
            }
        }
        dt = max_rate > 0.0 ? params.cfl / max_rate : params.T / 16.0;
        dt = std::min(dt, params.T / 16.0);
    }
    s.n_steps = std::max<std::size_t>(static_cast<std::size_t>(std::ceil(params.T / dt - 1e-9)), 1);
    s.dt = params.T / static_cast<double>(s.n_steps); // uniform steps, one factorization
    return s;
}

TraceSample make_trace(double t, const ReducedSlice& slice, const NodeField& h,
                       const ScalarField& omega, const DomainGeometry& geom, const Grid& grid) {
    TraceSample tr;
    tr.t = t;
    tr.a = slice.a;
    tr.v_dot_s = tangential_trace(h, geom, grid);
    tr.omega_gamma = boundary_vorticity(tr.v_dot_s, slice);
    tr.omega_trace = vorticity_trace(omega, geom, grid);
    return tr;
}

void fill_norm_stats(StepStats& st, const ScalarField& omega, const Grid& grid, double p) {
    st.max_abs = omega.max_abs();
    st.l2 = discrete_norm(omega, grid, 2.0);
    st.lp = std::isinf(p) ? st.max_abs : discrete_norm(omega, grid, p);
}

} // namespace

Trajectory march_coupled(const ReducedData& data, const Grid& grid, const DomainGeometry& geom,
                         SolverParams params) {
    Trajectory traj;
    traj.grid = &grid;
    traj.geom = &geom;
    traj.windowed = false;

    StreamSolver solver(grid, geom);
    ScalarField omega = data.omega0();
    omega.set_tag(Quantity::vorticity);
    traj.omega0 = omega;

    // the initial solve fixes the automatic time step
    ReducedSlice slice = data.at(0.0);
    NodeField h = solver.solve(cutoff(omega, params.R), slice.A);
    VelocityField v = velocity_from_stream(h, grid);
    const StepSetup su = resolve_dt(params, grid, v);
    params.dt = su.dt;
    traj.params = params;

    VorticityStepper stepper(grid, geom, params.nu, su.dt);

    for (std::size_t n = 0; n <= su.n_steps; ++n) {
        const double t = static_cast<double>(n) * su.dt;
        if (n > 0) {
            slice = data.at(t);
            h = solver.solve(cutoff(omega, params.R), slice.A);
            v = velocity_from_stream(h, grid);
        }
        traj.times.push_back(t);
        traj.traces.push_back(make_trace(t, slice, h, omega, geom, grid));
        if (n % params.snapshot_every == 0 || n == su.n_steps) {
            traj.snap_steps.push_back(n);
            traj.snaps.push_back(omega);
        }
        StepStats st;
        st.t = t;
        st.dt = su.dt;
        fill_norm_stats(st, omega, grid, params.p); // state at t_n
        if (n < su.n_steps) {
            const BoundaryValues wg = boundary_vorticity(tangential_trace(h, geom, grid), slice);
            const StepStats step = stepper.advance(omega, v, wg, params.advection);
            st.cfl = step.cfl;
            st.max_speed = step.max_speed;
            st.mass = step.mass;
            st.adv_boundary_flux = step.adv_boundary_flux;
            st.diff_boundary_flux = step.diff_boundary_flux;
            st.budget_residual = step.budget_residual;
        }
        traj.stats.push_back(st);
    }
    return traj;
}

PicardResult picard_slab(const ReducedData& data, const Grid& grid, const DomainGeometry& geom,
                         SolverParams params, std::size_t max_iters, double tol) {
    if (!(params.nu > 0.0)) throw ValidationError("picard_slab requires nu > 0");
    if (!(params.theta > 0.0)) throw BadTheta("picard_slab requires theta > 0");

    StreamSolver solver(grid, geom);
    ScalarField omega0 = data.omega0();
    omega0.set_tag(Quantity::vorticity);

    const ReducedSlice slice0 = data.at(0.0);
    const NodeField h0 = solver.solve(cutoff(omega0, params.R), slice0.A);
    const StepSetup su = resolve_dt(params, grid, velocity_from_stream(h0, grid));
    params.dt = su.dt;
    params.snapshot_every = 1; // the window needs every step

    std::vector<double> times(su.n_steps + 1);
    for (std::size_t n = 0; n <= su.n_steps; ++n) times[n] = static_cast<double>(n) * su.dt;

    VorticityStepper stepper(grid, geom, params.nu, su.dt);

    std::vector<ScalarField> prev(su.n_steps + 1, omega0);
    std::vector<ScalarField> next(su.n_steps + 1, omega0);

    PicardResult result;
    const std::span<const double> tspan(times.data(), times.size());

    for (std::size_t iter = 1; iter <= max_iters; ++iter) {
        ScalarField omega = omega0;
        next[0] = omega0;
        for (std::size_t n = 0; n < su.n_steps; ++n) {
            const std::span<const ScalarField> fspan(prev.data(), prev.size());
            const ScalarField win =
                window_average(fspan, tspan, times[n], params.theta, params.R, params.T);
            const ReducedSlice slice = data.at(times[n]);
            const NodeField h = solver.solve(win, slice.A);
            const VelocityField v = velocity_from_stream(h, grid);
            const BoundaryValues wg = boundary_vorticity(tangential_trace(h, geom, grid), slice);
            stepper.advance(omega, v, wg, params.advection);
            next[n + 1] = omega;
        }
        double diff = 0.0;
        for (std::size_t n = 0; n <= su.n_steps; ++n) {
            ScalarField d = next[n];
            for (std::size_t m = 0; m < d.data().size(); ++m) d.data()[m] -= prev[n].data()[m];
            diff = std::max(diff, discrete_norm(d, grid, 2.0));
        }
        if (!result.diffs.empty() && result.diffs.back() > 0.0)
            result.ratios.push_back(diff / result.diffs.back());
        result.diffs.push_back(diff);
        prev.swap(next);
        result.iterations = iter;
        if (diff < tol) {
            result.converged = true;
            break;
        }
    }
    if (!result.converged)
        throw NoConvergence("picard_slab: " + std::to_string(max_iters) +
                            " iterations, last diff " + std::to_string(result.diffs.back()) +
                            ", last ratio " +
                            std::to_string(result.ratios.empty() ? 0.0 : result.ratios.back()));

    // diagnostics pass over the converged trajectory
    Trajectory traj;
    traj.grid = &grid;
    traj.geom = &geom;
    traj.params = params;
    traj.windowed = true;
    traj.omega0 = omega0;
    traj.times = times;
    for (std::size_t n = 0; n <= su.n_steps; ++n) {
        const std::span<const ScalarField> fspan(prev.data(), prev.size());
        const ScalarField win =
            window_average(fspan, tspan, times[n], params.theta, params.R, params.T);
        const ReducedSlice slice = data.at(times[n]);
        const NodeField h = solver.solve(win, slice.A);
        traj.traces.push_back(make_trace(times[n], slice, h, prev[n], geom, grid));
        StepStats st;
        st.t = times[n];
        st.dt = su.dt;
        fill_norm_stats(st, prev[n], grid, params.p);
        traj.stats.push_back(st);
        traj.snap_steps.push_back(n);
        traj.snaps.push_back(prev[n]);
    }
    result.trajectory = std::move(traj);
    return result;
}

// ---------------------------------------------------------------------------
// extension field

ExtensionField::ExtensionField(const Trajectory& traj, const DomainGeometry& geom,
                               const Grid& grid, double delta, double ramp_width)
    : traj_(&traj), geom_(&geom), grid_(&grid), delta_(delta), ramp_width_(ramp_width) {}

double ExtensionField::trace_at(std::size_t comp, std::size_t j_cell, double t) const {
    const auto& times = traj_->times;
    const auto& bc = geom_->components()[comp];
    std::size_t k = 0;
    double lam = 0.0;
    if (times.size() > 1) {
        const double dt = times[1] - times[0];
        const double pos = (t - times.front()) / dt;
        k = static_cast<std::size_t>(std::clamp(pos, 0.0, double(times.size() - 2)));
        lam = std::clamp((t - times[k]) / (times[k + 1] - times[k]), 0.0, 1.0);
    }
    const std::size_t jp = (j_cell + 1) % bc.n_nodes;
    auto node_val = [&](std::size_t step, std::size_t j) {
        return traj_->traces[step].omega_gamma.comp[comp][bc.angle_index(j)];
    };
    const double v0 = 0.5 * (node_val(k, j_cell) + node_val(k, jp));
    if (times.size() == 1) return v0;
    const double v1 = 0.5 * (node_val(k + 1, j_cell) + node_val(k + 1, jp));
    return (1.0 - lam) * v0 + lam * v1;
}

double ExtensionField::value(std::size_t i, std::size_t j, double t) const {
    const double r = grid_->r_center(i);
    const double d = geom_->signed_distance_r(r);
    const double chi = 1.0 - smoothstep01(d / delta_);
    const double rho =
        ramp_width_ > 0.0 ? 1.0 - smoothstep01(t / ramp_width_) : (t <= 0.0 ? 1.0 : 0.0);
    double val = (1.0 - chi) * rho * traj_->omega0(i, j);
    if (chi > 0.0) {
        const std::size_t comp = (r >= 0.5 * (grid_->r_inner() + grid_->r_outer())) ? 0 : 1;
        val += chi * trace_at(comp, j, t);
    }
    return val;
}

ScalarField ExtensionField::sample(double t) const {
    ScalarField out(*grid_, Quantity::vorticity);
    for (std::size_t i = 0; i < grid_->n_r(); ++i)
        for (std::size_t j = 0; j < grid_->n_s(); ++j) out(i, j) = value(i, j, t);
    return out;
}

ExtensionField extend_boundary_vorticity(const Trajectory& traj, const DomainGeometry& geom,
                                         const Grid& grid, double delta) {
    if (!(delta > 0.0) || delta > 0.5 * geom.sigma0() + 1e-12)
        throw BadDelta("delta = " + std::to_string(delta) + " outside (0, sigma0/2]");
    const double ramp = std::max(2.0 * traj.params.theta, 8.0 * traj.dt());
    return ExtensionField(traj, geom, grid, delta, ramp);
}

} // namespace slipstream
