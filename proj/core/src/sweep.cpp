#include "slipstream/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "slipstream/errors.hpp"
#include "slipstream/snapshot.hpp"

namespace slipstream {

namespace {

std::shared_ptr<DomainGeometry> build_geometry(const GeometryConfig& g, std::size_t n_nodes) {
    if (g.kind == DomainKind::annulus)
        return std::make_shared<DomainGeometry>(
            DomainGeometry::annulus(g.r_inner, g.r_outer, n_nodes));
    return std::make_shared<DomainGeometry>(
        DomainGeometry::disk(g.r_outer, g.core_radius, n_nodes));
}

// angular center and half width of the inflow arc on the outer circle
std::pair<double, double> inflow_arc(const ReducedData& data, double t) {
    const auto& bc = data.geom().outer();
    BoundaryData probe; // sampling helper only
    const BoundaryValues a = data.at(t).a;
    double cx = 0.0, cy = 0.0;
    std::vector<double> angles;
    for (std::size_t m = 0; m < bc.n_nodes; ++m) {
        if (a.comp[0][m] < -1e-12) {
            const double th = std::atan2(bc.position[m].y, bc.position[m].x);
            angles.push_back(th);
            cx += std::cos(th);
            cy += std::sin(th);
        }
    }
    (void)probe;
    if (angles.empty()) return {std::acos(-1.0), 0.5 * std::acos(-1.0)};
    const double center = std::atan2(cy, cx);
    double hw = 0.0;
    for (double th : angles) {
        double d = std::fmod(th - center, Grid::two_pi());
        if (d > 0.5 * Grid::two_pi()) d -= Grid::two_pi();
        if (d < -0.5 * Grid::two_pi()) d += Grid::two_pi();
        hw = std::max(hw, std::abs(d));
    }
    hw += 0.5 * Grid::two_pi() / static_cast<double>(bc.n_nodes);
    return {center, hw};
}

void write_run_log(const std::filesystem::path& path, const Trajectory& traj) {
    std::ofstream os(path);
    os << "t,dt,max_abs_omega,l2,lp,mass,cfl,max_speed,adv_boundary_flux,diff_boundary_flux,"
          "budget_residual\n";
    os.precision(17);
    for (const auto& st : traj.stats)
        os << st.t << "," << st.dt << "," << st.max_abs << "," << st.l2 << "," << st.lp << ","
           << st.mass << "," << st.cfl << "," << st.max_speed << "," << st.adv_boundary_flux << ","
           << st.diff_boundary_flux << "," << st.budget_residual << "\n";
}

void write_snapshots_dir(const std::filesystem::path& dir, const Trajectory& traj) {
    std::filesystem::create_directories(dir);
    for (std::size_t k = 0; k < traj.n_snaps(); ++k) {
        std::ostringstream name;
        name << "field_" << std::setfill('0') << std::setw(5) << traj.snap_steps[k] << ".dat";
        write_snapshot(dir / name.str(), traj.snaps[k], traj.snap_time(k));
    }
}

} // namespace

unsigned worker_count() {
    if (const char* env = std::getenv("SLIPSTREAM_WORKERS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

double final_field_distance(const RunArtifacts& a, const RunArtifacts& b) {
    const ScalarField& fa = a.trajectory->snaps.back();
    const ScalarField& fb = b.trajectory->snaps.back();
    ScalarField d = fa;
    for (std::size_t m = 0; m < d.data().size(); ++m) d.data()[m] -= fb.data()[m];
    return discrete_norm(d, *a.grid, 2.0);
}

RunArtifacts run_single(const RunConfig& cfg_in, const std::filesystem::path& outdir,
                        bool keep_trajectory) {
    RunConfig cfg = cfg_in;
    validate_config(cfg);

    RunArtifacts art;
    art.dir = outdir;
    art.geom = build_geometry(cfg.geometry, cfg.geometry.n_s);
    const double r_in = cfg.geometry.kind == DomainKind::annulus ? cfg.geometry.r_inner
                                                                 : cfg.geometry.core_radius;
    art.grid = std::make_shared<Grid>(r_in, cfg.geometry.r_outer, cfg.geometry.n_r,
                                      cfg.geometry.n_s);

    BoundaryData raw = make_scenario_data(cfg.scenario_name, *art.geom, *art.grid,
                                          cfg.scenario_params);
    // flux compatibility, strict, at a few time levels
    for (double t : {0.0, 0.5 * cfg.solver.T, cfg.solver.T})
        check_compatibility(raw, *art.geom, t, /*strict=*/true);

    ReducedData rd = reduce_boundary_data(raw, *art.geom, *art.grid);
    if (cfg.solver.theta > 0.0) rd = mollify_data(rd, raw.omega0, cfg.solver.theta, cfg.solver.T);
    art.data = std::make_shared<ReducedData>(std::move(rd));

    if (cfg.mode == RunMode::march) {
        art.trajectory = std::make_shared<Trajectory>(
            march_coupled(*art.data, *art.grid, *art.geom, cfg.solver));
    } else {
        art.picard = picard_slab(*art.data, *art.grid, *art.geom, cfg.solver,
                                 cfg.picard_max_iters, cfg.picard_tol);
        art.trajectory = std::make_shared<Trajectory>(std::move(art.picard->trajectory));
    }
    const Trajectory& traj = *art.trajectory;
    art.solver = std::make_shared<StreamSolver>(*art.grid, *art.geom, cfg.stream_method);

    // per-run checks
    if (cfg.check_enabled("max_principle") && cfg.solver.nu > 0.0)
        art.report.add(max_principle_check(traj, *art.data));

    if (cfg.check_enabled("lp_budget") && std::isfinite(cfg.solver.p)) {
        LpBudget budget = lp_budget(traj, *art.data, cfg.solver.p, traj.horizon(), true,
                                    1e-8 * std::max(1.0, traj.stats.front().lp));
        art.report.add(budget.inequality);
        art.report.add(budget.equality);
    }

    if (cfg.check_enabled("gronwall") && cfg.solver.theta > 0.0 && std::isfinite(cfg.solver.p)) {
        EstimateEntry e = make_entry("gronwall_run", traj);
        e.t0 = traj.horizon();
        try {
            const GronwallSeries s =
                gronwall_series_from_run(traj, *art.data, *art.solver, cfg.solver.p);
            const GronwallResult r = discrete_gronwall_bound(s.t, s.y, s.D, s.B, cfg.solver.theta,
                                                             traj.horizon());
            double worst = 0.0;
            for (std::size_t i = 0; i < r.t.size(); ++i)
                worst = std::max(worst, r.y[i] - r.bound_aaa[i]);
            e.lhs = worst;
            e.rhs = 0.0;
            e.pass = r.hypothesis_ok && r.conclusion_ok;
            e.note = "cp=" + std::to_string(s.measured_cp);
        } catch (const HypothesisFailed& ex) {
            e.pass = false;
            e.note = ex.what();
        }
        e.slack = e.rhs - e.lhs;
        art.report.add(e);
    }

    if (cfg.check_enabled("trace")) {
        EstimateEntry e = make_entry("normal_trace", traj);
        e.t0 = traj.horizon();
        const VelocityField v =
            trajectory_velocity(traj, traj.n_snaps() - 1, *art.solver, *art.data);
        e.lhs = normal_trace_error(v, art.data->at(traj.horizon()).a, *art.geom, *art.grid);
        e.rhs = 0.0;
        e.slack = -e.lhs;
        e.pass = true; // informational; refinement studies set the decay targets
        art.report.add(e);
    }

    if (cfg.check_enabled("slip_residual")) {
        EstimateEntry e = make_entry("slip_residual_gap", traj);
        const double t = traj.horizon();
        e.t0 = t;
        const std::size_t k = traj.n_snaps() - 1;
        const NodeField h = art.solver->solve(trajectory_source(traj, k), art.data->A_at(t));
        const SlipResiduals sr =
            slip_residual(h, traj.snaps[k], art.data->at(t), *art.geom, *art.grid);
        e.lhs = sr.max_gap;
        e.rhs = 0.0;
        e.slack = -e.lhs;
        e.pass = true;
        e.note = "direct=" + std::to_string(sr.max_direct) +
                 " reduced=" + std::to_string(sr.max_reduced);
        art.report.add(e);
    }

    if (cfg.check_enabled("weak_form")) {
        const auto arc = inflow_arc(*art.data, 0.5 * traj.horizon());
        for (const TestFunction& psi :
             builtin_test_functions(*art.geom, traj.horizon(), arc.first, arc.second)) {
            EstimateEntry e = make_entry("weak_form_" + psi.name, traj);
            e.t0 = traj.horizon();
            e.lhs = weak_form_residual(traj, *art.data, *art.solver, psi);
            e.rhs = 0.0;
            e.slack = -e.lhs;
            e.pass = true; // refinement decay is checked across runs
            art.report.add(e);
        }
    }

    if (cfg.check_enabled("q_sweep")) {
        const double qs[] = {4.0, 8.0, 16.0, 32.0};
        art.report.append(p_infinity_sweep(traj, *art.data, qs, 4.0));
    }

    if (cfg.check_enabled("time_lipschitz") && traj.n_snaps() >= 17 && std::isfinite(cfg.solver.p)) {
        const std::size_t deltas[] = {2, 4, 8, 16};
        art.report.add(time_lipschitz_check(traj, *art.solver, cfg.solver.p, deltas));
    }

    art.pass = art.report.all_pass();

    if (!outdir.empty()) {
        std::filesystem::create_directories(outdir);
        std::ofstream(outdir / "resolved_config.ini") << resolved_config_text(cfg);
        write_run_log(outdir / "run_log.csv", traj);
        art.report.write_csv(outdir / "report.csv");
        if (cfg.output.write_snapshots) write_snapshots_dir(outdir / "snapshots", traj);
    }

    if (!keep_trajectory) {
        art.trajectory.reset();
        art.solver.reset();
    }
    return art;
}

SweepResult viscosity_sweep_report(const RunConfig& cfg, const std::filesystem::path& outdir) {
    if (cfg.sweep.nu_list.empty())
        throw ValidationError("sweep requires a non-empty nu_list");

    SweepResult res;
    res.nu_values = cfg.sweep.nu_list;
    res.nu_values.push_back(0.0); // the inviscid reference run

    const std::size_t n = res.nu_values.size();
    res.runs.resize(n);
    std::vector<std::exception_ptr> errors(n);

    std::atomic<std::size_t> next{0};
    const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(n));
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                RunConfig rc = cfg;
                rc.solver.nu = res.nu_values[i];
                rc.sweep = SweepConfig{};
                if (rc.solver.snapshot_every <= 1) rc.solver.snapshot_every = 4;
                std::ostringstream dir;
                dir << "nu_" << res.nu_values[i];
                const std::filesystem::path sub =
                    outdir.empty() ? std::filesystem::path{} : outdir / dir.str();
                res.runs[i] = run_single(rc, sub, /*keep_trajectory=*/true);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);

    // vanishing-viscosity diagnostics (nu_list order, then distance to nu = 0)
    const std::size_t m = cfg.sweep.nu_list.size();
    for (std::size_t i = 0; i + 1 < m; ++i)
        res.consecutive_l2.push_back(final_field_distance(res.runs[i], res.runs[i + 1]));
    for (std::size_t i = 0; i < m; ++i)
        res.to_inviscid_l2.push_back(final_field_distance(res.runs[i], res.runs[m]));

    // inflow-strip functional at sigma = 16 dr per run
    for (std::size_t i = 0; i < n; ++i) {
        const RunArtifacts& run = res.runs[i];
        const Trajectory& traj = *run.trajectory;
        const double sigma = 16.0 * run.grid->dr();
        const double delta = traj.params.delta > 0.0 ? traj.params.delta
                                                     : 0.5 * run.geom->sigma0();
        const ExtensionField breve =
            extend_boundary_vorticity(traj, *run.geom, *run.grid, delta);
        const auto arc = inflow_arc(*run.data, 0.5 * traj.horizon());
        const auto fns = builtin_test_functions(*run.geom, traj.horizon(), arc.first, arc.second);
        res.strip_at_16dx.push_back(strip_flux_functional(traj, breve, *run.solver, *run.data,
                                                          sigma, traj.params.p, fns[1]));
    }

    auto monotone_entry = [&](const std::string& name, const std::vector<double>& v) {
        EstimateEntry e;
        e.name = name;
        e.grid = std::to_string(cfg.geometry.n_r) + "x" + std::to_string(cfg.geometry.n_s);
        e.p = cfg.solver.p;
        double worst = 0.0;
        for (std::size_t i = 0; i + 1 < v.size(); ++i)
            if (v[i] > 0.0) worst = std::max(worst, v[i + 1] / v[i]);
        e.lhs = worst;
        e.rhs = 1.10; // decreasing with 10 percent slack
        e.slack = e.rhs - e.lhs;
        e.pass = worst <= 1.10;
        return e;
    };
    res.summary.add(monotone_entry("sweep_nu_cauchy", res.consecutive_l2));
    res.summary.add(monotone_entry("sweep_nu_to_inviscid", res.to_inviscid_l2));
    res.summary.add(monotone_entry("sweep_strip_nu",
                                   std::vector<double>(res.strip_at_16dx.begin(),
                                                       res.strip_at_16dx.begin() + m)));

    res.pass = res.summary.all_pass();
    for (const auto& run : res.runs) res.pass = res.pass && run.pass;

    if (!outdir.empty()) {
        std::filesystem::create_directories(outdir);
        std::ofstream os(outdir / "sweep_summary.csv");
        os << "nu,final_l2,consecutive_diff,to_inviscid,strip_16dx,run_pass\n";
        os.precision(17);
        for (std::size_t i = 0; i < n; ++i) {
            os << res.nu_values[i] << ","
               << discrete_norm(res.runs[i].trajectory->snaps.back(), *res.runs[i].grid, 2.0)
               << ",";
            if (i + 1 < m) os << res.consecutive_l2[i];
            os << ",";
            if (i < m) os << res.to_inviscid_l2[i];
            os << "," << res.strip_at_16dx[i] << "," << (res.runs[i].pass ? 1 : 0) << "\n";
        }
        res.summary.write_csv(outdir / "sweep_report.csv");
    }
    return res;
}

} // namespace slipstream
