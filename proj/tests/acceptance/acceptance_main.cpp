// Acceptance suite: every verification target of the project, one pass/fail
// line per criterion. Exit code 0 iff all criteria pass.

#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <numbers>
#include <sstream>
#include <vector>

#include "slipstream/errors.hpp"
#include "slipstream/estimates.hpp"
#include "slipstream/scenario.hpp"
#include "slipstream/sweep.hpp"

using namespace slipstream;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
    int id;
    std::string label;
    bool pass = false;
    std::string detail;
};

std::vector<Outcome> g_results;

void record(int id, const std::string& label, bool pass, const std::string& detail) {
    g_results.push_back({id, label, pass, detail});
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << id << " " << label << ": " << detail << "\n"
              << std::flush;
}

template <typename Fn>
void criterion(int id, const std::string& label, Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        record(id, label, false, std::string("exception: ") + e.what());
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

struct Case {
    std::shared_ptr<DomainGeometry> geom;
    std::shared_ptr<Grid> grid;
    std::shared_ptr<ReducedData> data;
    std::shared_ptr<StreamSolver> solver;
    std::shared_ptr<Trajectory> traj;
};

Case run_case(const std::string& scenario, std::size_t nr, std::size_t ns, SolverParams prm,
              const ScenarioParams& sp = {}, bool mollify = false) {
    Case c;
    c.geom = std::make_shared<DomainGeometry>(DomainGeometry::annulus(0.5, 1.0, ns));
    c.grid = std::make_shared<Grid>(0.5, 1.0, nr, ns);
    BoundaryData raw = make_scenario_data(scenario, *c.geom, *c.grid, sp);
    ReducedData rd = reduce_boundary_data(raw, *c.geom, *c.grid);
    if (mollify) rd = mollify_data(rd, raw.omega0, prm.theta, prm.T);
    c.data = std::make_shared<ReducedData>(std::move(rd));
    c.traj = std::make_shared<Trajectory>(march_coupled(*c.data, *c.grid, *c.geom, prm));
    c.solver = std::make_shared<StreamSolver>(*c.grid, *c.geom);
    return c;
}

double max_abs_minus(const ScalarField& f, double c) {
    double m = 0.0;
    for (double x : f.data()) m = std::max(m, std::abs(x - c));
    return m;
}

// ---------------------------------------------------------------------------

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    auto max_err = [](std::size_t nr, std::size_t ns) {
        const auto geom = DomainGeometry::annulus(0.5, 1.0, ns);
        const Grid grid(0.5, 1.0, nr, ns);
        StreamSolver solver(grid, geom);
        ScalarField f(grid);
        for (std::size_t i = 0; i < grid.n_r(); ++i) {
            const double r = grid.r_center(i);
            for (std::size_t j = 0; j < grid.n_s(); ++j)
                f(i, j) = (4.5 / r - 2.0 / (r * r)) * std::sin(2.0 * grid.theta_center(j));
        }
        const NodeField h = solver.solve(f, BoundaryValues::zeros(geom));
        double err = 0.0;
        for (std::size_t i = 0; i <= grid.n_r(); ++i) {
            const double pr = (grid.r_node(i) - 0.5) * (1.0 - grid.r_node(i));
            for (std::size_t j = 0; j < grid.n_s(); ++j)
                err = std::max(err, std::abs(h(i, j) - pr * std::sin(2.0 * grid.theta_node(j))));
        }
        return err;
    };
    const double e64 = max_err(64, 128);
    const double e128 = max_err(128, 256);
    const double ratio = e64 / e128;
    const double secs = seconds_since(t0);
    record(1, "elliptic-convergence", ratio >= 3.0 && ratio <= 5.0 && secs < 10.0,
           "Linf ratio 64->128 = " + fmt(ratio) + " (target [3,5]), err128 = " + fmt(e128) +
               ", " + fmt(secs) + " s (< 10 s)");
}

void criterion_2() {
    ScenarioParams sp;
    sp.values["eps"] = 0.3;
    auto run = [&](std::size_t nr, std::size_t ns) {
        SolverParams prm;
        prm.nu = 1e-2;
        prm.T = 0.5;
        return run_case("uniform_throughflow", nr, ns, prm, sp);
    };
    const Case a = run(64, 128);
    const Case b = run(128, 256);

    const double wmax = a.traj->snaps.back().max_abs();
    const double wmax_b = b.traj->snaps.back().max_abs();

    auto trace_err = [](const Case& c) {
        const VelocityField v =
            trajectory_velocity(*c.traj, c.traj->n_snaps() - 1, *c.solver, *c.data);
        return normal_trace_error(v, c.data->at(c.traj->horizon()).a, *c.geom, *c.grid);
    };
    const double ta = trace_err(a), tb = trace_err(b);

    auto slip = [](const Case& c) {
        const std::size_t k = c.traj->n_snaps() - 1;
        const double t = c.traj->horizon();
        const NodeField h = c.solver->solve(trajectory_source(*c.traj, k), c.data->A_at(t));
        return slip_residual(h, c.traj->snaps[k], c.data->at(t), *c.geom, *c.grid);
    };
    const double sa = slip(a).max_direct, sb = slip(b).max_direct;

    const bool pass = wmax < 1e-10 && wmax_b < 1e-10 && ta / tb > 3.0 && ta / tb < 5.0 &&
                      sa / sb > 1.5 && sb < 2e-2;
    record(2, "uniform-throughflow-exactness", pass,
           "max|w(T)| = " + fmt(std::max(wmax, wmax_b)) + " (< 1e-10), trace err ratio = " +
               fmt(ta / tb) + " (second order), slip residual " + fmt(sa) + " -> " + fmt(sb));
}

void criterion_3() {
    bool steady_ok = true;
    double worst = 0.0;
    for (double nu : {0.0, 1e-2}) {
        SolverParams prm;
        prm.nu = nu;
        prm.T = 1.0;
        const Case c = run_case("solid_rotation", 64, 128, prm);
        const double err = max_abs_minus(c.traj->snaps.back(), 1.0);
        worst = std::max(worst, err);
        steady_ok = steady_ok && err < 1e-8;
    }

    auto gap = [](std::size_t nr, std::size_t ns) {
        SolverParams prm;
        prm.nu = 1e-2;
        prm.T = 0.25;
        const Case c = run_case("solid_rotation", nr, ns, prm);
        const std::size_t k = c.traj->n_snaps() - 1;
        const double t = c.traj->horizon();
        const NodeField h = c.solver->solve(trajectory_source(*c.traj, k), c.data->A_at(t));
        return slip_residual(h, c.traj->snaps[k], c.data->at(t), *c.geom, *c.grid).max_gap;
    };
    const double g64 = gap(64, 128), g128 = gap(128, 256);
    const bool pass = steady_ok && g128 < 1e-2 && g64 / g128 >= 2.0;
    record(3, "solid-rotation-steady-state", pass,
           "max|w(1) - 1| = " + fmt(worst) + " (< 1e-8, nu in {0, 1e-2}), slip gap " + fmt(g64) +
               " -> " + fmt(g128) + " (< 1e-2 and halving)");
}

void criterion_4() {
    bool all = true;
    double min_slack = kInf;
    int runs = 0;
    for (const std::string scen :
         {"zero", "solid_rotation", "uniform_throughflow", "shear_inflow"}) {
        for (double nu : {1e-1, 1e-2, 1e-3}) {
            SolverParams prm;
            prm.nu = nu;
            prm.T = 0.5;
            const Case c = run_case(scen, 48, 96, prm);
            const EstimateEntry e = max_principle_check(*c.traj, *c.data);
            all = all && e.pass;
            min_slack = std::min(min_slack, e.slack);
            ++runs;
        }
    }
    record(4, "maximum-principle", all,
           std::to_string(runs) + " runs over the registry x nu in {1e-1,1e-2,1e-3} "
           "(custom_table needs a table and is exercised in the unit tests), min slack = " +
               fmt(min_slack) + " (>= -1e-8)");
}

struct C5Result {
    Case finest;
    bool pass = false;
};

C5Result criterion_5() {
    C5Result out;
    const double T = 0.4;
    const std::size_t base_steps = 128;
    std::vector<Case> cases;
    std::vector<double> imbalance;
    for (std::size_t level = 0; level < 3; ++level) {
        const std::size_t nr = 64 << level;
        SolverParams prm;
        prm.nu = 1e-3;
        prm.T = T;
        prm.p = 4.0;
        prm.dt = T / static_cast<double>(base_steps << level);
        prm.snapshot_every = 4 << level; // snapshot times align across levels
        cases.push_back(run_case("shear_inflow", nr, 2 * nr, prm));
        const LpBudget b =
            lp_budget(*cases.back().traj, *cases.back().data, 4.0, T, true, 0.0);
        imbalance.push_back(b.equality_rel_imbalance);
    }

    // inequality at every shared snapshot time on the finest grid, with the
    // Richardson slack taken from the two finest levels
    bool ineq_all = true;
    double worst_margin = kInf;
    const Trajectory& fine = *cases[2].traj;
    for (std::size_t k = 0; k < fine.n_snaps(); ++k) {
        const double t0 = fine.snap_time(k);
        if (t0 == 0.0) continue;
        const LpBudget bf = lp_budget(fine, *cases[2].data, 4.0, t0, false, 0.0);
        const LpBudget bm = lp_budget(*cases[1].traj, *cases[1].data, 4.0, t0, false, 0.0);
        const double eps_disc =
            std::abs((bf.inequality.rhs - bf.inequality.lhs) -
                     (bm.inequality.rhs - bm.inequality.lhs));
        const bool ok = bf.inequality.lhs <= bf.inequality.rhs + eps_disc + 1e-12;
        ineq_all = ineq_all && ok;
        worst_margin = std::min(worst_margin, bf.inequality.slack + eps_disc);
    }

    const bool monotone = imbalance[0] > imbalance[1] && imbalance[1] > imbalance[2];
    out.pass = ineq_all && imbalance[2] < 0.05 && monotone;
    record(5, "lp-gronwall-budget", out.pass,
           "inequality at all t0 (worst margin " + fmt(worst_margin) +
               "), equality imbalance 64/128/256 = " + fmt(imbalance[0]) + "/" +
               fmt(imbalance[1]) + "/" + fmt(imbalance[2]) + " (< 5% and improving)");
    out.finest = cases[2];
    return out;
}

void criterion_6(const PicardResult& picard, const Case& pc) {
    // analytic case: y = e^t, D = 1, B = 0, theta = 0.01, sampled at 1e-3 on
    // [0, 1]; the series extends one window beyond the horizon so the forward
    // average is untruncated there
    const double theta = 0.01, T = 1.0;
    std::vector<double> t, y, D, B;
    for (int k = 0; t.empty() || t.back() < T + theta - 1e-12; ++k) {
        t.push_back(k * 1e-3);
        y.push_back(std::exp(t.back()));
        D.push_back(1.0);
        B.push_back(0.0);
    }
    bool analytic_ok = false, bound_tight = true;
    try {
        const GronwallResult r = discrete_gronwall_bound(t, y, D, B, theta, T);
        analytic_ok = r.hypothesis_ok && r.conclusion_ok;
        for (std::size_t k = 0; k < r.t.size() && r.t[k] <= T; ++k)
            if (std::abs(r.bound[k] - 2.0 * std::exp(r.t[k])) > 1e-5 * std::exp(r.t[k]))
                bound_tight = false;
    } catch (const HypothesisFailed&) {
        analytic_ok = false;
    }

    // solver case: y(t) = ||w||_p^p of the Picard slab with D, B measured
    bool solver_ok = false;
    double worst_aaa = 0.0;
    try {
        const GronwallSeries s =
            gronwall_series_from_run(picard.trajectory, *pc.data, *pc.solver, 4.0);
        const GronwallResult r = discrete_gronwall_bound(
            s.t, s.y, s.D, s.B, picard.trajectory.params.theta, picard.trajectory.horizon());
        solver_ok = r.hypothesis_ok && r.conclusion_ok;
        for (std::size_t k = 0; k < r.t.size(); ++k)
            worst_aaa = std::max(worst_aaa, r.y[k] - r.bound_aaa[k]);
        solver_ok = solver_ok && worst_aaa <= 1e-9;
    } catch (const HypothesisFailed& e) {
        solver_ok = false;
    }
    record(6, "discrete-gronwall-checker", analytic_ok && bound_tight && solver_ok,
           std::string("analytic e^t case ") + (analytic_ok ? "verified" : "FAILED") +
               " (bound = 2 e^t), solver budget chain " + (solver_ok ? "holds" : "FAILED") +
               " (worst AAA defect " + fmt(worst_aaa) + ")");
}

SweepResult criterion_7() {
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg;
    cfg.geometry.n_r = 128;
    cfg.geometry.n_s = 256;
    cfg.scenario_name = "shear_inflow";
    cfg.solver.nu = 1e-3;
    cfg.solver.T = 0.4;
    cfg.solver.p = 4.0;
    cfg.output.checks = {"max_principle", "lp_budget"};
    cfg.output.write_snapshots = false;
    cfg.sweep.nu_list = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
    SweepResult res = viscosity_sweep_report(cfg, {});
    const double secs = seconds_since(t0);

    auto ratio_ok = [](const std::vector<double>& v) {
        for (std::size_t i = 0; i + 1 < v.size(); ++i)
            if (v[i + 1] > 1.10 * v[i]) return false;
        return true;
    };
    const bool pass = ratio_ok(res.consecutive_l2) && ratio_ok(res.to_inviscid_l2) &&
                      secs < 900.0;
    std::ostringstream d;
    d.precision(3);
    d << "consecutive L2 diffs:";
    for (double v : res.consecutive_l2) d << " " << v;
    d << "; to nu=0:";
    for (double v : res.to_inviscid_l2) d << " " << v;
    d << "; " << fmt(secs) << " s (< 900 s)";
    record(7, "vanishing-viscosity-sweep", pass, d.str());
    return res;
}

void criterion_8(const SweepResult& sweep, const Case& fine, const Case& fine0) {
    // (a) strip functional at sigma = 16 dx decreases along the nu sweep
    bool nu_decreasing = true;
    const std::size_t m = sweep.nu_values.size() - 1; // last entry is nu = 0
    for (std::size_t i = 0; i + 1 < m; ++i)
        if (sweep.strip_at_16dx[i + 1] > 1.10 * sweep.strip_at_16dx[i]) nu_decreasing = false;

    // (b) sigma sweep at nu = 1e-3 on the 256x512 run, after subtracting the
    // nu = 0 discretization floor at the same grid and sigma
    const auto arcfns =
        builtin_test_functions(*fine.geom, fine.traj->horizon(), kPi, kPi / 2.0);
    const TestFunction& collar = arcfns[1];
    const double delta = 0.5 * fine.geom->sigma0();
    const ExtensionField breve = extend_boundary_vorticity(*fine.traj, *fine.geom, *fine.grid, delta);
    const ExtensionField breve0 =
        extend_boundary_vorticity(*fine0.traj, *fine0.geom, *fine0.grid, delta);
    std::vector<double> values;
    bool sigma_decreasing = true;
    double prev = kInf;
    for (double mult : {32.0, 16.0, 8.0}) {
        const double sigma = mult * fine.grid->dr();
        const double f = strip_flux_functional(*fine.traj, breve, *fine.solver, *fine.data,
                                               sigma, 4.0, collar);
        const double floor = strip_flux_functional(*fine0.traj, breve0, *fine0.solver,
                                                   *fine0.data, sigma, 4.0, collar);
        const double v = f - floor;
        values.push_back(v);
        if (v > prev * (1.0 + 1e-9)) sigma_decreasing = false;
        prev = v;
    }

    // (c) initial-time strip functional decreases over sigma_t = {16, 8, 4} dt
    const RunArtifacts& nu3 = sweep.runs[m - 1]; // nu = 1e-3 run of the sweep
    const ExtensionField b3 =
        extend_boundary_vorticity(*nu3.trajectory, *nu3.geom, *nu3.grid,
                                  0.5 * nu3.geom->sigma0());
    const auto fns3 =
        builtin_test_functions(*nu3.geom, nu3.trajectory->horizon(), kPi, kPi / 2.0);
    bool time_decreasing = true;
    double prev_t = kInf;
    std::vector<double> tvals;
    for (double mult : {16.0, 8.0, 4.0}) {
        const double v =
            time_strip_functional(*nu3.trajectory, b3, mult * nu3.trajectory->dt(), 4.0, fns3[0]);
        tvals.push_back(v);
        if (v > prev_t * (1.0 + 1e-9)) time_decreasing = false;
        prev_t = v;
    }

    std::ostringstream d;
    d.precision(3);
    d << "strip(16dx) over nu:";
    for (std::size_t i = 0; i < m; ++i) d << " " << sweep.strip_at_16dx[i];
    d << "; floor-subtracted sigma sweep {32,16,8}dx:";
    for (double v : values) d << " " << v;
    d << "; time strip {16,8,4}dt:";
    for (double v : tvals) d << " " << v;
    record(8, "boundary-strip-functionals", nu_decreasing && sigma_decreasing && time_decreasing,
           d.str());
}

void criterion_9() {
    std::vector<std::vector<double>> residuals; // per level, per test function
    for (std::size_t level = 0; level < 3; ++level) {
        const std::size_t nr = 32 << level;
        SolverParams prm;
        prm.nu = 1e-3;
        prm.T = 0.25;
        prm.dt = 4e-3 / static_cast<double>(1 << level);
        const Case c = run_case("shear_inflow", nr, 2 * nr, prm);
        const auto fns = builtin_test_functions(*c.geom, c.traj->horizon(), kPi, kPi / 2.0);
        std::vector<double> row;
        for (const auto& psi : fns)
            row.push_back(weak_form_residual(*c.traj, *c.data, *c.solver, psi));
        residuals.push_back(std::move(row));
    }
    bool pass = true;
    std::ostringstream d;
    d.precision(3);
    for (std::size_t f = 0; f < residuals[0].size(); ++f) {
        d << (f ? "; " : "") << "fn" << f << ":";
        for (std::size_t l = 0; l < residuals.size(); ++l) {
            d << " " << residuals[l][f];
            if (l > 0 && residuals[l][f] > residuals[l - 1][f] / 2.0) pass = false;
        }
    }
    record(9, "weak-form-residual-decay", pass, d.str() + " (>= 2x per refinement)");
}

struct C10Result {
    PicardResult picard;
    Case pc;
};

C10Result criterion_10() {
    C10Result out;
    // through-flow slab: convergence and the contraction diagnostic
    SolverParams prm;
    prm.nu = 1e-2;
    prm.theta = 0.05;
    prm.T = 0.25;
    prm.R = 1.0 / prm.theta;
    out.pc.geom = std::make_shared<DomainGeometry>(DomainGeometry::annulus(0.5, 1.0, 128));
    out.pc.grid = std::make_shared<Grid>(0.5, 1.0, 64, 128);
    BoundaryData raw = make_scenario_data("shear_inflow", *out.pc.geom, *out.pc.grid, {});
    ReducedData rd = reduce_boundary_data(raw, *out.pc.geom, *out.pc.grid);
    rd = mollify_data(rd, raw.omega0, prm.theta, prm.T);
    out.pc.data = std::make_shared<ReducedData>(std::move(rd));
    out.picard = picard_slab(*out.pc.data, *out.pc.grid, *out.pc.geom, prm, 30, 1e-8);
    out.pc.solver = std::make_shared<StreamSolver>(*out.pc.grid, *out.pc.geom);
    double max_ratio = 0.0;
    for (double r : out.picard.ratios) max_ratio = std::max(max_ratio, r);

    // window-insensitive steady case: the fixed point must match the march
    const auto geom_s = std::make_shared<DomainGeometry>(DomainGeometry::annulus(0.5, 1.0, 128));
    const auto grid_s = std::make_shared<Grid>(0.5, 1.0, 64, 128);
    BoundaryData raw_s = make_scenario_data("solid_rotation", *geom_s, *grid_s, {});
    const ReducedData rd_s = reduce_boundary_data(raw_s, *geom_s, *grid_s);
    const PicardResult pr_s = picard_slab(rd_s, *grid_s, *geom_s, prm, 30, 1e-8);
    SolverParams mprm = prm;
    mprm.theta = 0.0;
    mprm.R = kInf;
    const Trajectory march = march_coupled(rd_s, *grid_s, *geom_s, mprm);
    double gap = 0.0;
    for (std::size_t k = 0; k < pr_s.trajectory.n_snaps(); ++k) {
        const std::size_t km = march.snap_at(pr_s.trajectory.snap_time(k), 1e-9);
        for (std::size_t q = 0; q < pr_s.trajectory.snaps[k].data().size(); ++q)
            gap = std::max(gap, std::abs(pr_s.trajectory.snaps[k].data()[q] -
                                         march.snaps[km].data()[q]));
    }

    const bool pass = out.picard.converged && out.picard.iterations <= 30 && max_ratio < 1.0 &&
                      pr_s.converged && gap < 1e-6;
    record(10, "picard-slab-construction", pass,
           "through-flow: " + std::to_string(out.picard.iterations) +
               " iterations, contraction ratio " + fmt(max_ratio) +
               " (< 1); steady cross-check vs march: max gap " + fmt(gap) + " (< 1e-6)");
    return out;
}

void criterion_11(const SweepResult& sweep) {
    const std::size_t m = sweep.nu_values.size() - 1;
    const RunArtifacts& nu3 = sweep.runs[m - 1]; // nu = 1e-3 at 128x256
    const double qs[] = {4.0, 8.0, 16.0, 32.0};
    const EstimateReport rep = p_infinity_sweep(*nu3.trajectory, *nu3.data, qs, 4.0);
    bool pass = rep.all_pass();
    std::ostringstream d;
    d.precision(4);
    for (const auto& e : rep.entries)
        if (e.name == "inf2_budget") d << "q=" << e.p << " slack " << e.slack << "; ";
    d << (pass ? "normalized q-norms monotone to the max norm" : "a q-sweep entry FAILED");
    record(11, "p-infinity-passage", pass, d.str());
}

void criterion_12() {
    SolverParams prm;
    prm.nu = 0.0;
    prm.T = 0.25;
    const auto geom = std::make_shared<DomainGeometry>(DomainGeometry::annulus(0.5, 1.0, 128));
    const auto grid = std::make_shared<Grid>(0.5, 1.0, 64, 128);
    const BoundaryData base = make_scenario_data("shear_inflow", *geom, *grid, {});
    BoundaryData pert = base;
    const double margin = 4.0 * grid->dth();
    pert.b = [base, margin](std::size_t c, double s, double t) {
        double v = base.b(c, s, t);
        if (c == 0) {
            double th = std::fmod(s, Grid::two_pi());
            if (th > kPi) th -= Grid::two_pi();
            // outflow arc of a = a0 cos(s), kept clear of the sign change so
            // no inflow face sees the perturbation through node averaging
            if (std::abs(th) < 0.5 * kPi - margin) v += 5.0;
        }
        return v;
    };
    const Trajectory t0 =
        march_coupled(reduce_boundary_data(base, *geom, *grid), *grid, *geom, prm);
    const Trajectory t1 =
        march_coupled(reduce_boundary_data(pert, *geom, *grid), *grid, *geom, prm);
    bool identical = t0.snaps.size() == t1.snaps.size();
    for (std::size_t k = 0; identical && k < t0.snaps.size(); ++k)
        identical = std::memcmp(t0.snaps[k].data().data(), t1.snaps[k].data().data(),
                                t0.snaps[k].data().size() * sizeof(double)) == 0;
    record(12, "inviscid-boundary-locality", identical,
           std::string("g perturbed on outflow-only nodes: trajectories are ") +
               (identical ? "byte-identical" : "DIFFERENT") + " (" +
               std::to_string(t0.snaps.size()) + " snapshots compared)");
}

} // namespace

int main() {
    std::cout << "slipstream acceptance suite\n";
    const auto t_start = std::chrono::steady_clock::now();

    criterion(1, "elliptic-convergence", [] { criterion_1(); });
    criterion(2, "uniform-throughflow-exactness", [] { criterion_2(); });
    criterion(3, "solid-rotation-steady-state", [] { criterion_3(); });
    criterion(4, "maximum-principle", [] { criterion_4(); });

    // criterion 5 provides the 256x512 nu = 1e-3 trajectory reused in 8
    C5Result c5;
    criterion(5, "lp-gronwall-budget", [&] { c5 = criterion_5(); });

    C10Result c10;
    criterion(10, "picard-slab-construction", [&] { c10 = criterion_10(); });
    criterion(6, "discrete-gronwall-checker", [&] {
        if (!c10.picard.converged) throw NoConvergence("criterion 10 slab unavailable");
        criterion_6(c10.picard, c10.pc);
    });

    SweepResult sweep;
    criterion(7, "vanishing-viscosity-sweep", [&] { sweep = criterion_7(); });
    criterion(8, "boundary-strip-functionals", [&] {
        if (sweep.runs.empty() || !c5.finest.traj)
            throw MissingHistory("criterion 7/5 runs unavailable");
        // nu = 0 floor at the 256x512 grid and matching step layout
        SolverParams prm0 = c5.finest.traj->params;
        prm0.nu = 0.0;
        Case fine0;
        fine0.geom = c5.finest.geom;
        fine0.grid = c5.finest.grid;
        fine0.data = c5.finest.data;
        fine0.traj = std::make_shared<Trajectory>(
            march_coupled(*fine0.data, *fine0.grid, *fine0.geom, prm0));
        fine0.solver = c5.finest.solver;
        criterion_8(sweep, c5.finest, fine0);
    });
    criterion(9, "weak-form-residual-decay", [] { criterion_9(); });
    criterion(11, "p-infinity-passage", [&] {
        if (sweep.runs.empty()) throw MissingHistory("criterion 7 runs unavailable");
        criterion_11(sweep);
    });
    criterion(12, "inviscid-boundary-locality", [] { criterion_12(); });

    bool all = true;
    int n_pass = 0;
    for (const auto& r : g_results) {
        all = all && r.pass;
        n_pass += r.pass ? 1 : 0;
    }
    std::cout << "\n" << n_pass << "/" << g_results.size() << " criteria passed in "
              << fmt(seconds_since(t_start)) << " s\n";
    return all && g_results.size() == 12 ? 0 : 1;
}
