#include "slipstream/estimates.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <sstream>

#include "slipstream/errors.hpp"

namespace slipstream {

namespace {

constexpr double kSignEps = 1e-12;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

// cumulative trapezoid of f over the sample times, written into out
void cumtrapz(std::span<const double> t, std::span<const double> f, std::vector<double>& out) {
    out.assign(t.size(), 0.0);
    for (std::size_t i = 1; i < t.size(); ++i)
        out[i] = out[i - 1] + 0.5 * (f[i - 1] + f[i]) * (t[i] - t[i - 1]);
}

// forward window (1/theta) int_t^{t+theta} y of the piecewise-linear series,
// zero beyond the last sample
std::vector<double> forward_window(std::span<const double> t, std::span<const double> y,
                                   double theta) {
    std::vector<double> u(t.size(), 0.0);
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double a = t[i], b = t[i] + theta;
        double acc = 0.0;
        for (std::size_t k = 0; k + 1 < t.size(); ++k) {
            const double lo = std::max(t[k], a);
            const double hi = std::min(t[k + 1], b);
            if (hi <= lo) continue;
            const double span = t[k + 1] - t[k];
            const double la = (lo - t[k]) / span, lb = (hi - t[k]) / span;
            const double ya = y[k] + la * (y[k + 1] - y[k]);
            const double yb = y[k] + lb * (y[k + 1] - y[k]);
            acc += 0.5 * (ya + yb) * (hi - lo);
        }
        u[i] = acc / theta;
    }
    return u;
}

double pow_p(double x, double p) { return std::pow(std::abs(x), p); }

// boundary integrals of the trace sample restricted to the inflow/outflow
// regions labeled by the sign of a
struct BoundaryTerms {
    double inflow_abs = 0.0;     // int_{Gamma-} |a| |w_Gamma|^p
    double inflow_signed = 0.0;  // int_{Gamma-} a |w_Gamma|^p
    double outflow_abs = 0.0;    // int_{Gamma+} |a| |w_trace|^p
};

BoundaryTerms boundary_terms(const TraceSample& tr, const DomainGeometry& geom, double p) {
    BoundaryTerms bt;
    for (std::size_t c = 0; c < 2; ++c) {
        const double ds = geom.components()[c].ds();
        for (std::size_t m = 0; m < tr.a.comp[c].size(); ++m) {
            const double a = tr.a.comp[c][m];
            if (a < -kSignEps) {
                const double w = pow_p(tr.omega_gamma.comp[c][m], p);
                bt.inflow_abs += -a * w * ds;
                bt.inflow_signed += a * w * ds;
            } else if (a > kSignEps) {
                bt.outflow_abs += a * pow_p(tr.omega_trace.comp[c][m], p) * ds;
            }
        }
    }
    return bt;
}

Vec2 cell_xy(const Grid& g, std::size_t i, std::size_t j) {
    const double r = g.r_center(i), th = g.theta_center(j);
    return {r * std::cos(th), r * std::sin(th)};
}

} // namespace

EstimateEntry& EstimateReport::add(EstimateEntry e) {
    entries.push_back(std::move(e));
    return entries.back();
}

void EstimateReport::append(const EstimateReport& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
}

bool EstimateReport::all_pass() const {
    for (const auto& e : entries)
        if (!e.pass) return false;
    return true;
}

const EstimateEntry* EstimateReport::first_failure() const {
    for (const auto& e : entries)
        if (!e.pass) return &e;
    return nullptr;
}

std::string EstimateReport::csv_header() {
    return "check_name,t0,p,nu,theta,sigma,grid,lhs,rhs,slack,pass,note";
}

void EstimateReport::write_csv(const std::filesystem::path& path) const {
    std::ofstream os(path);
    os << csv_header() << "\n";
    os.precision(12);
    for (const auto& e : entries) {
        std::string note = e.note;
        std::replace(note.begin(), note.end(), ',', ';');
        os << e.name << "," << e.t0 << "," << e.p << "," << e.nu << "," << e.theta << ","
           << e.sigma << "," << e.grid << "," << e.lhs << "," << e.rhs << "," << e.slack << ","
           << (e.pass ? 1 : 0) << "," << note << "\n";
    }
}

EstimateEntry make_entry(std::string name, const Trajectory& traj) {
    EstimateEntry e;
    e.name = std::move(name);
    e.p = traj.params.p;
    e.nu = traj.params.nu;
    e.theta = traj.params.theta;
    e.grid = std::to_string(traj.grid->n_r()) + "x" + std::to_string(traj.grid->n_s());
    return e;
}

EstimateEntry max_principle_check(const Trajectory& traj, const ReducedData& data) {
    EstimateEntry e = make_entry("max_principle", traj);
    double gamma_inf = 0.0, g_inf = 0.0, vs_max = 0.0, lhs = 0.0;
    for (std::size_t n = 0; n < traj.times.size(); ++n) {
        const double t = traj.times[n];
        gamma_inf = std::max(gamma_inf, boundary_norm(data.gamma_at(t), data.geom(),
                                                      std::numeric_limits<double>::infinity()));
        g_inf = std::max(g_inf, boundary_norm(data.g_at(t), data.geom(),
                                              std::numeric_limits<double>::infinity()));
        for (std::size_t c = 0; c < 2; ++c)
            for (double v : traj.traces[n].v_dot_s.comp[c]) vs_max = std::max(vs_max, std::abs(v));
        lhs = std::max(lhs, traj.stats[n].max_abs);
    }
    const double w0max = traj.omega0.max_abs();
    e.t0 = traj.horizon();
    e.lhs = lhs;
    e.rhs = std::max(w0max, gamma_inf * vs_max + g_inf);
    e.slack = e.rhs - e.lhs;
    e.pass = e.lhs <= e.rhs + 1e-8;
    e.note = "bound=max(" + fmt(w0max) + ", " + fmt(gamma_inf) + "*" + fmt(vs_max) + "+" +
             fmt(g_inf) + ")";
    return e;
}

LpBudget lp_budget(const Trajectory& traj, const ReducedData& data, double p, double t0,
                   bool include_outflux, double eps_disc) {
    const Grid& grid = *traj.grid;
    const double tol = 1e-9 * std::max(traj.dt(), 1e-12);
    const std::size_t k0 = traj.snap_at(t0, tol);

    LpBudget out;
    const double lhs_p = std::pow(discrete_norm(traj.snaps[k0], grid, p), p);
    const double w0_p = std::pow(discrete_norm(traj.omega0, grid, p), p);

    // boundary terms integrated in time up to t0 at step resolution
    std::vector<double> ts, fin, fin_s, fout;
    for (std::size_t n = 0; n < traj.times.size() && traj.times[n] <= t0 + tol; ++n) {
        const BoundaryTerms bt = boundary_terms(traj.traces[n], *traj.geom, p);
        ts.push_back(traj.times[n]);
        fin.push_back(bt.inflow_abs);
        fin_s.push_back(bt.inflow_signed);
        fout.push_back(bt.outflow_abs);
    }
    std::vector<double> acc;
    cumtrapz(ts, fin, acc);
    out.inflow_term = acc.back();
    cumtrapz(ts, fin_s, acc);
    out.inflow_term_signed = acc.back();
    cumtrapz(ts, fout, acc);
    out.outflow_term = acc.back();

    out.inequality = make_entry("lp_budget_ineq", traj);
    out.inequality.t0 = t0;
    out.inequality.p = p;
    out.inequality.lhs = lhs_p;
    out.inequality.rhs = w0_p + out.inflow_term;
    out.inequality.slack = out.inequality.rhs - out.inequality.lhs;
    out.inequality.pass =
        out.inequality.lhs <= out.inequality.rhs + eps_disc + 1e-12 * std::max(1.0, lhs_p);
    out.inequality.note = "eps_disc=" + fmt(eps_disc);

    if (include_outflux) {
        out.equality = make_entry("lp_budget_eq", traj);
        out.equality.t0 = t0;
        out.equality.p = p;
        out.equality.lhs = lhs_p + out.outflow_term;
        out.equality.rhs = w0_p + out.inflow_term;
        out.equality.slack = out.equality.rhs - out.equality.lhs;
        out.equality_rel_imbalance = std::abs(out.equality.lhs - out.equality.rhs) /
                                     std::max({out.equality.lhs, out.equality.rhs, 1e-300});
        out.equality.pass = true; // informational; callers threshold the imbalance
        out.equality.note = "rel_imbalance=" + fmt(out.equality_rel_imbalance);
    }
    return out;
}

GronwallResult discrete_gronwall_bound(std::span<const double> t, std::span<const double> y,
                                       std::span<const double> D, std::span<const double> B,
                                       double theta, double horizon, double hyp_tol) {
    assert(t.size() == y.size() && t.size() == D.size() && t.size() == B.size());
    GronwallResult r;
    r.t.assign(t.begin(), t.end());
    r.y.assign(y.begin(), y.end());

    const std::vector<double> u = forward_window(t, y, theta);
    std::vector<double> integrand(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) integrand[i] = D[i] * u[i] + B[i];
    std::vector<double> hyp_int;
    cumtrapz(t, integrand, hyp_int);
    r.hyp_rhs.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) r.hyp_rhs[i] = y[0] + hyp_int[i];

    double y_scale = 1.0;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] <= horizon + 1e-12) y_scale = std::max(y_scale, std::abs(y[i]));
    const double tol_abs = hyp_tol * y_scale;

    r.max_hyp_violation = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] > horizon + 1e-12) continue;
        r.max_hyp_violation = std::max(r.max_hyp_violation, y[i] - r.hyp_rhs[i]);
    }
    r.hypothesis_ok = r.max_hyp_violation <= tol_abs;

    std::vector<double> Dint;
    cumtrapz(t, std::span<const double>(D.data(), D.size()), Dint);
    std::vector<double> bexp(t.size()), bplain(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) bexp[i] = B[i] * std::exp(-Dint[i]);
    std::vector<double> bexp_int, b_int;
    cumtrapz(t, bexp, bexp_int);
    cumtrapz(t, std::span<const double>(B.data(), B.size()), b_int);
    r.bound.resize(t.size());
    r.bound_aaa.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        r.bound[i] = 2.0 * std::exp(Dint[i]) * (y[0] + bexp_int[i]);
        r.bound_aaa[i] = 2.0 * std::exp(Dint[i]) * (y[0] + b_int[i]);
    }

    if (!r.hypothesis_ok)
        throw HypothesisFailed("windowed Gronwall hypothesis violated by " +
                               fmt(r.max_hyp_violation) + " (tol " + fmt(tol_abs) + ")");

    r.conclusion_ok = true;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] > horizon + 1e-12) continue;
        if (y[i] > r.bound[i] + tol_abs) r.conclusion_ok = false;
    }
    return r;
}

GronwallSeries gronwall_series_from_run(const Trajectory& traj, const ReducedData& data,
                                        const StreamSolver& solver, double p) {
    assert(std::isfinite(p));
    const Grid& grid = *traj.grid;
    const DomainGeometry& geom = *traj.geom;
    GronwallSeries s;

    const std::size_t n = traj.n_snaps();
    std::vector<double> vmax_p(n), den(n), Gk(n), gk(n), Asob(n);
    double a_inf = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = traj.snap_time(k);
        const ScalarField src = trajectory_source(traj, k);
        const NodeField h = solver.solve(src, data.A_at(t));
        const VelocityField v = velocity_from_stream(h, grid);
        const BoundaryValues vs = tangential_trace(h, geom, grid);
        double vmax = v.max_face_speed();
        for (std::size_t c = 0; c < 2; ++c)
            for (double x : vs.comp[c]) vmax = std::max(vmax, std::abs(x));
        vmax_p[k] = std::pow(vmax, p);
        Asob[k] = boundary_sobolev2_norm(data.A_at(t), geom, p);
        den[k] = std::pow(discrete_norm(src, grid, p), p) + std::pow(Asob[k], p);

        const BoundaryValues gam = data.gamma_at(t);
        const BoundaryValues gg = data.g_at(t);
        const BoundaryValues a = traj.traces[traj.snap_steps[k]].a;
        double Gint = 0.0, gint = 0.0;
        for (std::size_t c = 0; c < 2; ++c) {
            const double ds = geom.components()[c].ds();
            for (std::size_t m = 0; m < a.comp[c].size(); ++m) {
                if (a.comp[c][m] < -kSignEps) {
                    Gint += pow_p(gam.comp[c][m], p) * ds;
                    gint += pow_p(gg.comp[c][m], p) * ds;
                    a_inf = std::max(a_inf, std::abs(a.comp[c][m]));
                }
            }
        }
        Gk[k] = Gint;
        gk[k] = gint;

        s.t.push_back(t);
        s.y.push_back(std::pow(discrete_norm(traj.snaps[k], grid, p), p));
    }
    double cp = 0.0, a_sob_max = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (den[k] > 1e-300) cp = std::max(cp, vmax_p[k] / den[k]);
        a_sob_max = std::max(a_sob_max, Asob[k]);
    }
    s.measured_cp = cp;
    const double two_pm1 = std::pow(2.0, p - 1.0);
    s.D.resize(n);
    s.B.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        s.D[k] = two_pm1 * cp * a_inf * Gk[k];
        s.B[k] = two_pm1 * a_inf * (cp * std::pow(a_sob_max, p) * Gk[k] + gk[k]);
    }
    return s;
}

double strip_flux_functional(const Trajectory& traj, const ExtensionField& breve,
                             const StreamSolver& solver, const ReducedData& data, double sigma,
                             double p, const TestFunction& psi) {
    const Grid& grid = *traj.grid;
    const DomainGeometry& geom = *traj.geom;
    if (!(sigma > 0.0) || !(sigma < 0.5 * geom.sigma0()))
        throw BadSigma("sigma = " + fmt(sigma) + " outside (0, sigma0/2)");

    const double mid = 0.5 * (grid.r_inner() + grid.r_outer());
    std::vector<double> ts(traj.n_snaps()), integrand(traj.n_snaps(), 0.0);
    for (std::size_t k = 0; k < traj.n_snaps(); ++k) {
        const double t = traj.snap_time(k);
        ts[k] = t;
        const VelocityField v = trajectory_velocity(traj, k, solver, data);
        double acc = 0.0;
        for (std::size_t i = 0; i < grid.n_r(); ++i) {
            const double r = grid.r_center(i);
            const double d = geom.signed_distance_r(r);
            if (d <= sigma || d >= 2.0 * sigma) continue;
            const double grad_d_sign = (r < mid) ? 1.0 : -1.0; // grad d = +/- e_r
            const double area = grid.cell_area(i);
            for (std::size_t j = 0; j < grid.n_s(); ++j) {
                const double vr = 0.5 * (v.ur(i, j) + v.ur(i + 1, j));
                const double z = traj.snaps[k](i, j) - breve.value(i, j, t);
                acc += pow_p(z, p) * grad_d_sign * vr * psi.value(cell_xy(grid, i, j), t) * area;
            }
        }
        integrand[k] = acc;
    }
    std::vector<double> total;
    cumtrapz(ts, integrand, total);
    return total.back() / sigma;
}

double time_strip_functional(const Trajectory& traj, const ExtensionField& breve, double sigma_t,
                             double p, const TestFunction& psi) {
    const Grid& grid = *traj.grid;
    if (!(sigma_t > 0.0) || sigma_t > traj.horizon() + 1e-12)
        throw BadSigma("sigma_t = " + fmt(sigma_t) + " outside (0, T]");

    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < traj.n_snaps(); ++k) {
        const double t0 = traj.snap_time(k), t1 = traj.snap_time(k + 1);
        const double lo = t0, hi = std::min(t1, sigma_t);
        if (hi <= lo) break;
        auto cell_sum = [&](std::size_t snap, double t) {
            double s = 0.0;
            for (std::size_t i = 0; i < grid.n_r(); ++i) {
                const double area = grid.cell_area(i);
                for (std::size_t j = 0; j < grid.n_s(); ++j) {
                    const double z = traj.snaps[snap](i, j) - breve.value(i, j, t);
                    s += pow_p(z, p) * psi.value(cell_xy(grid, i, j), t) * area;
                }
            }
            return s;
        };
        // integrand at the interval ends (field held at its snapshot values)
        const double fa = cell_sum(k, t0);
        const double fb = cell_sum(k + 1, hi);
        acc += 0.5 * (fa + fb) * (hi - lo);
    }
    return acc / sigma_t;
}

double weak_form_residual(const Trajectory& traj, const ReducedData& data,
                          const StreamSolver& solver, const TestFunction& psi) {
    const Grid& grid = *traj.grid;
    const DomainGeometry& geom = *traj.geom;

    // interior space-time integral at snapshot cadence
    std::vector<double> ts(traj.n_snaps()), integrand(traj.n_snaps());
    for (std::size_t k = 0; k < traj.n_snaps(); ++k) {
        const double t = traj.snap_time(k);
        ts[k] = t;
        const VelocityField v = trajectory_velocity(traj, k, solver, data);
        double acc = 0.0;
        for (std::size_t i = 0; i < grid.n_r(); ++i) {
            const double area = grid.cell_area(i);
            for (std::size_t j = 0; j < grid.n_s(); ++j) {
                const Vec2 x = cell_xy(grid, i, j);
                const Vec2 vel = v.cell_velocity(grid, i, j);
                acc += traj.snaps[k](i, j) *
                       (psi.time_derivative(x, t) + vel.dot(psi.gradient(x, t))) * area;
            }
        }
        integrand[k] = acc;
    }
    std::vector<double> cum;
    cumtrapz(ts, integrand, cum);
    double lhs = cum.back();
    for (std::size_t i = 0; i < grid.n_r(); ++i) {
        const double area = grid.cell_area(i);
        for (std::size_t j = 0; j < grid.n_s(); ++j)
            lhs += traj.omega0(i, j) * psi.value(cell_xy(grid, i, j), 0.0) * area;
    }

    // inflow boundary term at step cadence (signed a)
    std::vector<double> bts(traj.times.size()), bint(traj.times.size(), 0.0);
    for (std::size_t n = 0; n < traj.times.size(); ++n) {
        bts[n] = traj.times[n];
        const TraceSample& tr = traj.traces[n];
        double acc = 0.0;
        for (std::size_t c = 0; c < 2; ++c) {
            const auto& bc = geom.components()[c];
            for (std::size_t m = 0; m < tr.a.comp[c].size(); ++m) {
                const double a = tr.a.comp[c][m];
                if (a < -kSignEps)
                    acc += a * tr.omega_gamma.comp[c][m] *
                           psi.value(bc.position[m], traj.times[n]) * bc.ds();
            }
        }
        bint[n] = acc;
    }
    cumtrapz(bts, bint, cum);
    const double rhs = cum.back();
    return std::abs(lhs - rhs);
}

EstimateEntry time_lipschitz_check(const Trajectory& traj, const StreamSolver& solver, double p,
                                   std::span<const std::size_t> delta_steps) {
    EstimateEntry e = make_entry("time_lipschitz", traj);
    const Grid& grid = *traj.grid;
    const BoundaryValues zeroA = BoundaryValues::zeros(*traj.geom);
    const std::size_t n = traj.n_snaps();

    double scale = 0.0;
    {
        const NodeField h1 = solver.solve(trajectory_source(traj, 0), zeroA);
        scale = discrete_norm(node_gradient_magnitude(h1, grid), grid, p);
    }

    std::vector<double> ratios;
    std::ostringstream note;
    note.precision(6);
    for (std::size_t d : delta_steps) {
        if (d + 1 > n) continue;
        const std::size_t stride = std::max<std::size_t>(1, (n - d) / 8);
        double rmax = 0.0;
        for (std::size_t k = 0; k + d < n; k += stride) {
            ScalarField dsrc = trajectory_source(traj, k + d);
            const ScalarField s0 = trajectory_source(traj, k);
            for (std::size_t m = 0; m < dsrc.data().size(); ++m) dsrc.data()[m] -= s0.data()[m];
            const NodeField hdiff = solver.solve(dsrc, zeroA); // linearity of the solve
            const double num = discrete_norm(node_gradient_magnitude(hdiff, grid), grid, p);
            const double dt = traj.snap_time(k + d) - traj.snap_time(k);
            rmax = std::max(rmax, num / dt);
        }
        ratios.push_back(rmax);
        note << "d" << d << "=" << rmax << " ";
    }
    const double rmax = *std::max_element(ratios.begin(), ratios.end());
    const double rmin = *std::min_element(ratios.begin(), ratios.end());
    e.t0 = traj.horizon();
    e.p = p;
    e.lhs = rmax;
    e.rhs = 10.0 * rmin;
    e.slack = e.rhs - e.lhs;
    const double floor = 1e-10 * std::max(scale, 1e-30) / std::max(traj.horizon(), 1e-30);
    e.pass = (rmax <= floor) || (rmax <= 10.0 * rmin + floor);
    e.note = note.str();
    return e;
}

EstimateReport p_infinity_sweep(const Trajectory& traj, const ReducedData& data,
                                std::span<const double> q_list, double q_bar) {
    EstimateReport rep;
    const Grid& grid = *traj.grid;
    const DomainGeometry& geom = *traj.geom;
    const double T = traj.horizon();
    const ScalarField& wT = traj.snaps.back();
    const double area = grid.total_area();
    const double wmax = wT.max_abs();

    // per-q budgets
    double prev_mean_norm = 0.0;
    bool monotone = true, below_max = true;
    for (double q : q_list) {
        std::vector<double> ts(traj.times.size()), fin(traj.times.size());
        for (std::size_t n = 0; n < traj.times.size(); ++n) {
            ts[n] = traj.times[n];
            fin[n] = boundary_terms(traj.traces[n], geom, q).inflow_abs;
        }
        std::vector<double> cum;
        cumtrapz(ts, fin, cum);
        EstimateEntry e = make_entry("inf2_budget", traj);
        e.t0 = T;
        e.p = q;
        e.lhs = discrete_norm(wT, grid, q);
        e.rhs = discrete_norm(traj.omega0, grid, q) + std::pow(cum.back(), 1.0 / q);
        e.slack = e.rhs - e.lhs;
        e.pass = e.lhs <= e.rhs + 1e-9 * (1.0 + e.rhs);
        rep.add(e);

        const double mean_norm = e.lhs / std::pow(area, 1.0 / q);
        if (mean_norm + 1e-6 < prev_mean_norm) monotone = false;
        if (mean_norm > wmax + 1e-6) below_max = false;
        prev_mean_norm = mean_norm;
    }

    EstimateEntry mono = make_entry("q_norm_monotone", traj);
    mono.t0 = T;
    mono.lhs = prev_mean_norm; // largest normalized q-norm
    mono.rhs = wmax;
    mono.slack = mono.rhs - mono.lhs;
    mono.pass = monotone && below_max;
    mono.note = monotone ? "nondecreasing" : "monotonicity violated";
    rep.add(mono);

    // q-uniform max bound measured at q_bar
    double m_gamma = 0.0, a_l1 = 0.0;
    {
        std::vector<double> ts(traj.times.size()), aint(traj.times.size(), 0.0);
        for (std::size_t n = 0; n < traj.times.size(); ++n) {
            ts[n] = traj.times[n];
            const TraceSample& tr = traj.traces[n];
            double acc = 0.0;
            for (std::size_t c = 0; c < 2; ++c) {
                const double ds = geom.components()[c].ds();
                for (std::size_t m = 0; m < tr.a.comp[c].size(); ++m) {
                    if (tr.a.comp[c][m] < -kSignEps) {
                        m_gamma = std::max(m_gamma, std::abs(tr.omega_gamma.comp[c][m]));
                        acc += -tr.a.comp[c][m] * ds;
                    }
                }
            }
            aint[n] = acc;
        }
        std::vector<double> cum;
        cumtrapz(ts, aint, cum);
        a_l1 = cum.back();
    }
    EstimateEntry mx = make_entry("max_norm_bound", traj);
    mx.t0 = T;
    mx.p = q_bar;
    mx.lhs = wmax;
    mx.rhs = traj.omega0.max_abs() + m_gamma * std::max(1.0, std::pow(a_l1, 1.0 / q_bar));
    mx.slack = mx.rhs - mx.lhs;
    mx.pass = mx.lhs <= mx.rhs + 1e-9 * (1.0 + mx.rhs);
    mx.note = "trace_bound=" + fmt(m_gamma) + " inflow_l1=" + fmt(a_l1);
    rep.add(mx);
    return rep;
}

} // namespace slipstream
