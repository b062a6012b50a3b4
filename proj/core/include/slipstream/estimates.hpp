#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "slipstream/boundary.hpp"
#include "slipstream/testfn.hpp"
#include "slipstream/transport.hpp"

namespace slipstream {

struct EstimateEntry {
    std::string name;
    double t0 = 0.0;
    double p = 0.0;
    double nu = 0.0;
    double theta = 0.0;
    double sigma = 0.0;
    std::string grid;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0; // rhs - lhs, recorded even on failure
    bool pass = false;
    std::string note;
};

class EstimateReport {
public:
    std::vector<EstimateEntry> entries;

    EstimateEntry& add(EstimateEntry e);
    void append(const EstimateReport& other);
    bool all_pass() const;
    const EstimateEntry* first_failure() const;
    void write_csv(const std::filesystem::path& path) const;
    static std::string csv_header();
};

/// Fills the shared context columns (p, nu, theta, grid) of an entry.
EstimateEntry make_entry(std::string name, const Trajectory& traj);

/// max |omega| over the run against max(max|omega0|, ||gamma||_inf max|v.s| + ||g||_inf).
EstimateEntry max_principle_check(const Trajectory& traj, const ReducedData& data);

struct LpBudget {
    EstimateEntry inequality;    // ||w(t0)||_p^p <= ||w0||_p^p + inflow term
    EstimateEntry equality;      // + outflow term on the left (set when include_outflux)
    double equality_rel_imbalance = 0.0;
    double inflow_term = 0.0;        // integral over Gamma- of |a| |w_Gamma|^p
    double inflow_term_signed = 0.0; // same with signed a (always <= 0)
    double outflow_term = 0.0;       // integral over Gamma+ of |a| |w|^p
};

/// Vorticity L_p budget up to t0 (a snapshot time). eps_disc is the caller's
/// discretization slack (Richardson between grids); the inequality passes iff
/// lhs <= rhs + eps_disc.
LpBudget lp_budget(const Trajectory& traj, const ReducedData& data, double p, double t0,
                   bool include_outflux, double eps_disc);

struct GronwallResult {
    std::vector<double> t;
    std::vector<double> y;
    std::vector<double> hyp_rhs;    // y0 + integral of (D u + B)
    std::vector<double> bound;      // 2 exp(int D) [y0 + int B exp(-int D)]
    std::vector<double> bound_aaa;  // 2 exp(int D) [y0 + int B]
    bool hypothesis_ok = false;
    bool conclusion_ok = false;
    double max_hyp_violation = 0.0;
};

/// Windowed Gronwall checker. The sample series may extend beyond the check
/// horizon; the forward window u(t) = (1/theta) int_t^{t+theta} y uses the
/// samples and extends y by zero past the series end. Verifies the hypothesis
/// y(t) <= y0 + int_0^t (D u + B) on [0, horizon]; when it holds, asserts the
/// factor-2 conclusion. Throws HypothesisFailed when the hypothesis is
/// violated (the conclusion is then never asserted).
GronwallResult discrete_gronwall_bound(std::span<const double> t, std::span<const double> y,
                                       std::span<const double> D, std::span<const double> B,
                                       double theta, double horizon, double hyp_tol = 1e-9);

/// Coefficient series for the budget-to-Gronwall chain measured from a run:
/// y = ||omega||_p^p, D and B from the boundary data and the measured
/// elliptic constant max ||v||^p / (||<omega>||_p^p + ||A||_{W_p^2}^p).
struct GronwallSeries {
    std::vector<double> t, y, D, B;
    double measured_cp = 0.0;
};
GronwallSeries gronwall_series_from_run(const Trajectory& traj, const ReducedData& data,
                                        const StreamSolver& solver, double p);

/// (1/sigma) int_0^T int_{sigma<d<2 sigma} |omega - breve|^p (v . grad d) psi.
/// Requires sigma in (0, sigma0/2); throws BadSigma otherwise.
double strip_flux_functional(const Trajectory& traj, const ExtensionField& breve,
                             const StreamSolver& solver, const ReducedData& data, double sigma,
                             double p, const TestFunction& psi);

/// (1/sigma_t) int_0^{sigma_t} int_Omega |omega - breve|^p psi.
double time_strip_functional(const Trajectory& traj, const ExtensionField& breve, double sigma_t,
                             double p, const TestFunction& psi);

/// | int omega (psi_t + v . grad psi) + int omega0 psi(.,0) - int_{Gamma-} a w_Gamma psi |.
double weak_form_residual(const Trajectory& traj, const ReducedData& data,
                          const StreamSolver& solver, const TestFunction& psi);

/// Ratios ||grad h1(t+Delta) - grad h1(t)||_p / Delta for Delta = k dt over
/// the listed step offsets; passes iff max/min < 10 (or everything is at the
/// steady-state floor).
EstimateEntry time_lipschitz_check(const Trajectory& traj, const StreamSolver& solver, double p,
                                   std::span<const std::size_t> delta_steps);

/// q-sweep of the budget, normalized-norm monotonicity toward the max norm,
/// and the q-uniform max bound measured at q_bar.
EstimateReport p_infinity_sweep(const Trajectory& traj, const ReducedData& data,
                                std::span<const double> q_list, double q_bar);

} // namespace slipstream
