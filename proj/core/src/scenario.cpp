#include "slipstream/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <tuple>

#include "slipstream/errors.hpp"

namespace slipstream {

namespace {

double bump(double u) {
    const double u2 = u * u;
    if (u2 >= 1.0 - 1e-12) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u2));
}

double ramp01(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * (3.0 - 2.0 * u);
}

ScalarField zero_field(const Grid& grid) { return ScalarField(grid, Quantity::vorticity); }

// optional seeded Fourier perturbation of the initial vorticity (kept away
// from the boundary by the same radial bump as the base profile)
void add_noise(ScalarField& w0, const Grid& grid, const DomainGeometry& geom,
               const ScenarioParams& prm) {
    const double amp = prm.get("noise_amp", 0.0);
    if (amp <= 0.0) return;
    std::mt19937 rng(prm.seed);
    std::uniform_real_distribution<double> phase(0.0, Grid::two_pi());
    std::uniform_real_distribution<double> weight(0.5, 1.0);
    const double rc = 0.5 * (geom.r_inner() + geom.r_outer());
    const double wr = 0.6 * geom.sigma0();
    for (int k = 1; k <= 4; ++k) {
        const double ph = phase(rng), w = weight(rng);
        for (std::size_t i = 0; i < grid.n_r(); ++i) {
            const double env = bump((grid.r_center(i) - rc) / wr);
            for (std::size_t j = 0; j < grid.n_s(); ++j)
                w0(i, j) += amp * w * env * std::cos(k * grid.theta_center(j) + ph);
        }
    }
}

BoundaryData make_zero(const DomainGeometry&, const Grid& grid, const ScenarioParams&) {
    BoundaryData d;
    d.omega0 = zero_field(grid);
    return d;
}

BoundaryData make_solid_rotation(const DomainGeometry& geom, const Grid& grid,
                                 const ScenarioParams& prm) {
    const double c = prm.get("c", 1.0);
    const double k_out = 1.0 / geom.r_outer();
    const double k_in = -1.0 / geom.r_inner();
    BoundaryData d;
    d.alpha = [=](std::size_t comp, double, double) { return 2.0 * (comp == 0 ? k_out : k_in); };
    d.b = [=](std::size_t, double, double) { return c; };
    d.omega0 = zero_field(grid);
    for (double& x : d.omega0.data()) x = c;
    return d;
}

BoundaryData make_uniform_throughflow(const DomainGeometry& geom, const Grid& grid,
                                      const ScenarioParams& prm) {
    const double eps = prm.get("eps", 0.3);
    const double r0 = geom.r_inner(), r1 = geom.r_outer();
    const double k_out = 1.0 / r1, k_in = -1.0 / r0;
    BoundaryData d;
    // traces of the uniform stream h = eps * y; alpha = 2k and b = 2 a'_s make
    // the slip reduction exact (gamma = 0, g = 0)
    d.a = [=](std::size_t comp, double s, double) {
        return comp == 0 ? eps * std::cos(s / r1) : -eps * std::cos(s / r0);
    };
    d.alpha = [=](std::size_t comp, double, double) { return 2.0 * (comp == 0 ? k_out : k_in); };
    d.b = [=](std::size_t comp, double s, double) {
        return comp == 0 ? -2.0 * eps / r1 * std::sin(s / r1) : 2.0 * eps / r0 * std::sin(s / r0);
    };
    d.omega0 = zero_field(grid);
    return d;
}

BoundaryData make_shear_inflow(const DomainGeometry& geom, const Grid& grid,
                               const ScenarioParams& prm) {
    const double a0 = prm.get("a0", 0.3);
    const double gamma0 = prm.get("gamma0", 1.0);
    const double b0 = prm.get("b0", 0.75);
    const double t_on = prm.get("t_on", 0.1);
    const double w0_amp = prm.get("w0", 0.5);
    const double r0 = geom.r_inner(), r1 = geom.r_outer();
    const double k_out = 1.0 / r1, k_in = -1.0 / r0;

    BoundaryData d;
    d.a = [=](std::size_t comp, double s, double) {
        return comp == 0 ? a0 * std::cos(s / r1) : 0.0;
    };
    // gamma and g ramp in over [0, t_on] so the reduced data vanishes at t = 0
    d.alpha = [=](std::size_t comp, double, double t) {
        if (comp == 0) return 2.0 * k_out - gamma0 * ramp01(t / t_on);
        return 2.0 * k_in;
    };
    d.b = [=](std::size_t comp, double s, double t) {
        if (comp != 0) return 0.0;
        const double g0 = b0 * (1.0 + 0.5 * std::sin(s / r1));
        const double das = -(a0 / r1) * std::sin(s / r1);
        return ramp01(t / t_on) * g0 + 2.0 * das;
    };
    d.omega0 = zero_field(grid);
    const double rc = prm.get("rc", 0.5 * (r0 + r1));
    const double wr = prm.get("wr", 0.48 * geom.sigma0());
    for (std::size_t i = 0; i < grid.n_r(); ++i) {
        const double env = bump((grid.r_center(i) - rc) / wr);
        for (std::size_t j = 0; j < grid.n_s(); ++j)
            d.omega0(i, j) = w0_amp * env * (1.0 + 0.5 * std::cos(2.0 * grid.theta_center(j)));
    }
    add_noise(d.omega0, grid, geom, prm);
    return d;
}

// custom_table: CSV with columns component,s,t,a,alpha,b; linear interpolation
// in t, periodic linear interpolation in s
struct TableData {
    struct Slice {
        std::vector<double> s, a, alpha, b;
    };
    std::array<std::vector<double>, 2> times;
    std::array<std::vector<Slice>, 2> slices;
    std::array<double, 2> length{};

    double interp_s(const Slice& sl, std::size_t which, double s, double L) const {
        const auto& xs = sl.s;
        if (xs.empty()) return 0.0;
        const auto& ys = which == 0 ? sl.a : which == 1 ? sl.alpha : sl.b;
        if (xs.size() == 1) return ys[0];
        double sw = std::fmod(s, L);
        if (sw < 0) sw += L;
        if (sw < xs.front() || sw >= xs.back()) { // periodic wrap segment
            const double x0 = xs.back(), x1 = xs.front() + L;
            const double sx = sw < xs.front() ? sw + L : sw;
            const double lam = (x1 > x0) ? (sx - x0) / (x1 - x0) : 0.0;
            return (1.0 - lam) * ys.back() + lam * ys.front();
        }
        auto it = std::upper_bound(xs.begin(), xs.end(), sw);
        const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
        const std::size_t lo = hi - 1;
        const double lam = (xs[hi] > xs[lo]) ? (sw - xs[lo]) / (xs[hi] - xs[lo]) : 0.0;
        return (1.0 - lam) * ys[lo] + lam * ys[hi];
    }

    double eval(std::size_t comp, std::size_t which, double s, double t) const {
        const auto& ts = times[comp];
        if (ts.empty()) return 0.0;
        const auto& sl = slices[comp];
        if (ts.size() == 1 || t <= ts.front())
            return interp_s(sl.front(), which, s, length[comp]);
        if (t >= ts.back()) return interp_s(sl.back(), which, s, length[comp]);
        auto it = std::upper_bound(ts.begin(), ts.end(), t);
        const std::size_t hi = static_cast<std::size_t>(it - ts.begin());
        const std::size_t lo = hi - 1;
        const double lam = (t - ts[lo]) / (ts[hi] - ts[lo]);
        return (1.0 - lam) * interp_s(sl[lo], which, s, length[comp]) +
               lam * interp_s(sl[hi], which, s, length[comp]);
    }
};

BoundaryData make_custom_table(const DomainGeometry& geom, const Grid& grid,
                               const ScenarioParams& prm) {
    std::ifstream is(prm.table);
    if (!is) throw ParseError("custom_table: cannot open " + prm.table.string());

    auto data = std::make_shared<TableData>();
    data->length = {geom.outer().total_length, geom.inner().total_length};

    // rows grouped by (component, t), each group sorted by s
    struct Row {
        std::size_t comp;
        double s, t, a, alpha, b;
    };
    std::vector<Row> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (lineno == 1 && line.find("component") != std::string::npos) continue; // header
        std::istringstream ls(line);
        Row r{};
        char comma;
        if (!(ls >> r.comp >> comma >> r.s >> comma >> r.t >> comma >> r.a >> comma >> r.alpha >>
              comma >> r.b))
            throw ParseError("custom_table: bad row at line " + std::to_string(lineno));
        if (r.comp > 1)
            throw ParseError("custom_table: component must be 0 or 1 at line " +
                             std::to_string(lineno));
        rows.push_back(r);
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
        return std::tie(x.comp, x.t, x.s) < std::tie(y.comp, y.t, y.s);
    });
    for (const Row& r : rows) {
        auto& ts = data->times[r.comp];
        auto& sl = data->slices[r.comp];
        if (ts.empty() || r.t > ts.back() + 1e-14) {
            ts.push_back(r.t);
            sl.emplace_back();
        }
        sl.back().s.push_back(r.s);
        sl.back().a.push_back(r.a);
        sl.back().alpha.push_back(r.alpha);
        sl.back().b.push_back(r.b);
    }

    BoundaryData d;
    d.a = [data](std::size_t c, double s, double t) { return data->eval(c, 0, s, t); };
    d.alpha = [data](std::size_t c, double s, double t) { return data->eval(c, 1, s, t); };
    d.b = [data](std::size_t c, double s, double t) { return data->eval(c, 2, s, t); };
    d.omega0 = zero_field(grid);
    return d;
}

} // namespace

const std::vector<Scenario>& scenario_registry() {
    static const std::vector<Scenario> reg = {
        {"custom_table", "boundary data from a CSV table (component,s,t,a,alpha,b)",
         &make_custom_table},
        {"shear_inflow", "a = a0 cos(s) through-flow on the outer circle with ramped-in "
                         "gamma != 0, g != 0 and a compact vorticity blob",
         &make_shear_inflow},
        {"solid_rotation", "a = 0, alpha = 2k, b = c: steady azimuthal flow with omega = c",
         &make_solid_rotation},
        {"uniform_throughflow", "traces of the uniform stream h = eps*y with gamma = 0, g = 0",
         &make_uniform_throughflow},
        {"zero", "all data and the initial vorticity identically zero", &make_zero},
    };
    return reg;
}

const Scenario* find_scenario(const std::string& name) {
    for (const auto& s : scenario_registry())
        if (s.name == name) return &s;
    return nullptr;
}

BoundaryData make_scenario_data(const std::string& name, const DomainGeometry& geom,
                                const Grid& grid, const ScenarioParams& params) {
    const Scenario* s = find_scenario(name);
    if (!s) throw ValidationError("unknown scenario '" + name + "'");
    return s->make(geom, grid, params);
}

} // namespace slipstream
