#include "slipstream/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "slipstream/errors.hpp"

namespace slipstream {

BoundaryValues BoundaryData::sample(const BoundaryClosure& f, const DomainGeometry& geom,
                                    double t) const {
    BoundaryValues out;
    for (std::size_t c = 0; c < 2; ++c) {
        const auto& bc = geom.components()[c];
        out.comp[c].resize(bc.n_nodes);
        for (std::size_t m = 0; m < bc.n_nodes; ++m) out.comp[c][m] = f(c, bc.s[m], t);
    }
    return out;
}

std::vector<double> arc_derivative(const std::vector<double>& f, double ds) {
    const std::size_t n = f.size();
    std::vector<double> d(n);
    for (std::size_t m = 0; m < n; ++m) {
        const std::size_t mp = (m + 1) % n, mm = (m + n - 1) % n;
        d[m] = (f[mp] - f[mm]) / (2.0 * ds);
    }
    return d;
}

std::vector<double> arc_derivative_spectral(const std::vector<double>& f, double ds) {
    // Direct real DFT differentiation; n is small (boundary nodes only).
    const std::size_t n = f.size();
    const double L = ds * static_cast<double>(n);
    std::vector<double> d(n, 0.0);
    const std::size_t kmax = n / 2;
    for (std::size_t k = 1; k <= kmax; ++k) {
        if (2 * k == n) continue; // odd Nyquist mode has no derivative contribution
        double cre = 0.0, cim = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            const double ph = Grid::two_pi() * static_cast<double>(k * m) / static_cast<double>(n);
            cre += f[m] * std::cos(ph);
            cim -= f[m] * std::sin(ph);
        }
        cre *= 2.0 / static_cast<double>(n);
        cim *= 2.0 / static_cast<double>(n);
        const double w = Grid::two_pi() * static_cast<double>(k) / L;
        for (std::size_t m = 0; m < n; ++m) {
            const double ph = Grid::two_pi() * static_cast<double>(k * m) / static_cast<double>(n);
            // d/ds Re[(cre + i cim) e^{i w s}] = Re[i w (cre + i cim) e^{i w s}]
            d[m] += -w * cre * std::sin(ph) - w * cim * std::cos(ph);
        }
    }
    return d;
}

std::vector<double> accumulate_arc_integral(const std::vector<double>& a, double ds,
                                            double tol_abs) {
    const std::size_t n = a.size();
    std::vector<double> A(n, 0.0);
    for (std::size_t m = 1; m < n; ++m) A[m] = A[m - 1] + 0.5 * (a[m - 1] + a[m]) * ds;
    const double drift = A[n - 1] + 0.5 * (a[n - 1] + a[0]) * ds; // closure value A(L)
    if (std::abs(drift) > tol_abs)
        throw IncompatibleFlux("closed-curve integral of a is " + std::to_string(drift) +
                               ", above tolerance " + std::to_string(tol_abs));
    const double L = ds * static_cast<double>(n);
    for (std::size_t m = 0; m < n; ++m)
        A[m] -= drift * (static_cast<double>(m) * ds) / L;
    return A;
}

double check_compatibility(const BoundaryData& data, const DomainGeometry& geom, double t,
                           bool strict, double tol_rel) {
    double imbalance = 0.0;
    double amax = 0.0, length = 0.0;
    for (std::size_t c = 0; c < 2; ++c) {
        const auto& bc = geom.components()[c];
        double flux = 0.0;
        for (std::size_t m = 0; m < bc.n_nodes; ++m) {
            const double av = data.a(c, bc.s[m], t);
            flux += av * bc.ds(); // trapezoid on a uniform closed curve
            amax = std::max(amax, std::abs(av));
        }
        imbalance += std::abs(flux);
        length += bc.total_length;
    }
    const double tol = tol_rel * std::max(amax, 1e-300) * length;
    if (strict && imbalance > tol)
        throw IncompatibleFlux("flux imbalance " + std::to_string(imbalance) +
                               " exceeds tolerance " + std::to_string(tol));
    return imbalance;
}

double mollify_time_ramp(double t, double theta) {
    if (theta <= 0.0) return 1.0;
    if (t <= theta) return 0.0;
    if (t >= 2.0 * theta) return 1.0;
    const double u = (t - theta) / theta;
    return u * u * (3.0 - 2.0 * u);
}

double ReducedData::time_ramp(double t) const { return mollify_time_ramp(t, theta_); }

BoundaryValues ReducedData::smooth_in_s(const BoundaryValues& v) const {
    if (!smooth_) return v;
    // Circular Gaussian of width theta/2, truncated at 4 sigma; the kernel is
    // normalized so smoothing is a convex combination (norm non-expansive).
    BoundaryValues out = v;
    for (std::size_t c = 0; c < 2; ++c) {
        const auto& bc = geom_->components()[c];
        const double ds = bc.ds();
        const double sig = 0.5 * theta_;
        const int halo = std::max(1, static_cast<int>(std::ceil(4.0 * sig / ds)));
        const std::size_t n = bc.n_nodes;
        if (static_cast<std::size_t>(2 * halo + 1) >= n) continue;
        std::vector<double> w(2 * halo + 1);
        double wsum = 0.0;
        for (int k = -halo; k <= halo; ++k) {
            w[k + halo] = std::exp(-0.5 * (k * ds) * (k * ds) / (sig * sig));
            wsum += w[k + halo];
        }
        for (auto& x : w) x /= wsum;
        for (std::size_t m = 0; m < n; ++m) {
            double acc = 0.0;
            for (int k = -halo; k <= halo; ++k) {
                const std::size_t idx = (m + n + static_cast<std::size_t>(k + static_cast<int>(n))) % n;
                acc += w[k + halo] * v.comp[c][idx];
            }
            out.comp[c][m] = acc;
        }
    }
    return out;
}

BoundaryValues ReducedData::gamma_at(double t) const {
    BoundaryValues gam;
    const double ramp = time_ramp(t);
    for (std::size_t c = 0; c < 2; ++c) {
        const auto& bc = geom_->components()[c];
        gam.comp[c].resize(bc.n_nodes);
        for (std::size_t m = 0; m < bc.n_nodes; ++m)
            gam.comp[c][m] = ramp * (2.0 * bc.curvature[m] - raw_.alpha(c, bc.s[m], t));
    }
    return smooth_in_s(gam);
}

BoundaryValues ReducedData::g_at(double t) const {
    BoundaryValues g;
    const double ramp = time_ramp(t);
    for (std::size_t c = 0; c < 2; ++c) {
        const auto& bc = geom_->components()[c];
        std::vector<double> a(bc.n_nodes), b(bc.n_nodes);
        for (std::size_t m = 0; m < bc.n_nodes; ++m) {
            a[m] = raw_.a(c, bc.s[m], t);
            b[m] = raw_.b(c, bc.s[m], t);
        }
        const auto das = arc_derivative(a, bc.ds());
        g.comp[c].resize(bc.n_nodes);
        for (std::size_t m = 0; m < bc.n_nodes; ++m)
            g.comp[c][m] = ramp * (b[m] - 2.0 * das[m]);
    }
    return smooth_in_s(g);
}

BoundaryValues ReducedData::A_at(double t) const {
    BoundaryValues A;
    for (std::size_t c = 0; c < 2; ++c) {
        const auto& bc = geom_->components()[c];
        std::vector<double> a(bc.n_nodes);
        double amax = 0.0;
        for (std::size_t m = 0; m < bc.n_nodes; ++m) {
            a[m] = raw_.a(c, bc.s[m], t);
            amax = std::max(amax, std::abs(a[m]));
        }
        const double tol = 1e-10 * std::max(amax, 1e-300) * bc.total_length + 1e-14;
        A.comp[c] = accumulate_arc_integral(a, bc.ds(), tol);
    }
    return smooth_in_s(A);
}

ReducedSlice ReducedData::at(double t) const {
    ReducedSlice sl;
    sl.gamma = gamma_at(t);
    sl.g = g_at(t);
    sl.A = A_at(t);
    if (smooth_) {
        // a is the arc derivative of the (smoothed) A, keeping the flux structure
        for (std::size_t c = 0; c < 2; ++c)
            sl.a.comp[c] = arc_derivative(sl.A.comp[c], geom_->components()[c].ds());
    } else {
        sl.a = raw_.sample_a(*geom_, t);
    }
    return sl;
}

ReducedData reduce_boundary_data(const BoundaryData& data, const DomainGeometry& geom,
                                 const Grid& grid) {
    ReducedData rd;
    rd.geom_ = &geom;
    rd.grid_ = &grid;
    rd.raw_ = data;
    rd.omega0_ = data.omega0;
    rd.theta_ = 0.0;
    rd.flux_tol_ = 0.0;
    return rd;
}

ReducedData mollify_data(const ReducedData& rd, const ScalarField& omega0, double theta,
                         double T, bool gaussian_smoothing) {
    const double theta_max = std::min(rd.geom_->sigma0(), T / 4.0);
    if (!(theta > 0.0) || !(theta < theta_max))
        throw BadTheta("theta = " + std::to_string(theta) + " outside (0, " +
                       std::to_string(theta_max) + ")");
    ReducedData out = rd;
    out.theta_ = theta;
    out.smooth_ = gaussian_smoothing;
    // smooth cutoff of the initial vorticity, vanishing on U_theta(Gamma)
    out.omega0_ = omega0;
    const Grid& g = *rd.grid_;
    for (std::size_t i = 0; i < g.n_r(); ++i) {
        const double d = rd.geom_->signed_distance_r(g.r_center(i));
        const double cut = mollify_time_ramp(d, theta); // same smoothstep profile in distance
        for (std::size_t j = 0; j < g.n_s(); ++j) out.omega0_(i, j) *= cut;
    }
    return out;
}

double boundary_norm(const BoundaryValues& v, const DomainGeometry& geom, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t c = 0; c < 2; ++c)
            for (double x : v.comp[c]) m = std::max(m, std::abs(x));
        return m;
    }
    double acc = 0.0;
    for (std::size_t c = 0; c < 2; ++c) {
        const double ds = geom.components()[c].ds();
        for (double x : v.comp[c]) acc += std::pow(std::abs(x), p) * ds;
    }
    return std::pow(acc, 1.0 / p);
}

double boundary_sobolev2_norm(const BoundaryValues& v, const DomainGeometry& geom, double p) {
    double acc = 0.0;
    for (std::size_t c = 0; c < 2; ++c) {
        const double ds = geom.components()[c].ds();
        const auto d1 = arc_derivative(v.comp[c], ds);
        const auto d2 = arc_derivative(d1, ds);
        for (std::size_t m = 0; m < v.comp[c].size(); ++m)
            acc += (std::pow(std::abs(v.comp[c][m]), p) + std::pow(std::abs(d1[m]), p) +
                    std::pow(std::abs(d2[m]), p)) * ds;
    }
    return std::pow(acc, 1.0 / p);
}

} // namespace slipstream
