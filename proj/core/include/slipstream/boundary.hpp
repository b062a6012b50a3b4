#pragma once

#include <array>
#include <functional>
#include <vector>

#include "slipstream/field.hpp"
#include "slipstream/geometry.hpp"

namespace slipstream {

/// A scalar defined on the boundary, sampled per component in that
/// component's own arc-length node order.
struct BoundaryValues {
    std::array<std::vector<double>, 2> comp;

    static BoundaryValues zeros(const DomainGeometry& geom) {
        BoundaryValues b;
        for (std::size_t c = 0; c < 2; ++c)
            b.comp[c].assign(geom.components()[c].n_nodes, 0.0);
        return b;
    }

    /// Values reindexed by the angular grid index.
    std::vector<double> grid_order(const DomainGeometry& geom, std::size_t c) const {
        const auto& bc = geom.components()[c];
        std::vector<double> out(bc.n_nodes);
        for (std::size_t j = 0; j < bc.n_nodes; ++j) out[j] = comp[c][bc.angle_index(j)];
        return out;
    }
};

/// Closed-form data evaluated per component at arc length s and time t.
using BoundaryClosure = std::function<double(std::size_t comp, double s, double t)>;

inline BoundaryClosure zero_closure() {
    return [](std::size_t, double, double) { return 0.0; };
}

/// Raw problem data: normal velocity a, friction coefficient alpha, slip
/// forcing b, and the initial vorticity.
struct BoundaryData {
    BoundaryClosure a = zero_closure();
    BoundaryClosure alpha = zero_closure();
    BoundaryClosure b = zero_closure();
    ScalarField omega0;

    BoundaryValues sample(const BoundaryClosure& f, const DomainGeometry& geom, double t) const;
    BoundaryValues sample_a(const DomainGeometry& geom, double t) const { return sample(a, geom, t); }
};

/// Periodic second-order centered difference on uniformly spaced closed-curve nodes.
std::vector<double> arc_derivative(const std::vector<double>& f, double ds);
/// Spectral (FFT-free, direct DFT) variant for convergence studies.
std::vector<double> arc_derivative_spectral(const std::vector<double>& f, double ds);

/// Cumulative trapezoid integral with A(0) = 0; the periodic closure drift is
/// subtracted (it is below tolerance whenever the flux is compatible).
/// Throws IncompatibleFlux if the closure drift exceeds tol_abs.
std::vector<double> accumulate_arc_integral(const std::vector<double>& a, double ds, double tol_abs);

/// Sum over components of |closed-curve trapezoid integral of a|.
/// In strict mode throws IncompatibleFlux above the tolerance
/// (default 1e-10 * max|a| * |Gamma|).
double check_compatibility(const BoundaryData& data, const DomainGeometry& geom, double t,
                           bool strict = false, double tol_rel = 1e-10);

/// One time slice of the reduced boundary functions.
struct ReducedSlice {
    BoundaryValues a;       // normal trace (possibly smoothed a = A's arc derivative)
    BoundaryValues gamma;   // 2k - alpha, time-ramped when mollified
    BoundaryValues g;       // b - 2 a'_s, time-ramped when mollified
    BoundaryValues A;       // arc antiderivative of a (stream Dirichlet data)
};

/// Reduced data gamma = 2k - alpha, g = b - 2 a'_s, A = integral of a, with
/// optional theta-mollification (smooth time ramp on gamma/g vanishing on
/// [0, theta], spatial cutoff of omega0 on U_theta(Gamma)).
class ReducedData {
public:
    ReducedData() = default;

    const DomainGeometry& geom() const { return *geom_; }
    const ScalarField& omega0() const { return omega0_; }
    double theta() const { return theta_; }
    bool mollified() const { return theta_ > 0.0; }

    ReducedSlice at(double t) const;
    BoundaryValues gamma_at(double t) const;
    BoundaryValues g_at(double t) const;
    BoundaryValues A_at(double t) const;

    double flux_tolerance() const { return flux_tol_; }

    friend ReducedData reduce_boundary_data(const BoundaryData& data, const DomainGeometry& geom,
                                            const Grid& grid);
    friend ReducedData mollify_data(const ReducedData& rd, const ScalarField& omega0, double theta,
                                    double T, bool gaussian_smoothing);

private:
    const DomainGeometry* geom_ = nullptr;
    const Grid* grid_ = nullptr;
    BoundaryData raw_;
    ScalarField omega0_;
    double theta_ = 0.0;
    double flux_tol_ = 0.0;
    bool smooth_ = false;   // circular Gaussian smoothing of boundary samples

    double time_ramp(double t) const;
    BoundaryValues smooth_in_s(const BoundaryValues& v) const;
};

ReducedData reduce_boundary_data(const BoundaryData& data, const DomainGeometry& geom,
                                 const Grid& grid);

/// theta must lie in (0, min(sigma0, T/4)); throws BadTheta otherwise.
ReducedData mollify_data(const ReducedData& rd, const ScalarField& omega0, double theta,
                         double T, bool gaussian_smoothing = false);

/// Smoothstep ramp: 0 for t <= theta, 1 for t >= 2 theta, C^1 in between.
double mollify_time_ramp(double t, double theta);

/// L_p norm of boundary samples (area weight ds); p = inf gives the max norm.
double boundary_norm(const BoundaryValues& v, const DomainGeometry& geom, double p);

/// Discrete W_p^2 data norm of boundary samples: (sum (|f|^p + |f'|^p + |f''|^p) ds)^(1/p).
double boundary_sobolev2_norm(const BoundaryValues& v, const DomainGeometry& geom, double p);

} // namespace slipstream
