#pragma once

#include <cstddef>
#include <vector>

#include "slipstream/field.hpp"
#include "slipstream/vec2.hpp"

namespace slipstream {

enum class DomainKind { annulus, disk };

struct Frame {
    Vec2 position;
    Vec2 normal;   // outward
    Vec2 tangent;  // normal rotated by +90 degrees
    double curvature = 0.0;
};

/// One closed boundary circle sampled at equally spaced arc-length nodes.
/// The ordered pair (n, s_vec) carries the standard plane orientation, so the
/// arc length runs counterclockwise on the outer circle and clockwise on the
/// inner one; along the curve dn/ds = k s_vec, which fixes the curvature sign
/// (negative on the inner circle).
struct BoundaryComponent {
    bool is_outer = true;
    double radius = 0.0;
    double total_length = 0.0;
    std::size_t n_nodes = 0;

    std::vector<double> s;          // arc-length positions, s[0] = 0 at (radius, 0)
    std::vector<Vec2> position;
    std::vector<Vec2> normal;
    std::vector<Vec2> tangent;
    std::vector<double> curvature;

    double ds() const { return total_length / static_cast<double>(n_nodes); }

    /// Angular grid index of node m (involution: also maps grid index -> node).
    std::size_t angle_index(std::size_t m) const {
        return is_outer ? m : (n_nodes - m) % n_nodes;
    }
};

class DomainGeometry {
public:
    static DomainGeometry annulus(double r_inner, double r_outer, std::size_t n_boundary_nodes);
    /// Disk with an excised impermeable core (approximation; the core radius
    /// is configurable and the inner data is expected to be zero).
    static DomainGeometry disk(double r_outer, double core_radius, std::size_t n_boundary_nodes);

    DomainKind kind() const { return kind_; }
    double r_inner() const { return r_inner_; }
    double r_outer() const { return r_outer_; }
    double area() const;

    /// Width of the tubular neighborhood of the boundary where the distance
    /// function is smooth: half the gap between the circles.
    double sigma0() const { return 0.5 * (r_outer_ - r_inner_); }

    const std::vector<BoundaryComponent>& components() const { return comps_; }
    const BoundaryComponent& outer() const { return comps_[0]; }
    const BoundaryComponent& inner() const { return comps_[1]; }

    /// Positive inside the domain, zero on the boundary, negative outside.
    double signed_distance(Vec2 x) const;
    double signed_distance_r(double r) const;

private:
    DomainKind kind_ = DomainKind::annulus;
    double r_inner_ = 0.0, r_outer_ = 0.0;
    std::vector<BoundaryComponent> comps_;
};

/// Interpolated frame at arc length s (s wraps modulo the total length).
Frame arc_frame(const BoundaryComponent& c, double s);

/// Piecewise-linear ramp: 0 for d < sigma, (d - sigma)/sigma on [sigma, 2 sigma), 1 beyond.
double strip_indicator(double d, double sigma);

enum class BoundaryRegion : int { inflow = -1, impermeable = 0, outflow = 1 };

/// Per-node labels from the sign of the normal velocity trace.
std::vector<BoundaryRegion> boundary_partition(const std::vector<double>& a_nodes,
                                               double eps_sign = 1e-12);

struct DistanceField {
    ScalarField values;   // signed distance at cell centers
    double sigma0 = 0.0;
};

DistanceField make_distance_field(const DomainGeometry& geom, const Grid& grid);

} // namespace slipstream
