#include "slipstream/geometry.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slipstream {

namespace {

// Circle frames in closed form. The arc-length parametrization follows the
// (n, s_vec) orientation convention: counterclockwise on the outer circle,
// clockwise on the inner one.
BoundaryComponent make_circle(double radius, bool is_outer, std::size_t n_nodes) {
    BoundaryComponent c;
    c.is_outer = is_outer;
    c.radius = radius;
    c.total_length = Grid::two_pi() * radius;
    c.n_nodes = n_nodes;
    c.s.resize(n_nodes);
    c.position.resize(n_nodes);
    c.normal.resize(n_nodes);
    c.tangent.resize(n_nodes);
    c.curvature.resize(n_nodes);
    const double ds = c.total_length / static_cast<double>(n_nodes);
    for (std::size_t m = 0; m < n_nodes; ++m) {
        const double s = static_cast<double>(m) * ds;
        const double th = (is_outer ? 1.0 : -1.0) * s / radius;
        const Vec2 er{std::cos(th), std::sin(th)};
        c.s[m] = s;
        c.position[m] = radius * er;
        c.normal[m] = is_outer ? er : -1.0 * er;
        c.tangent[m] = c.normal[m].rot90();
        c.curvature[m] = is_outer ? 1.0 / radius : -1.0 / radius;
    }
    return c;
}

} // namespace

DomainGeometry DomainGeometry::annulus(double r_inner, double r_outer,
                                       std::size_t n_boundary_nodes) {
    if (!(r_inner > 0.0) || !(r_outer > r_inner))
        throw std::invalid_argument("annulus requires 0 < r_inner < r_outer");
    DomainGeometry g;
    g.kind_ = DomainKind::annulus;
    g.r_inner_ = r_inner;
    g.r_outer_ = r_outer;
    g.comps_.push_back(make_circle(r_outer, true, n_boundary_nodes));
    g.comps_.push_back(make_circle(r_inner, false, n_boundary_nodes));
    return g;
}

DomainGeometry DomainGeometry::disk(double r_outer, double core_radius,
                                    std::size_t n_boundary_nodes) {
    DomainGeometry g = annulus(core_radius, r_outer, n_boundary_nodes);
    g.kind_ = DomainKind::disk;
    return g;
}

double DomainGeometry::area() const {
    return std::numbers::pi * (r_outer_ * r_outer_ - r_inner_ * r_inner_);
}

double DomainGeometry::signed_distance_r(double r) const {
    return std::min(r_outer_ - r, r - r_inner_);
}

double DomainGeometry::signed_distance(Vec2 x) const {
    return signed_distance_r(x.norm());
}

Frame arc_frame(const BoundaryComponent& c, double s) {
    const double L = c.total_length;
    double sw = std::fmod(s, L);
    if (sw < 0.0) sw += L;
    const double th = (c.is_outer ? 1.0 : -1.0) * sw / c.radius;
    const Vec2 er{std::cos(th), std::sin(th)};
    Frame f;
    f.position = c.radius * er;
    f.normal = c.is_outer ? er : -1.0 * er;
    f.tangent = f.normal.rot90();
    f.curvature = c.is_outer ? 1.0 / c.radius : -1.0 / c.radius;
    return f;
}

double strip_indicator(double d, double sigma) {
    assert(sigma > 0.0);
    if (d < sigma) return 0.0;
    if (d < 2.0 * sigma) return (d - sigma) / sigma;
    return 1.0;
}

std::vector<BoundaryRegion> boundary_partition(const std::vector<double>& a_nodes,
                                               double eps_sign) {
    std::vector<BoundaryRegion> out(a_nodes.size(), BoundaryRegion::impermeable);
    for (std::size_t m = 0; m < a_nodes.size(); ++m) {
        if (a_nodes[m] < -eps_sign)
            out[m] = BoundaryRegion::inflow;
        else if (a_nodes[m] > eps_sign)
            out[m] = BoundaryRegion::outflow;
    }
    return out;
}

DistanceField make_distance_field(const DomainGeometry& geom, const Grid& grid) {
    DistanceField df;
    df.sigma0 = geom.sigma0();
    df.values = ScalarField(grid, Quantity::generic);
    for (std::size_t i = 0; i < grid.n_r(); ++i) {
        const double d = geom.signed_distance_r(grid.r_center(i));
        for (std::size_t j = 0; j < grid.n_s(); ++j) df.values(i, j) = d;
    }
    return df;
}

} // namespace slipstream
