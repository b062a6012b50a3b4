#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "slipstream/grid.hpp"
#include "slipstream/vec2.hpp"

namespace slipstream {

enum class Quantity { vorticity, stream, generic };

std::string quantity_tag(Quantity q);
Quantity quantity_from_tag(const std::string& tag);

/// Cell-centered scalar grid function.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const Grid& g, Quantity q = Quantity::generic, double fill = 0.0)
        : n_r_(g.n_r()), n_s_(g.n_s()), tag_(q), v_(g.n_cells(), fill) {}

    std::size_t n_r() const { return n_r_; }
    std::size_t n_s() const { return n_s_; }
    Quantity tag() const { return tag_; }
    void set_tag(Quantity q) { tag_ = q; }

    double& operator()(std::size_t i, std::size_t j) { return v_[i * n_s_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return v_[i * n_s_ + j]; }

    std::vector<double>& data() { return v_; }
    const std::vector<double>& data() const { return v_; }

    bool all_finite() const {
        for (double x : v_)
            if (!std::isfinite(x)) return false;
        return true;
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : v_) m = std::max(m, std::abs(x));
        return m;
    }

private:
    std::size_t n_r_ = 0, n_s_ = 0;
    Quantity tag_ = Quantity::generic;
    std::vector<double> v_;
};

/// Node-centered grid function (stream function): (n_r + 1) rings of n_s nodes,
/// boundary rings i = 0 (inner circle) and i = n_r (outer circle) hold the
/// Dirichlet data.
class NodeField {
public:
    NodeField() = default;
    explicit NodeField(const Grid& g, double fill = 0.0)
        : n_r_(g.n_r()), n_s_(g.n_s()), v_((g.n_r() + 1) * g.n_s(), fill) {}

    std::size_t n_r() const { return n_r_; }
    std::size_t n_s() const { return n_s_; }

    double& operator()(std::size_t i, std::size_t j) { return v_[i * n_s_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return v_[i * n_s_ + j]; }

    std::vector<double>& data() { return v_; }
    const std::vector<double>& data() const { return v_; }

private:
    std::size_t n_r_ = 0, n_s_ = 0;
    std::vector<double> v_;
};

/// Face-normal velocity components on the staggered polar mesh.
///   ur(i, j):  +e_r component on the radial face (i, j), i = 0..n_r
///   uth(i, j): +e_theta component on the angular face (i, j), i = 0..n_r-1
/// Constructed from a stream function the discrete divergence of every cell
/// vanishes identically (fluxes telescope around the cell corners).
class VelocityField {
public:
    VelocityField() = default;
    explicit VelocityField(const Grid& g)
        : n_r_(g.n_r()), n_s_(g.n_s()),
          ur_((g.n_r() + 1) * g.n_s(), 0.0), uth_(g.n_r() * g.n_s(), 0.0) {}

    std::size_t n_r() const { return n_r_; }
    std::size_t n_s() const { return n_s_; }

    double& ur(std::size_t i, std::size_t j) { return ur_[i * n_s_ + j]; }
    double ur(std::size_t i, std::size_t j) const { return ur_[i * n_s_ + j]; }
    double& uth(std::size_t i, std::size_t j) { return uth_[i * n_s_ + j]; }
    double uth(std::size_t i, std::size_t j) const { return uth_[i * n_s_ + j]; }

    /// Net outward volume flux of cell (i, j) divided by its area.
    double divergence(const Grid& g, std::size_t i, std::size_t j) const {
        const double out = ur(i + 1, j) * g.radial_face_len(i + 1) - ur(i, j) * g.radial_face_len(i)
                         + (uth(i, g.jp(j)) - uth(i, j)) * g.angular_face_len();
        return out / g.cell_area(i);
    }

    /// Cell-centered Cartesian reconstruction (face averages, for diagnostics).
    Vec2 cell_velocity(const Grid& g, std::size_t i, std::size_t j) const {
        const double vr = 0.5 * (ur(i, j) + ur(i + 1, j));
        const double vt = 0.5 * (uth(i, j) + uth(i, g.jp(j)));
        const double th = g.theta_center(j);
        const double c = std::cos(th), s = std::sin(th);
        return {vr * c - vt * s, vr * s + vt * c};
    }

    double max_face_speed() const {
        double m = 0.0;
        for (double u : ur_) m = std::max(m, std::abs(u));
        for (double u : uth_) m = std::max(m, std::abs(u));
        return m;
    }

private:
    std::size_t n_r_ = 0, n_s_ = 0;
    std::vector<double> ur_, uth_;
};

} // namespace slipstream
