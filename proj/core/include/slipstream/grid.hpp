#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace slipstream {

/// Cell-centered polar finite-volume mesh on the annulus r0 < r < r1,
/// uniform in r and theta, periodic in theta.
///
/// Layout:
///   cells   (i, j): i = 0..n_r-1 radial, j = 0..n_s-1 angular
///   nodes   (i, j): i = 0..n_r   cell corners; stream function lives here
///   radial  faces (i, j): arc at r_node(i) spanning [theta_node(j), theta_node(j+1)],
///                         normal +e_r; i = 0 and i = n_r are the boundary rings
///   angular faces (i, j): segment at theta_node(j) spanning [r_node(i), r_node(i+1)],
///                         normal +e_theta; always interior (periodic)
class Grid {
public:
    Grid(double r0, double r1, std::size_t n_r, std::size_t n_s)
        : r0_(r0), r1_(r1), n_r_(n_r), n_s_(n_s),
          dr_((r1 - r0) / static_cast<double>(n_r)),
          dth_(two_pi() / static_cast<double>(n_s)) {
        assert(r0 > 0.0 && r1 > r0 && n_r >= 2 && n_s >= 4);
    }

    static constexpr double two_pi() { return 6.283185307179586476925286766559; }

    std::size_t n_r() const { return n_r_; }
    std::size_t n_s() const { return n_s_; }
    std::size_t n_cells() const { return n_r_ * n_s_; }
    double r_inner() const { return r0_; }
    double r_outer() const { return r1_; }
    double dr() const { return dr_; }
    double dth() const { return dth_; }

    double r_node(std::size_t i) const { return r0_ + static_cast<double>(i) * dr_; }
    double r_center(std::size_t i) const { return r0_ + (static_cast<double>(i) + 0.5) * dr_; }
    double theta_node(std::size_t j) const { return static_cast<double>(j) * dth_; }
    double theta_center(std::size_t j) const { return (static_cast<double>(j) + 0.5) * dth_; }

    double cell_area(std::size_t i) const {
        const double ri = r_node(i), ro = r_node(i + 1);
        return 0.5 * (ro * ro - ri * ri) * dth_;
    }
    double radial_face_len(std::size_t i) const { return r_node(i) * dth_; }
    double angular_face_len() const { return dr_; }

    double total_area() const {
        double s = 0.0;
        for (std::size_t i = 0; i < n_r_; ++i) s += cell_area(i) * static_cast<double>(n_s_);
        return s;
    }

    std::size_t jp(std::size_t j) const { return (j + 1) % n_s_; }
    std::size_t jm(std::size_t j) const { return (j + n_s_ - 1) % n_s_; }

    std::size_t cell_index(std::size_t i, std::size_t j) const { return i * n_s_ + j; }

    bool same_shape(const Grid& o) const {
        return n_r_ == o.n_r_ && n_s_ == o.n_s_ && r0_ == o.r0_ && r1_ == o.r1_;
    }

private:
    double r0_, r1_;
    std::size_t n_r_, n_s_;
    double dr_, dth_;
};

} // namespace slipstream
