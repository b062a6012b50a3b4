#include "slipstream/testfn.hpp"

#include <cmath>

namespace slipstream {

namespace {

// C-infinity bump, = exp(1 - 1/(1-u^2)) on (-1, 1), zero outside, peak 1.
double bump(double u) {
    const double u2 = u * u;
    if (u2 >= 1.0 - 1e-12) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u2));
}

double bump_d(double u) {
    const double u2 = u * u;
    if (u2 >= 1.0 - 1e-12) return 0.0;
    const double q = 1.0 - u2;
    return bump(u) * (-2.0 * u / (q * q));
}

double smoothstep(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * (3.0 - 2.0 * u);
}

double smoothstep_d(double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    return 6.0 * u * (1.0 - u);
}

double wrap_angle(double a) {
    const double tp = Grid::two_pi();
    a = std::fmod(a, tp);
    if (a > 0.5 * tp) a -= tp;
    if (a < -0.5 * tp) a += tp;
    return a;
}

} // namespace

std::vector<TestFunction> builtin_test_functions(const DomainGeometry& geom, double T,
                                                 double inflow_center, double inflow_half_width) {
    std::vector<TestFunction> out;
    const double r0 = geom.r_inner(), r1 = geom.r_outer();
    const double sigma0 = geom.sigma0();
    const double rc = 0.5 * (r0 + r1);

    // terminal taper: 1 up to T - 2 sbt, 0 from T - sbt on
    const double sbt = T / 8.0;
    auto taper = [=](double t) { return 1.0 - smoothstep((t - (T - 2.0 * sbt)) / sbt); };
    auto taper_d = [=](double t) { return -smoothstep_d((t - (T - 2.0 * sbt)) / sbt) / sbt; };

    {
        TestFunction f;
        f.name = "interior_bump";
        const double wr = 0.8 * sigma0;
        f.sigma_bar = std::min(0.2 * sigma0, sbt);
        f.positive = true;
        f.value = [=](Vec2 x, double t) { return bump((x.norm() - rc) / wr) * taper(t); };
        f.time_derivative = [=](Vec2 x, double t) {
            return bump((x.norm() - rc) / wr) * taper_d(t);
        };
        f.gradient = [=](Vec2 x, double t) -> Vec2 {
            const double r = x.norm();
            if (r < 1e-14) return {0.0, 0.0};
            const double dr = bump_d((r - rc) / wr) / wr * taper(t);
            return {dr * x.x / r, dr * x.y / r};
        };
        out.push_back(std::move(f));
    }

    {
        TestFunction f;
        f.name = "inflow_collar";
        const double wd = 0.8 * sigma0;                // collar depth from the outer circle
        const double margin = 0.2 * inflow_half_width; // angular clearance from the arc ends
        const double wa = inflow_half_width - margin;
        const double ang_clear = 2.0 * std::sqrt((r1 - wd) * r1) * std::sin(0.5 * margin);
        f.sigma_bar = std::min({0.99 * ang_clear, 0.99 * (2.0 * sigma0 - wd), sbt});
        f.positive = true;
        auto radial = [=](double r) { return 1.0 - smoothstep((r1 - r) / wd); };
        auto radial_dr = [=](double r) { return smoothstep_d((r1 - r) / wd) / wd; };
        auto angular = [=](double th) { return bump(wrap_angle(th - inflow_center) / wa); };
        auto angular_d = [=](double th) {
            return bump_d(wrap_angle(th - inflow_center) / wa) / wa;
        };
        f.value = [=](Vec2 x, double t) {
            return radial(x.norm()) * angular(std::atan2(x.y, x.x)) * taper(t);
        };
        f.time_derivative = [=](Vec2 x, double t) {
            return radial(x.norm()) * angular(std::atan2(x.y, x.x)) * taper_d(t);
        };
        f.gradient = [=](Vec2 x, double t) -> Vec2 {
            const double r = x.norm();
            if (r < 1e-14) return {0.0, 0.0};
            const double th = std::atan2(x.y, x.x);
            const double fr = radial_dr(r) * angular(th) * taper(t);
            const double fa = radial(r) * angular_d(th) * taper(t) / r;
            const double c = x.x / r, s = x.y / r;
            return {fr * c - fa * s, fr * s + fa * c};
        };
        out.push_back(std::move(f));
    }

    {
        TestFunction f;
        f.name = "spacetime_bump";
        const double wr = 0.8 * sigma0;
        const double wa = inflow_half_width;
        const double tm = 0.45 * T, wt = 0.45 * T;
        f.sigma_bar = std::min(0.2 * sigma0, 0.1 * T);
        f.positive = true;
        auto tf = [=](double t) { return bump((t - tm) / wt); };
        auto tf_d = [=](double t) { return bump_d((t - tm) / wt) / wt; };
        f.value = [=](Vec2 x, double t) {
            const double th = std::atan2(x.y, x.x);
            return bump((x.norm() - rc) / wr) * bump(wrap_angle(th - inflow_center) / wa) * tf(t);
        };
        f.time_derivative = [=](Vec2 x, double t) {
            const double th = std::atan2(x.y, x.x);
            return bump((x.norm() - rc) / wr) * bump(wrap_angle(th - inflow_center) / wa) *
                   tf_d(t);
        };
        f.gradient = [=](Vec2 x, double t) -> Vec2 {
            const double r = x.norm();
            if (r < 1e-14) return {0.0, 0.0};
            const double th = std::atan2(x.y, x.x);
            const double br = bump((r - rc) / wr);
            const double ba = bump(wrap_angle(th - inflow_center) / wa);
            const double fr = bump_d((r - rc) / wr) / wr * ba * tf(t);
            const double fa = br * bump_d(wrap_angle(th - inflow_center) / wa) / wa * tf(t) / r;
            const double c = x.x / r, s = x.y / r;
            return {fr * c - fa * s, fr * s + fa * c};
        };
        out.push_back(std::move(f));
    }

    return out;
}

} // namespace slipstream
