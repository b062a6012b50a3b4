#pragma once

#include <functional>
#include <string>
#include <vector>

#include "slipstream/geometry.hpp"
#include "slipstream/vec2.hpp"

namespace slipstream {

/// Closed-form space-time test function with its gradient and time
/// derivative. Support lies in (Omega union the inflow arc) x [0, T); each
/// instance declares the margin sigma_bar by which its support clears the
/// outflow/impermeable boundary and the final time.
struct TestFunction {
    std::string name;
    double sigma_bar = 0.0;
    bool positive = true;
    std::function<double(Vec2, double)> value;
    std::function<double(Vec2, double)> time_derivative;
    std::function<Vec2(Vec2, double)> gradient;
};

/// Three built-in families: an interior radial bump with a terminal time
/// taper, a collar bump over the inflow arc of the outer circle, and a fully
/// localized space-time product bump. The inflow arc is centered at
/// inflow_center (angle) with the given angular half width.
std::vector<TestFunction> builtin_test_functions(const DomainGeometry& geom, double T,
                                                 double inflow_center, double inflow_half_width);

} // namespace slipstream
