#pragma once

#include <algorithm>
#include <cmath>

namespace wbs {

// All float slack used by the library lives here.
struct Tolerances {
    double metric_relative = 1e-9;    // triangle inequality / symmetry on ingested matrices
    double float_slack = 1e-12;       // absolute slack, scaled by magnitude
    double sandwich_relative = 1e-9;  // two-sided embedding bound

    // lhs <= rhs up to float_slack * max(1, |scale|)
    bool leq(double lhs, double rhs, double scale = 1.0) const {
        return lhs <= rhs + float_slack * std::max(1.0, std::abs(scale));
    }
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

} // namespace wbs
