#pragma once

#include <cmath>

namespace scint {

/// Point of the extended phase space: position q, momentum p, and the action
/// coordinate s that the contact structure couples to.
struct PhaseState {
    double q = 0.0;
    double p = 0.0;
    double s = 0.0;
};

/// Squared Euclidean distance between two states.
inline double distance_squared(const PhaseState& a, const PhaseState& b) {
    const double dq = a.q - b.q;
    const double dp = a.p - b.p;
    const double ds = a.s - b.s;
    return dq * dq + dp * dp + ds * ds;
}

/// Euclidean distance between two states.
inline double distance(const PhaseState& a, const PhaseState& b) {
    return std::sqrt(distance_squared(a, b));
}

inline bool all_finite(const PhaseState& x) {
    return std::isfinite(x.q) && std::isfinite(x.p) && std::isfinite(x.s);
}

/// Contact one-form ds − p·dq evaluated at `at` on the tangent vector
/// `tangent` (whose components are read as (dq, dp, ds)).
inline double contact_form(const PhaseState& at, const PhaseState& tangent) {
    return tangent.s - at.p * tangent.q;
}

}  // namespace scint
