#pragma once

#include <cstdint>
#include <vector>

#include "scint/phase_state.hpp"

namespace scint {

// ---------------------------------------------------------------------------
// Generating-function integrator.
//
// The position update solves a quadratic whose coefficients come from a
// three-term polynomial ansatz S = x + y·Q + z·Q² propagated by explicit
// recursions, together with the cumulative sensitivities of (x, y, z) with
// respect to their initial values. Two q-update modes exist:
//
//   printed: a closed-form discriminant expression in (z, h) alone. With the
//            canonical initial data (z0 = 0.65, h = 0.1) its discriminant is
//            negative at the very first step (−1.7111) — this failure is a
//            documented, tested outcome, not a bug.
//   general: the quadratic  κ·q'² + χ·q' + η = 0  with κ, χ, η taken from the
//            cumulative sensitivities and η shifted by the conformal
//            reference level b0·e^{−γ·t}.
// ---------------------------------------------------------------------------

enum class HJMode { printed, general };
enum class HJPolicy { error, clamp_to_zero };
enum class HJBranch { plus, minus };

struct HJConfig {
    HJMode mode = HJMode::printed;
    HJPolicy policy = HJPolicy::error;
    HJBranch branch = HJBranch::plus;
};

/// Quadratic-ansatz coefficients (x, y, z), their cumulative sensitivities
/// (sx, sy, sz) with respect to the initial coefficients, and the conformal
/// reference amplitude b0 fixed by the initial position.
struct HJState {
    double x = 0.0, y = 0.0, z = 0.0;
    double sx = 1.0, sy = 1.0, sz = 1.0;
    double b0 = 0.0;
};

/// Phase state bundled with the coefficient state it was produced by.
struct HJComposite {
    PhaseState phase;
    HJState coeffs;
};

/// Reference amplitude b0 at q0: 1 + q0 + q0².
double hj_b0(double q0);

/// Conformal reference level b0·e^{−γ·t}.
double b_reference(double b0, double gamma, double t);

/// Explicit Euler update of the coefficient triple:
///   z' = z − 2z²h − zh
///   y' = y − 2z(y − dW)h − (y − dW)h
///   x' = x − (h/2)(y² + dW² − 2·dW·y) − xh
/// Sensitivities and b0 are carried through unchanged.
HJState coeff_step(const HJState& c, double h, double dW);

/// Multiplies the cumulative sensitivities by this step's factors
///   (1 − h − 4hz, 1 − h − 2hz, 1 − h)  for (sz, sy, sx).
/// A factor <= 0 means the coefficient flow is no longer invertible:
/// DegeneracyError.
HJState sensitivity_step(const HJState& c, double h);

/// Closed-form position update (printed mode), using the CURRENT z:
///   q' = [−(1 − h − 2hz) ± √(12h(1−h)z + 4h²z² − 3(1−h)²)] / [2(1 − h − 4hz)]
/// Negative discriminant: DomainError (policy=error) or clamped to zero
/// (policy=clamp_to_zero). Vanishing denominator: DegeneracyError.
double hj_q_update(const HJState& c, double h, const HJConfig& cfg);

/// General position update from cumulative sensitivities:
///   κ = sz, χ = sy, η = sx − b0·e^{−γ·t_next},  κq'² + χq' + η = 0.
/// κ = 0: DegeneracyError. Negative discriminant handled per policy.
double hj_q_general(const HJState& c, double gamma, double t_next,
                    const HJConfig& cfg);

/// Momentum from the updated coefficients: p' = y' + 2z'q' − dW.
double hj_p_update(const HJState& next, double q_next, double dW);

/// Action from the updated coefficients: s' = x' + y'q' + z'q'² − q'·dW.
double hj_s_update(const HJState& next, double q_next, double dW);

/// One full step and the discriminant it consumed (recorded for the
/// coefficient trace). Order: sensitivities advance with factors at the
/// current z; q' is computed (printed mode from the current z, general mode
/// from the advanced sensitivities at t_next = t + h); the coefficients
/// advance; p' and s' come from the advanced coefficients.
struct HJStepResult {
    HJComposite state;
    double discriminant = 0.0;
};
HJStepResult hj_step(const HJComposite& cur, double t, double h, double dW,
                     double gamma, const HJConfig& cfg);

/// One row of the coefficient trace (debug output of the CLI).
struct HJTraceRow {
    std::int64_t n;
    double t;
    double x, y, z, sx, sy, sz, disc, q, p, s;
};
using HJTrace = std::vector<HJTraceRow>;

}  // namespace scint
