#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scint/brownian_path.hpp"
#include "scint/contact_system.hpp"
#include "scint/hj_engine.hpp"
#include "scint/phase_state.hpp"

namespace scint {

enum class SchemeId { euler_maruyama, herglotz_contact, hj_contact };

/// Canonical name / short column tag ("em", "hg", "hj") for a scheme.
std::string scheme_name(SchemeId id);
std::string scheme_tag(SchemeId id);
/// Accepts canonical names and the short tags. Throws UsageError otherwise.
SchemeId parse_scheme(const std::string& name);

/// Which drift term the action line of the Euler–Maruyama step carries.
/// `printed` keeps the extra −(h/2)·a·q term of the transcribed one-step
/// map; that term is not a Stratonovich-to-Itô correction (it survives at
/// zero noise and biases the deterministic limit), so `none` is available
/// for consistency studies.
enum class EmCorrection { printed, none };

/// Which momentum line the variational contact step uses. `printed` is the
/// transcribed one-step map (∂p'/∂p = 1: no deterministic damping, so the
/// scheme does not converge to the flow — measured and documented by the
/// acceptance suite). `conformal` multiplies the momentum line by the
/// per-step conformal factor (1 − γh/2)/(1 + γh/2), which restores the
/// damping the variational derivation produces and makes the scheme
/// strongly convergent of order 1.
enum class HerglotzPUpdate { printed, conformal };

struct StepConfig {
    EmCorrection em_correction = EmCorrection::printed;
    HerglotzPUpdate herglotz_p = HerglotzPUpdate::printed;
};

/// Euler–Maruyama step assembled from the generic drift/diffusion fields,
/// plus the optional transcribed action-drift term (see EmCorrection).
PhaseState em_step(const ContactSystem& sys, const PhaseState& x, double t,
                   double h, double dW, const StepConfig& cfg = {});

/// Variational contact step for the free-particle family (omega ≡ 0):
///   q' = q + (1 − γh/2)·h·p/m − h·a·dW
///   p' = p − a·dW/(1 − γh/2)            [× λ in conformal mode]
///   s' = [s·(1 − γh/2) + m(q' − q)²/(2h) − a·q·dW] / (1 + γh/2)
/// The s-line is the closed-form solution of the implicit midpoint-damped
/// action update. Requires 0 < h and γh < 2.
PhaseState herglotz_step(const ContactSystem& sys, const PhaseState& x, double t,
                         double h, double dW, const StepConfig& cfg = {});

struct Trajectory {
    std::vector<double> times;
    std::vector<PhaseState> states;
    SchemeId scheme = SchemeId::euler_maruyama;
    std::uint64_t seed = 0;
};

/// Options consumed by integrate(); only the pieces relevant to the chosen
/// scheme are read.
struct IntegrateOptions {
    StepConfig step;
    HJConfig hj;
    /// Initial coefficient triple for the generating-function scheme.
    double x0 = 0.65, y0 = 0.65, z0 = 0.65;
    /// Optional sink for the per-step coefficient trace (hj only).
    HJTrace* hj_trace = nullptr;
};

/// Drives the selected one-step map across the whole path, recording every
/// state. Any step failure is rethrown with the failing step index
/// attached; states that leave R³ raise OverflowError.
Trajectory integrate(SchemeId scheme, const ContactSystem& sys,
                     const BrownianPath& path, const PhaseState& initial,
                     const IntegrateOptions& opts = {});

}  // namespace scint
