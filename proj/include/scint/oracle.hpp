#pragma once

#include <cstdint>

#include "scint/brownian_path.hpp"
#include "scint/contact_system.hpp"
#include "scint/phase_state.hpp"
#include "scint/schemes.hpp"

namespace scint {

struct OracleConfig {
    /// The reference solution is computed on a grid 2^refine_k times finer
    /// than the input path, then read back on the coarse grid.
    int refine_k = 5;
};

/// Closed-form zero-noise solution for the free-particle family (omega ≡ 0):
///   P(t) = p0·e^{−γt}
///   Q(t) = q0 + p0·(1 − e^{−γt})/(mγ)         (q0 + p0·t/m when γ = 0)
///   S(t) = (s0 + p0²/(2mγ))e^{−γt} − (p0²/(2mγ))e^{−2γt}
/// Throws ConfigError when omega does not vanish.
PhaseState deterministic_exact(const ContactSystem& sys,
                               const PhaseState& initial, double t);

/// One step of the Stratonovich predictor–corrector (Heun) rule built from
/// the generic drift/diffusion fields. Strong order 1 for this noise model;
/// used only as a reference integrator, never as a production scheme.
PhaseState heun_step(const ContactSystem& sys, const PhaseState& x, double t,
                     double h, double dW);

/// Reference trajectory on the grid of `path`: Brownian-bridge refine the
/// path by 2^refine_k, run Heun on the fine grid, and keep every
/// 2^refine_k-th state.
Trajectory pathwise_reference(const ContactSystem& sys,
                              const BrownianPath& path,
                              const PhaseState& initial,
                              const OracleConfig& cfg = {});

/// Endpoint-only variant of pathwise_reference (no trajectory storage).
PhaseState reference_endpoint(const ContactSystem& sys,
                              const BrownianPath& path,
                              const PhaseState& initial,
                              const OracleConfig& cfg = {});

}  // namespace scint
