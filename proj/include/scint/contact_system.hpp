#pragma once

#include <functional>

#include "scint/phase_state.hpp"

namespace scint {

/// Parameters of the damped-oscillator family with linear noise coupling:
/// drift Hamiltonian  H0 = p²/(2m) + m·ω(t)²·q²/2 + γ·s
/// noise Hamiltonian  H1 = a·q
/// The experiments in this repository run the free-particle member
/// (omega ≡ 0); the machinery below accepts the full family.
struct OscillatorParams {
    double mass = 1.0;
    double gamma = 1.0;
    double a = 1.0;
    /// Constant frequency; used when `omega` is empty.
    double omega0 = 0.0;
    /// Optional time-dependent frequency ω(t).
    std::function<double(double)> omega;

    double omega_at(double t) const { return omega ? omega(t) : omega0; }
    bool omega_is_zero() const { return !omega && omega0 == 0.0; }
};

/// A two-Hamiltonian contact system, stored as evaluation callbacks:
/// the Hamiltonians themselves plus their six first partials. All of the
/// generic machinery (drift/diffusion assembly, the reference integrator,
/// the partial-derivative self-check) goes through these callbacks only.
struct ContactSystem {
    using Field = std::function<double(const PhaseState&, double)>;

    Field h0, h1;
    Field dq_h0, dp_h0, ds_h0;
    Field dq_h1, dp_h1, ds_h1;

    OscillatorParams params;
};

/// Builds the oscillator-family system with analytic partials.
/// Throws ConfigError for mass <= 0 or a negative damping rate.
ContactSystem make_oscillator(const OscillatorParams& params);

/// Drift vector field of the contact equations of motion:
///   dq/dt =  ∂H0/∂p
///   dp/dt = −(∂H0/∂q + p·∂H0/∂s)
///   ds/dt =  p·∂H0/∂p − H0
PhaseState eval_drift(const ContactSystem& sys, const PhaseState& x, double t);

/// Diffusion vector field: same template applied to H1 (the coefficient of
/// the Stratonovich noise ∘dW).
PhaseState eval_diffusion(const ContactSystem& sys, const PhaseState& x, double t);

/// Cross-checks the stored analytic partials against central differences of
/// the stored Hamiltonians at (x, t). Returns the largest normalized
/// residual max |analytic − numeric| / (1 + |analytic|) over all six
/// partials; a correct system stays below ~1e−9 for eps = 1e−6.
double check_partials(const ContactSystem& sys, const PhaseState& x, double t,
                      double eps = 1e-6);

}  // namespace scint
