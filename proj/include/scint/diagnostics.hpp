#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "scint/brownian_path.hpp"
#include "scint/contact_system.hpp"
#include "scint/oracle.hpp"
#include "scint/phase_state.hpp"
#include "scint/schemes.hpp"

namespace scint {

/// Finite-difference tangent map of a scheme's time-t flow. Rows are the
/// output coordinates (Q, P, S), columns the perturbed initial coordinates
/// (q, p, s). The base initial state is kept because the dq-residual of the
/// contact form needs the initial momentum.
struct FlowJacobian {
    std::array<std::array<double, 3>, 3> d{};
    PhaseState base_out;
    PhaseState base_in;
    double t_end = 0.0;
};

/// Central-difference Jacobian of the flow up to t_end on a common noise
/// path. t_end must land on the path's grid (the flow is truncated there);
/// eps is the perturbation applied to each initial coordinate in turn.
FlowJacobian flow_jacobian(SchemeId scheme, const ContactSystem& sys,
                           const PhaseState& initial, const BrownianPath& path,
                           double t_end, double eps = 1e-6,
                           const IntegrateOptions& opts = {});

/// How the flow transports the contact form ds − p dq, extracted from the
/// tangent map: the pullback is λ'·(ds − p dq) + r_p·dp + r_q·dq, so an
/// exact contact map has r_p = r_q = 0 and λ = λ'.
struct ContactReport {
    double lambda_est = 0.0;  ///< ∂S/∂s − P·∂Q/∂s
    double r_p = 0.0;         ///< ∂S/∂p − P·∂Q/∂p
    double r_q = 0.0;         ///< ∂S/∂q − P·∂Q/∂q + λ·p
    double t = 0.0;
};

ContactReport contact_residuals(const FlowJacobian& jac);

/// Reference conformal factor e^{−γt} of the exact flow.
double conformal_reference(double gamma, double t);

/// Root-mean-square endpoint errors of a scheme against the refined-path
/// reference integrator, over an ensemble of common paths.
struct MsError {
    /// √(mean over paths of |state_N − reference(T)|²), Euclidean on (q,p,s).
    double standard = 0.0;
    /// √(mean of [(Q+P+S)² − (Q_N+P_N+S_N)²]²): the scalar sum-square
    /// diagnostic reported alongside the standard metric.
    double sumsq = 0.0;
    int n_excluded = 0;
    int n_paths = 0;
};

MsError ms_error(SchemeId scheme, const ContactSystem& sys,
                 const PhaseState& initial, double h, double t_end,
                 int n_paths, std::uint64_t seed,
                 const OracleConfig& oracle_cfg = {},
                 const IntegrateOptions& opts = {}, int threads = 1,
                 bool zero_noise = false);

/// Least-squares slope/intercept of log(error) against log(h).
struct OrderFit {
    double slope = 0.0;
    double intercept = 0.0;
};

OrderFit order_fit(const std::vector<double>& step_sizes,
                   const std::vector<double>& errors);

/// Step-size ladder study on common paths: every h in the ladder must be an
/// integer multiple of the smallest, which defines the base grid shared by
/// all levels and by the refined-path reference.
struct StudyConfig {
    std::vector<double> ladder{0.02, 0.04, 0.06, 0.08, 0.10};
    double t0 = 0.0;
    double horizon = 120.0;
    int n_paths = 200;
    std::uint64_t seed = 42;
    int oracle_k = 7;
    int threads = 1;
    bool zero_noise = false;
    /// Compare the reference at refinement k against k+1 on a few paths and
    /// fail if the gap is not well below the smallest measured error.
    bool check_oracle_gap = true;
    IntegrateOptions opts;
};

struct ConvergenceReport {
    SchemeId scheme = SchemeId::euler_maruyama;
    std::vector<double> step_sizes;            ///< ascending
    std::vector<double> ms_errors;             ///< RMS, standard metric
    std::vector<double> ms_errors_sumsq;       ///< RMS, sum-square metric
    std::vector<int> n_excluded;
    double slope = 0.0;
    double intercept = 0.0;
    int n_paths = 0;
};

/// Runs the ladder study and fits the order on the standard metric.
/// Throws NumericError when more than 10% of paths fail at some level (the
/// message carries the first recorded per-path failure) and
/// OracleResolutionError when the reference is not resolved enough for the
/// smallest measured error.
ConvergenceReport convergence_study(SchemeId scheme, const ContactSystem& sys,
                                    const PhaseState& initial,
                                    const StudyConfig& cfg);

/// Zero-noise endpoint errors |end − closed form| at T for each step size.
/// Used by the deterministic consistency checks.
std::vector<double> deterministic_ladder_errors(SchemeId scheme,
                                                const ContactSystem& sys,
                                                const PhaseState& initial,
                                                const std::vector<double>& hs,
                                                double t_end,
                                                const IntegrateOptions& opts = {});

}  // namespace scint
