#include "scint/oracle.hpp"

#include <cmath>

#include "scint/errors.hpp"

namespace scint {

PhaseState deterministic_exact(const ContactSystem& sys,
                               const PhaseState& initial, double t) {
    const OscillatorParams& par = sys.params;
    if (!par.omega_is_zero())
        throw ConfigError(
            "closed-form zero-noise solution requires omega to vanish");
    const double g = par.gamma;
    if (g == 0.0) {
        const double v = initial.p / par.mass;
        return {initial.q + v * t, initial.p,
                initial.s + 0.5 * initial.p * v * t};
    }
    const double e1 = std::exp(-g * t);
    const double kinetic = initial.p * initial.p / (2.0 * par.mass * g);
    return {initial.q + initial.p * (1.0 - e1) / (par.mass * g),
            initial.p * e1,
            (initial.s + kinetic) * e1 - kinetic * e1 * e1};
}

PhaseState heun_step(const ContactSystem& sys, const PhaseState& x, double t,
                     double h, double dW) {
    const PhaseState f0 = eval_drift(sys, x, t);
    const PhaseState g0 = eval_diffusion(sys, x, t);
    const PhaseState pred{x.q + h * f0.q + dW * g0.q,
                          x.p + h * f0.p + dW * g0.p,
                          x.s + h * f0.s + dW * g0.s};
    const PhaseState f1 = eval_drift(sys, pred, t + h);
    const PhaseState g1 = eval_diffusion(sys, pred, t + h);
    return {x.q + 0.5 * h * (f0.q + f1.q) + 0.5 * dW * (g0.q + g1.q),
            x.p + 0.5 * h * (f0.p + f1.p) + 0.5 * dW * (g0.p + g1.p),
            x.s + 0.5 * h * (f0.s + f1.s) + 0.5 * dW * (g0.s + g1.s)};
}

namespace {

/// Runs Heun on the 2^refine_k refinement of `path`; calls `on_coarse(state)`
/// at every coarse grid point after the initial one. Refinement doubles the
/// grid k times, so the level-k path is nested inside the level-(k+1) path —
/// that nesting is what makes the k vs k+1 resolution check meaningful.
template <typename Sink>
void run_fine(const ContactSystem& sys, const BrownianPath& path,
              const PhaseState& initial, int refine_k, Sink&& on_coarse) {
    if (refine_k < 0) throw UsageError("refine_k must be non-negative");
    std::int64_t factor = 1;
    BrownianPath fine = path;
    for (int i = 0; i < refine_k && fine.n_steps > 0; ++i) {
        fine = refine(fine, 2);
        factor *= 2;
    }
    const double h = fine.n_steps > 0 ? fine.dt() : 0.0;
    PhaseState cur = initial;
    for (std::int64_t n = 0; n < fine.n_steps; ++n) {
        cur = heun_step(sys, cur, fine.time_at(n), h, increment(fine, n));
        if ((n + 1) % factor == 0) on_coarse(cur);
    }
}

}  // namespace

Trajectory pathwise_reference(const ContactSystem& sys,
                              const BrownianPath& path,
                              const PhaseState& initial,
                              const OracleConfig& cfg) {
    Trajectory traj;
    traj.scheme = SchemeId::euler_maruyama;  // tag unused for references
    traj.seed = path.seed;
    traj.times.reserve(static_cast<std::size_t>(path.n_steps) + 1);
    traj.states.reserve(static_cast<std::size_t>(path.n_steps) + 1);
    traj.times.push_back(path.t0);
    traj.states.push_back(initial);
    std::int64_t n = 0;
    run_fine(sys, path, initial, cfg.refine_k, [&](const PhaseState& x) {
        ++n;
        traj.times.push_back(path.time_at(n));
        traj.states.push_back(x);
    });
    return traj;
}

PhaseState reference_endpoint(const ContactSystem& sys,
                              const BrownianPath& path,
                              const PhaseState& initial,
                              const OracleConfig& cfg) {
    PhaseState last = initial;
    run_fine(sys, path, initial, cfg.refine_k,
             [&](const PhaseState& x) { last = x; });
    return last;
}

}  // namespace scint
