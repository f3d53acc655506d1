#include "scint/schemes.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "scint/errors.hpp"

namespace scint {

std::string scheme_name(SchemeId id) {
    switch (id) {
        case SchemeId::euler_maruyama: return "euler-maruyama";
        case SchemeId::herglotz_contact: return "herglotz-contact";
        case SchemeId::hj_contact: return "hj-contact";
    }
    throw UsageError("unknown scheme id");
}

std::string scheme_tag(SchemeId id) {
    switch (id) {
        case SchemeId::euler_maruyama: return "em";
        case SchemeId::herglotz_contact: return "hg";
        case SchemeId::hj_contact: return "hj";
    }
    throw UsageError("unknown scheme id");
}

SchemeId parse_scheme(const std::string& name) {
    if (name == "em" || name == "euler-maruyama") return SchemeId::euler_maruyama;
    if (name == "hg" || name == "herglotz" || name == "herglotz-contact")
        return SchemeId::herglotz_contact;
    if (name == "hj" || name == "hj-contact") return SchemeId::hj_contact;
    throw UsageError("unknown scheme '" + name +
                     "' (expected em|hg|hj or a full scheme name)");
}

PhaseState em_step(const ContactSystem& sys, const PhaseState& x, double t,
                   double h, double dW, const StepConfig& cfg) {
    if (!(h > 0.0)) throw ConfigError("step size must be positive");
    const PhaseState drift = eval_drift(sys, x, t);
    const PhaseState diff = eval_diffusion(sys, x, t);
    PhaseState next{x.q + h * drift.q + dW * diff.q,
                    x.p + h * drift.p + dW * diff.p,
                    x.s + h * drift.s + dW * diff.s};
    if (cfg.em_correction == EmCorrection::printed)
        next.s -= 0.5 * h * sys.params.a * x.q;
    return next;
}

PhaseState herglotz_step(const ContactSystem& sys, const PhaseState& x,
                         double /*t*/, double h, double dW,
                         const StepConfig& cfg) {
    const OscillatorParams& par = sys.params;
    if (!par.omega_is_zero())
        throw ConfigError(
            "the variational contact step is defined for the free-particle "
            "family only (omega must vanish)");
    if (!(h > 0.0)) throw ConfigError("step size must be positive");
    const double gh = par.gamma * h;
    if (!(gh < 2.0))
        throw ConfigError("variational contact step requires gamma*h < 2");
    const double minus = 1.0 - 0.5 * gh;   // 1 − γh/2
    const double plus = 1.0 + 0.5 * gh;    // 1 + γh/2

    PhaseState next;
    next.q = x.q + minus * h * x.p / par.mass - h * par.a * dW;
    next.p = x.p - par.a * dW / minus;
    if (cfg.herglotz_p == HerglotzPUpdate::conformal) next.p *= minus / plus;
    const double dq = next.q - x.q;
    next.s = (x.s * minus + par.mass * dq * dq / (2.0 * h) -
              par.a * x.q * dW) /
             plus;
    return next;
}

Trajectory integrate(SchemeId scheme, const ContactSystem& sys,
                     const BrownianPath& path, const PhaseState& initial,
                     const IntegrateOptions& opts) {
    const std::int64_t n_steps = path.n_steps;
    const double h = n_steps > 0 ? path.dt() : 0.0;

    Trajectory traj;
    traj.scheme = scheme;
    traj.seed = path.seed;
    traj.times.reserve(static_cast<std::size_t>(n_steps) + 1);
    traj.states.reserve(static_cast<std::size_t>(n_steps) + 1);
    traj.times.push_back(path.t0);
    traj.states.push_back(initial);
    if (!all_finite(initial))
        throw OverflowError("initial state is not finite");
    if (n_steps == 0) return traj;

    // Validate step-size preconditions once, before the loop.
    if (scheme == SchemeId::herglotz_contact) {
        if (!(sys.params.gamma * h < 2.0))
            throw ConfigError("variational contact step requires gamma*h < 2");
    }

    HJState hj;
    if (scheme == SchemeId::hj_contact) {
        hj.x = opts.x0;
        hj.y = opts.y0;
        hj.z = opts.z0;
        hj.b0 = hj_b0(initial.q);
        if (opts.hj_trace) {
            opts.hj_trace->clear();
            opts.hj_trace->push_back({0, path.t0, hj.x, hj.y, hj.z, hj.sx,
                                      hj.sy, hj.sz,
                                      std::numeric_limits<double>::quiet_NaN(),
                                      initial.q, initial.p, initial.s});
        }
    }

    PhaseState cur = initial;
    for (std::int64_t n = 0; n < n_steps; ++n) {
        const double t = path.time_at(n);
        const double dW = increment(path, n);
        PhaseState next;
        try {
            switch (scheme) {
                case SchemeId::euler_maruyama:
                    next = em_step(sys, cur, t, h, dW, opts.step);
                    break;
                case SchemeId::herglotz_contact:
                    next = herglotz_step(sys, cur, t, h, dW, opts.step);
                    break;
                case SchemeId::hj_contact: {
                    HJComposite comp{cur, hj};
                    HJStepResult res =
                        hj_step(comp, t, h, dW, sys.params.gamma, opts.hj);
                    next = res.state.phase;
                    hj = res.state.coeffs;
                    if (opts.hj_trace)
                        opts.hj_trace->push_back(
                            {n + 1, path.time_at(n + 1), hj.x, hj.y, hj.z,
                             hj.sx, hj.sy, hj.sz, res.discriminant, next.q,
                             next.p, next.s});
                    break;
                }
            }
        } catch (NumericError& err) {
            if (!err.step) err.step = n + 1;
            throw;
        }
        if (!all_finite(next)) {
            OverflowError err("state left the finite range at t=" +
                              std::to_string(path.time_at(n + 1)));
            err.step = n + 1;
            throw err;
        }
        traj.times.push_back(path.time_at(n + 1));
        traj.states.push_back(next);
        cur = next;
    }
    return traj;
}

}  // namespace scint
