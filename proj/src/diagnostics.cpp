#include "scint/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

#include "scint/errors.hpp"
#include "scint/parallel.hpp"
#include "scint/rng.hpp"
#include "scint/summation.hpp"

namespace scint {

namespace {

/// Grid index of t_end on `path`, validated to land on the grid.
std::int64_t grid_index_of(const BrownianPath& path, double t_end) {
    const double scale = std::max(1.0, std::abs(t_end));
    if (path.n_steps == 0) {
        if (std::abs(t_end - path.t0) > 1e-9 * scale)
            throw UsageError("t_end does not match the path's only grid point");
        return 0;
    }
    const std::int64_t n = std::llround((t_end - path.t0) / path.dt());
    if (n < 0 || n > path.n_steps)
        throw UsageError("t_end lies outside the path's span");
    if (std::abs(path.time_at(n) - t_end) > 1e-9 * scale)
        throw UsageError("t_end must land on the path grid");
    return n;
}

}  // namespace

FlowJacobian flow_jacobian(SchemeId scheme, const ContactSystem& sys,
                           const PhaseState& initial, const BrownianPath& path,
                           double t_end, double eps,
                           const IntegrateOptions& opts) {
    if (!(eps > 0.0)) throw UsageError("finite-difference eps must be positive");
    const std::int64_t n = grid_index_of(path, t_end);

    BrownianPath trunc;
    const BrownianPath* use = &path;
    if (n != path.n_steps) {
        std::vector<double> head(path.increments.begin(),
                                 path.increments.begin() + n);
        trunc = from_increments(path.t0, path.time_at(n) - path.t0,
                                std::move(head), path.seed);
        use = &trunc;
    }

    const auto endpoint = [&](const PhaseState& x0) {
        return integrate(scheme, sys, *use, x0, opts).states.back();
    };

    FlowJacobian jac;
    jac.base_in = initial;
    jac.t_end = use->t0 + use->horizon;
    jac.base_out = endpoint(initial);
    for (int j = 0; j < 3; ++j) {
        PhaseState up_in = initial, dn_in = initial;
        const auto coord = [](PhaseState& x, int c) -> double& {
            return c == 0 ? x.q : c == 1 ? x.p : x.s;
        };
        coord(up_in, j) += eps;
        coord(dn_in, j) -= eps;
        const PhaseState up = endpoint(up_in);
        const PhaseState dn = endpoint(dn_in);
        jac.d[0][j] = (up.q - dn.q) / (2.0 * eps);
        jac.d[1][j] = (up.p - dn.p) / (2.0 * eps);
        jac.d[2][j] = (up.s - dn.s) / (2.0 * eps);
    }
    for (const auto& row : jac.d)
        for (double v : row)
            if (!std::isfinite(v))
                throw OverflowError("flow Jacobian entry is not finite");
    return jac;
}

ContactReport contact_residuals(const FlowJacobian& jac) {
    ContactReport rep;
    rep.t = jac.t_end;
    const double P = jac.base_out.p;
    rep.lambda_est = jac.d[2][2] - P * jac.d[0][2];
    rep.r_p = jac.d[2][1] - P * jac.d[0][1];
    rep.r_q = jac.d[2][0] - P * jac.d[0][0] + rep.lambda_est * jac.base_in.p;
    return rep;
}

double conformal_reference(double gamma, double t) {
    return std::exp(-gamma * t);
}

OrderFit order_fit(const std::vector<double>& step_sizes,
                   const std::vector<double>& errors) {
    if (step_sizes.size() != errors.size())
        throw UsageError("order fit needs one error per step size");
    const std::size_t n = step_sizes.size();
    if (n < 2) throw UsageError("order fit needs at least two points");
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(step_sizes[i] > 0.0) || !(errors[i] > 0.0))
            throw UsageError(
                "order fit requires strictly positive step sizes and errors");
        xs[i] = std::log(step_sizes[i]);
        ys[i] = std::log(errors[i]);
    }
    NeumaierSum sx, sy;
    for (std::size_t i = 0; i < n; ++i) {
        sx.add(xs[i]);
        sy.add(ys[i]);
    }
    const double xbar = sx.value() / static_cast<double>(n);
    const double ybar = sy.value() / static_cast<double>(n);
    NeumaierSum sxx, sxy;
    for (std::size_t i = 0; i < n; ++i) {
        sxx.add((xs[i] - xbar) * (xs[i] - xbar));
        sxy.add((xs[i] - xbar) * (ys[i] - ybar));
    }
    if (sxx.value() == 0.0)
        throw UsageError("order fit requires at least two distinct step sizes");
    OrderFit fit;
    fit.slope = sxy.value() / sxx.value();
    fit.intercept = ybar - fit.slope * xbar;
    return fit;
}

namespace {

struct EnsembleResult {
    std::vector<double> rms_standard;
    std::vector<double> rms_sumsq;
    std::vector<int> n_excluded;
};

/// Shared ladder engine: common base paths, refined-path reference, one
/// coarsened run per ladder level, fixed-order compensated reduction (the
/// result is byte-identical for any thread count).
EnsembleResult run_ensemble(SchemeId scheme, const ContactSystem& sys,
                            const PhaseState& initial,
                            const std::vector<double>& ladder, double t0,
                            double horizon, int n_paths, std::uint64_t seed,
                            int oracle_k, int threads, bool zero_noise,
                            const IntegrateOptions& opts, bool check_gap) {
    if (n_paths < 1) throw ConfigError("n_paths must be at least 1");
    if (!(horizon > 0.0)) throw ConfigError("horizon must be positive");
    if (oracle_k < 0 || oracle_k > 24)
        throw ConfigError("reference refinement k must lie in [0, 24]");
    if (ladder.empty()) throw ConfigError("step ladder must not be empty");
    for (std::size_t j = 0; j < ladder.size(); ++j) {
        if (!(ladder[j] > 0.0))
            throw ConfigError("step sizes must be positive");
        if (j > 0 && !(ladder[j] > ladder[j - 1]))
            throw ConfigError("step ladder must be strictly increasing");
    }

    const double base = ladder.front();
    const std::int64_t n_base = std::llround(horizon / base);
    if (n_base < 1 || std::abs(static_cast<double>(n_base) * base - horizon) >
                          1e-9 * horizon)
        throw ConfigError(
            "horizon must be an integer multiple of the smallest step size");
    std::vector<std::int64_t> factors(ladder.size());
    for (std::size_t j = 0; j < ladder.size(); ++j) {
        const std::int64_t f = std::llround(ladder[j] / base);
        if (f < 1 || std::abs(static_cast<double>(f) * base - ladder[j]) >
                         1e-9 * ladder[j])
            throw ConfigError(
                "every ladder step must be an integer multiple of the "
                "smallest step");
        if (n_base % f != 0)
            throw ConfigError("ladder step does not divide the base grid");
        factors[j] = f;
    }

    const std::size_t levels = ladder.size();
    const std::size_t paths = static_cast<std::size_t>(n_paths);
    std::vector<double> sq_standard(levels * paths, 0.0);
    std::vector<double> sq_sumsq(levels * paths, 0.0);
    std::vector<std::uint8_t> excluded(levels * paths, 0);
    std::vector<std::string> why(levels * paths);
    const std::int64_t gap_paths =
        check_gap ? std::min<std::int64_t>(20, n_paths) : 0;
    std::vector<double> gap_sq(static_cast<std::size_t>(gap_paths), 0.0);

    parallel_for(n_paths, threads, [&](std::int64_t i) {
        const BrownianPath bp =
            zero_noise
                ? zero_path(t0, horizon, n_base)
                : generate(t0, horizon, n_base,
                           derive_stream(seed, static_cast<std::uint64_t>(i)));
        // In the deterministic limit the reference must also be noise-free:
        // bridge-refining a zero path would inject conditional bridge noise,
        // so build the fine grid directly as a zero path instead.
        const auto ref_at = [&](int k) {
            if (zero_noise)
                return reference_endpoint(sys,
                                          zero_path(t0, horizon, n_base << k),
                                          initial, OracleConfig{0});
            return reference_endpoint(sys, bp, initial, OracleConfig{k});
        };
        const PhaseState ref = ref_at(oracle_k);
        const double ref_sum = ref.q + ref.p + ref.s;
        for (std::size_t j = 0; j < levels; ++j) {
            const std::size_t slot = j * paths + static_cast<std::size_t>(i);
            const BrownianPath coarse =
                factors[j] == 1 ? bp : coarsen(bp, static_cast<int>(factors[j]));
            try {
                const Trajectory tr = integrate(scheme, sys, coarse, initial, opts);
                const PhaseState& end = tr.states.back();
                const double dq = end.q - ref.q;
                const double dp = end.p - ref.p;
                const double ds = end.s - ref.s;
                sq_standard[slot] = dq * dq + dp * dp + ds * ds;
                const double end_sum = end.q + end.p + end.s;
                const double dev = ref_sum * ref_sum - end_sum * end_sum;
                sq_sumsq[slot] = dev * dev;
            } catch (const NumericError& err) {
                excluded[slot] = 1;
                why[slot] = err.describe();
            }
        }
        if (i < gap_paths) {
            const PhaseState ref2 = ref_at(oracle_k + 1);
            gap_sq[static_cast<std::size_t>(i)] = distance_squared(ref, ref2);
        }
    });

    EnsembleResult out;
    for (std::size_t j = 0; j < levels; ++j) {
        NeumaierSum acc_std, acc_sum;
        int exc = 0;
        std::string first;
        for (std::size_t i = 0; i < paths; ++i) {
            const std::size_t slot = j * paths + i;
            if (excluded[slot]) {
                ++exc;
                if (first.empty()) first = why[slot];
            } else {
                acc_std.add(sq_standard[slot]);
                acc_sum.add(sq_sumsq[slot]);
            }
        }
        if (exc * 10 > n_paths) {
            std::ostringstream msg;
            msg << "scheme " << scheme_name(scheme) << " failed on " << exc
                << " of " << n_paths << " paths at h=" << ladder[j];
            if (!first.empty()) msg << "; first failure: " << first;
            throw NumericError(msg.str());
        }
        const double kept = static_cast<double>(n_paths - exc);
        out.rms_standard.push_back(std::sqrt(acc_std.value() / kept));
        out.rms_sumsq.push_back(std::sqrt(acc_sum.value() / kept));
        out.n_excluded.push_back(exc);
    }

    if (gap_paths > 0) {
        NeumaierSum g;
        for (double v : gap_sq) g.add(v);
        const double rms_gap =
            std::sqrt(g.value() / static_cast<double>(gap_paths));
        const double min_rms = *std::min_element(out.rms_standard.begin(),
                                                 out.rms_standard.end());
        if (min_rms > 0.0 && !(rms_gap < 0.1 * min_rms)) {
            std::ostringstream msg;
            msg << "reference at refinement k=" << oracle_k
                << " differs from k+1 by RMS " << rms_gap
                << ", not below 10% of the smallest measured error " << min_rms;
            throw OracleResolutionError(msg.str(), rms_gap);
        }
    }
    return out;
}

}  // namespace

MsError ms_error(SchemeId scheme, const ContactSystem& sys,
                 const PhaseState& initial, double h, double t_end,
                 int n_paths, std::uint64_t seed,
                 const OracleConfig& oracle_cfg, const IntegrateOptions& opts,
                 int threads, bool zero_noise) {
    const std::vector<double> ladder{h};
    const EnsembleResult res =
        run_ensemble(scheme, sys, initial, ladder, 0.0, t_end, n_paths, seed,
                     oracle_cfg.refine_k, threads, zero_noise, opts,
                     /*check_gap=*/false);
    MsError out;
    out.standard = res.rms_standard.front();
    out.sumsq = res.rms_sumsq.front();
    out.n_excluded = res.n_excluded.front();
    out.n_paths = n_paths;
    return out;
}

ConvergenceReport convergence_study(SchemeId scheme, const ContactSystem& sys,
                                    const PhaseState& initial,
                                    const StudyConfig& cfg) {
    std::vector<double> ladder = cfg.ladder;
    std::sort(ladder.begin(), ladder.end());
    if (ladder.size() < 2)
        throw UsageError("a convergence study needs at least two step sizes");
    const EnsembleResult res = run_ensemble(
        scheme, sys, initial, ladder, cfg.t0, cfg.horizon, cfg.n_paths,
        cfg.seed, cfg.oracle_k, cfg.threads, cfg.zero_noise, cfg.opts,
        cfg.check_oracle_gap);
    ConvergenceReport rep;
    rep.scheme = scheme;
    rep.step_sizes = ladder;
    rep.ms_errors = res.rms_standard;
    rep.ms_errors_sumsq = res.rms_sumsq;
    rep.n_excluded = res.n_excluded;
    rep.n_paths = cfg.n_paths;
    const OrderFit fit = order_fit(ladder, res.rms_standard);
    rep.slope = fit.slope;
    rep.intercept = fit.intercept;
    return rep;
}

std::vector<double> deterministic_ladder_errors(
    SchemeId scheme, const ContactSystem& sys, const PhaseState& initial,
    const std::vector<double>& hs, double t_end, const IntegrateOptions& opts) {
    if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
    const PhaseState exact = deterministic_exact(sys, initial, t_end);
    std::vector<double> out;
    out.reserve(hs.size());
    for (double h : hs) {
        if (!(h > 0.0)) throw ConfigError("step sizes must be positive");
        const std::int64_t n = std::llround(t_end / h);
        if (n < 1 || std::abs(static_cast<double>(n) * h - t_end) > 1e-9 * t_end)
            throw ConfigError("t_end must be an integer multiple of each step");
        const BrownianPath path = zero_path(0.0, t_end, n);
        const PhaseState end =
            integrate(scheme, sys, path, initial, opts).states.back();
        out.push_back(distance(end, exact));
    }
    return out;
}

}  // namespace scint
