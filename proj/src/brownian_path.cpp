#include "scint/brownian_path.hpp"

#include <cmath>

#include "scint/errors.hpp"
#include "scint/rng.hpp"
#include "scint/summation.hpp"

namespace scint {

BrownianPath generate(double t0, double horizon, std::int64_t n_steps,
                      std::uint64_t seed) {
    if (n_steps <= 0) throw ConfigError("path step count must be positive");
    if (!(horizon > 0.0)) throw ConfigError("path horizon must be positive");

    BrownianPath path;
    path.t0 = t0;
    path.horizon = horizon;
    path.n_steps = n_steps;
    path.seed = seed;
    path.increments.resize(static_cast<std::size_t>(n_steps));

    GaussianStream stream(splitmix64(seed));
    const double sd = std::sqrt(path.dt());
    for (auto& dw : path.increments) dw = stream.gaussian(sd);
    return path;
}

BrownianPath zero_path(double t0, double horizon, std::int64_t n_steps) {
    if (n_steps <= 0) throw ConfigError("path step count must be positive");
    if (!(horizon > 0.0)) throw ConfigError("path horizon must be positive");
    BrownianPath path;
    path.t0 = t0;
    path.horizon = horizon;
    path.n_steps = n_steps;
    path.increments.assign(static_cast<std::size_t>(n_steps), 0.0);
    return path;
}

BrownianPath from_increments(double t0, double horizon,
                             std::vector<double> increments,
                             std::uint64_t seed) {
    if (increments.empty() && horizon != 0.0)
        throw ConfigError("empty increment list requires a zero horizon");
    if (!increments.empty() && !(horizon > 0.0))
        throw ConfigError("path horizon must be positive");
    BrownianPath path;
    path.t0 = t0;
    path.horizon = horizon;
    path.n_steps = static_cast<std::int64_t>(increments.size());
    path.increments = std::move(increments);
    path.seed = seed;
    return path;
}

BrownianPath refine(const BrownianPath& path, std::int64_t factor) {
    if (factor < 2) throw UsageError("refinement factor must be >= 2");
    if (path.n_steps <= 0) throw UsageError("cannot refine an empty path");

    BrownianPath fine;
    fine.t0 = path.t0;
    fine.horizon = path.horizon;
    fine.n_steps = path.n_steps * factor;
    fine.seed = path.seed;
    fine.increments.resize(static_cast<std::size_t>(fine.n_steps));

    // One deterministic sub-stream per (seed, grid size): refining the same
    // path twice gives the same bridge, while successive refinement levels
    // (whose n_steps differ) draw fresh variates.
    GaussianStream stream(
        splitmix64(path.seed ^ splitmix64(0xB5AD4ECEDA1CE2A9ull +
                                          static_cast<std::uint64_t>(path.n_steps))));

    const double h_fine = fine.dt();
    const double sd_fine = std::sqrt(h_fine);
    std::vector<double> g(static_cast<std::size_t>(factor));

    for (std::int64_t cell = 0; cell < path.n_steps; ++cell) {
        const double dW = path.increments[static_cast<std::size_t>(cell)];

        // Conditional law of the sub-increments given their sum: draw iid
        // N(0, h_fine), recentre by the sample mean, shift by dW/factor.
        NeumaierSum total;
        for (auto& gi : g) {
            gi = stream.gaussian(sd_fine);
            total.add(gi);
        }
        const double shift = (dW - total.value()) / static_cast<double>(factor);

        double* out = &fine.increments[static_cast<std::size_t>(cell * factor)];
        NeumaierSum partial;
        for (std::int64_t j = 0; j < factor - 1; ++j) {
            out[j] = g[static_cast<std::size_t>(j)] + shift;
            partial.add(out[j]);
        }
        // Close the cell with the compensated remainder so the sub-increments
        // sum back to dW to within one ulp.
        out[factor - 1] = dW - partial.value();
    }
    return fine;
}

BrownianPath coarsen(const BrownianPath& path, std::int64_t factor) {
    if (factor < 1) throw UsageError("coarsening factor must be >= 1");
    if (path.n_steps % factor != 0)
        throw UsageError("coarsening factor must divide the step count");
    if (factor == 1) return path;

    BrownianPath coarse;
    coarse.t0 = path.t0;
    coarse.horizon = path.horizon;
    coarse.n_steps = path.n_steps / factor;
    coarse.seed = path.seed;
    coarse.increments.resize(static_cast<std::size_t>(coarse.n_steps));
    for (std::int64_t cell = 0; cell < coarse.n_steps; ++cell) {
        NeumaierSum sum;
        for (std::int64_t j = 0; j < factor; ++j)
            sum.add(path.increments[static_cast<std::size_t>(cell * factor + j)]);
        coarse.increments[static_cast<std::size_t>(cell)] = sum.value();
    }
    return coarse;
}

double increment(const BrownianPath& path, std::int64_t n) {
    if (n < 0 || n >= path.n_steps)
        throw UsageError("increment index out of range");
    return path.increments[static_cast<std::size_t>(n)];
}

std::vector<double> cumulative_values(const BrownianPath& path) {
    std::vector<double> w(static_cast<std::size_t>(path.n_steps) + 1, 0.0);
    NeumaierSum sum;
    for (std::int64_t n = 0; n < path.n_steps; ++n) {
        sum.add(path.increments[static_cast<std::size_t>(n)]);
        w[static_cast<std::size_t>(n) + 1] = sum.value();
    }
    return w;
}

double stratonovich_j(const BrownianPath& path, const MultiIndex& alpha,
                      std::int64_t upto_step) {
    if (upto_step < 0 || upto_step > path.n_steps)
        throw UsageError("stratonovich_j: grid index out of range");

    const double t_rel = path.dt() * static_cast<double>(upto_step);

    if (alpha == MultiIndex{0}) return t_rel;

    const auto w = cumulative_values(path);
    const double wt = w[static_cast<std::size_t>(upto_step)];

    if (alpha == MultiIndex{1}) return wt;
    if (alpha == MultiIndex{1, 1}) return 0.5 * wt * wt;

    if (alpha == MultiIndex{1, 0} || alpha == MultiIndex{0, 1}) {
        // Time integral of W by the trapezoid rule on the grid.
        const double h = path.dt();
        NeumaierSum j10;
        for (std::int64_t n = 0; n < upto_step; ++n)
            j10.add(0.5 * (w[static_cast<std::size_t>(n)] +
                           w[static_cast<std::size_t>(n) + 1]) * h);
        if (alpha == MultiIndex{1, 0}) return j10.value();
        // Integration by parts: J_(0,1) + J_(1,0) = t·W(t), enforced exactly.
        return t_rel * wt - j10.value();
    }

    throw UsageError("stratonovich_j: unsupported multi-index");
}

}  // namespace scint
