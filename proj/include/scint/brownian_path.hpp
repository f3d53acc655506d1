#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace scint {

/// Index of an iterated Stratonovich integral: a word over {0, 1} where 0
/// stands for integration against dt and 1 against ∘dW. Only the words
/// needed by the schemes and their tests are supported:
///   (0), (1), (1,1), (1,0), (0,1).
struct MultiIndex {
    std::vector<int> entries;

    MultiIndex(std::initializer_list<int> init) : entries(init) {}

    bool operator==(const MultiIndex& other) const = default;

    static MultiIndex time() { return {0}; }
    static MultiIndex wiener() { return {1}; }
};

/// A scalar Brownian motion sampled as increments on a uniform grid over
/// [t0, t0 + horizon]. The path remembers the seed that generated it so
/// that refinement sub-streams can be derived deterministically.
struct BrownianPath {
    double t0 = 0.0;
    double horizon = 0.0;
    std::int64_t n_steps = 0;
    std::vector<double> increments;  // increments[n] covers [t_n, t_{n+1}]
    std::uint64_t seed = 0;

    double dt() const { return horizon / static_cast<double>(n_steps); }
    double time_at(std::int64_t n) const { return t0 + dt() * static_cast<double>(n); }
};

/// Samples a fresh path: n_steps iid N(0, dt) increments.
/// Throws ConfigError for n_steps <= 0 or horizon <= 0.
BrownianPath generate(double t0, double horizon, std::int64_t n_steps,
                      std::uint64_t seed);

/// Path with all increments zero (the deterministic limit).
BrownianPath zero_path(double t0, double horizon, std::int64_t n_steps);

/// Wraps externally chosen increments in a path object (test helper and
/// coarsening target). Empty increments are allowed when horizon == 0.
BrownianPath from_increments(double t0, double horizon,
                             std::vector<double> increments,
                             std::uint64_t seed = 0);

/// Brownian-bridge refinement by an integer factor >= 2: each coarse
/// increment is split into `factor` sub-increments drawn from the exact
/// conditional law given their sum. The last sub-increment of every cell is
/// recomputed as a compensated remainder so that the cell sum reproduces
/// the coarse increment to within one ulp. Sub-streams derive from
/// (path.seed, path.n_steps), so a fixed seed pins the refined path.
BrownianPath refine(const BrownianPath& path, std::int64_t factor);

/// Sums every `factor` consecutive increments into one (the projection of
/// the same noise onto a coarser grid). Requires n_steps % factor == 0.
BrownianPath coarsen(const BrownianPath& path, std::int64_t factor);

/// Increment over [t_n, t_{n+1}]. Throws UsageError when n is out of range.
double increment(const BrownianPath& path, std::int64_t n);

/// Cumulative values W(t_0)=0, W(t_1), ..., W(t_N) (compensated prefix sums).
std::vector<double> cumulative_values(const BrownianPath& path);

/// Iterated Stratonovich integral J_alpha evaluated at grid point
/// `upto_step` (0 <= upto_step <= n_steps), measured from t0:
///   (0)   -> t − t0
///   (1)   -> W(t)
///   (1,1) -> W(t)²/2              (closed form)
///   (1,0) -> ∫ W du               (trapezoid on the grid)
///   (0,1) -> t·W(t) − J_(1,0)     (integration by parts, exact identity)
/// Unsupported words throw UsageError.
double stratonovich_j(const BrownianPath& path, const MultiIndex& alpha,
                      std::int64_t upto_step);

}  // namespace scint
