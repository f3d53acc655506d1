#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "scint/brownian_path.hpp"
#include "scint/errors.hpp"
#include "scint/rng.hpp"
#include "scint/summation.hpp"

using namespace scint;

TEST_CASE("generate is deterministic in its arguments") {
    const BrownianPath a = generate(0.0, 2.0, 40, 7);
    const BrownianPath b = generate(0.0, 2.0, 40, 7);
    REQUIRE(a.n_steps == 40);
    CHECK(a.increments == b.increments);
    CHECK(a.dt() == doctest::Approx(0.05));
    CHECK(a.time_at(40) == doctest::Approx(2.0));

    const BrownianPath c = generate(0.0, 2.0, 40, 8);
    CHECK(a.increments != c.increments);
}

TEST_CASE("generated increments have the N(0, dt) law") {
    const std::int64_t n = 20000;
    const BrownianPath p = generate(0.0, 1.0, n, derive_stream(42, 0));
    NeumaierSum sum, sumsq;
    for (double dw : p.increments) {
        sum.add(dw);
        sumsq.add(dw * dw);
    }
    const double mean = sum.value() / static_cast<double>(n);
    const double var = sumsq.value() / static_cast<double>(n);
    const double dt = p.dt();
    // Four-sigma bands for the sample mean and a 5% band for the variance.
    CHECK(std::fabs(mean) < 4.0 * std::sqrt(dt / static_cast<double>(n)));
    CHECK(var / dt > 0.95);
    CHECK(var / dt < 1.05);
}

TEST_CASE("path constructors validate their arguments") {
    CHECK_THROWS_AS(generate(0.0, 1.0, 0, 1), ConfigError);
    CHECK_THROWS_AS(generate(0.0, 0.0, 10, 1), ConfigError);
    CHECK_THROWS_AS(zero_path(0.0, -1.0, 10), ConfigError);
    CHECK_THROWS_AS(from_increments(0.0, 1.0, {}), ConfigError);
    CHECK_THROWS_AS(from_increments(0.0, 0.0, {0.1}), ConfigError);

    const BrownianPath empty = from_increments(3.0, 0.0, {});
    CHECK(empty.n_steps == 0);
    CHECK(empty.t0 == 3.0);

    const BrownianPath z = zero_path(0.0, 1.0, 5);
    for (double dw : z.increments) CHECK(dw == 0.0);
}

TEST_CASE("bridge refinement preserves every coarse increment") {
    const BrownianPath coarse = generate(0.0, 1.0, 16, derive_stream(11, 0));
    for (std::int64_t factor : {2, 5, 8}) {
        const BrownianPath fine = refine(coarse, factor);
        REQUIRE(fine.n_steps == 16 * factor);
        for (std::int64_t cell = 0; cell < coarse.n_steps; ++cell) {
            NeumaierSum cell_sum;
            for (std::int64_t j = 0; j < factor; ++j)
                cell_sum.add(fine.increments[static_cast<std::size_t>(
                    cell * factor + j)]);
            CHECK(std::fabs(cell_sum.value() - increment(coarse, cell)) <= 1e-15);
        }
    }
}

TEST_CASE("refinement is reproducible and seed-pinned") {
    const BrownianPath coarse = generate(0.0, 1.0, 8, derive_stream(11, 1));
    const BrownianPath f1 = refine(coarse, 4);
    const BrownianPath f2 = refine(coarse, 4);
    CHECK(f1.increments == f2.increments);

    BrownianPath other = coarse;
    other.seed ^= 1;
    const BrownianPath f3 = refine(other, 4);
    CHECK(f1.increments != f3.increments);
}

TEST_CASE("coarsening inverts refinement up to rounding") {
    const BrownianPath p = generate(0.0, 1.0, 16, derive_stream(5, 0));
    const BrownianPath back = coarsen(refine(p, 2), 2);
    REQUIRE(back.n_steps == p.n_steps);
    for (std::size_t i = 0; i < p.increments.size(); ++i)
        CHECK(std::fabs(back.increments[i] - p.increments[i]) <= 1e-15);

    CHECK_THROWS_AS(coarsen(p, 3), UsageError);
    CHECK(coarsen(p, 1).increments == p.increments);
}

TEST_CASE("increment and cumulative values expose the grid consistently") {
    const BrownianPath p = from_increments(0.0, 0.3, {0.1, -0.2, 0.05});
    CHECK(increment(p, 0) == 0.1);
    CHECK(increment(p, 2) == 0.05);
    CHECK_THROWS_AS(increment(p, -1), UsageError);
    CHECK_THROWS_AS(increment(p, 3), UsageError);

    const std::vector<double> w = cumulative_values(p);
    REQUIRE(w.size() == 4);
    CHECK(w[0] == 0.0);
    CHECK(w[1] == doctest::Approx(0.1));
    CHECK(w[2] == doctest::Approx(-0.1));
    CHECK(w[3] == doctest::Approx(-0.05));
}

TEST_CASE("iterated integrals satisfy their closed-form identities") {
    const BrownianPath p = generate(0.0, 1.5, 24, derive_stream(13, 2));
    const std::vector<double> w = cumulative_values(p);
    const std::int64_t N = p.n_steps;
    const double T = 1.5;
    const double wt = w.back();

    CHECK(stratonovich_j(p, MultiIndex::time(), N) == doctest::Approx(T));
    CHECK(stratonovich_j(p, MultiIndex::wiener(), N) == doctest::Approx(wt));
    CHECK(std::fabs(stratonovich_j(p, {1, 1}, N) - 0.5 * wt * wt) <= 1e-12);

    const double j10 = stratonovich_j(p, {1, 0}, N);
    const double j01 = stratonovich_j(p, {0, 1}, N);
    CHECK(std::fabs(j10 + j01 - T * wt) <= 1e-12);

    // Half-way grid point and both endpoints are valid evaluation points.
    CHECK(stratonovich_j(p, MultiIndex::time(), 0) == 0.0);
    CHECK(stratonovich_j(p, MultiIndex::wiener(), N / 2) ==
          doctest::Approx(w[static_cast<std::size_t>(N / 2)]));

    CHECK_THROWS_AS(stratonovich_j(p, {0, 0}, N), UsageError);
    CHECK_THROWS_AS(stratonovich_j(p, {1, 0}, N + 1), UsageError);
}
