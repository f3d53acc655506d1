#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>

#include "scint/brownian_path.hpp"
#include "scint/contact_system.hpp"
#include "scint/errors.hpp"
#include "scint/oracle.hpp"
#include "scint/rng.hpp"

using namespace scint;

namespace {
const PhaseState kCanonical{0.75, -0.25, 0.08};

ContactSystem default_system() { return make_oscillator(OscillatorParams{}); }
}  // namespace

TEST_CASE("closed-form zero-noise solution satisfies its defining relations") {
    ContactSystem sys = default_system();

    SUBCASE("t = 0 returns the initial state") {
        const PhaseState x = deterministic_exact(sys, kCanonical, 0.0);
        CHECK(x.q == doctest::Approx(kCanonical.q));
        CHECK(x.p == doctest::Approx(kCanonical.p));
        CHECK(x.s == doctest::Approx(kCanonical.s));
    }
    SUBCASE("momentum decays exponentially") {
        const PhaseState x = deterministic_exact(sys, kCanonical, 2.0);
        CHECK(std::fabs(x.p - kCanonical.p * std::exp(-2.0)) <= 1e-14);
    }
    SUBCASE("the closed form solves the equations of motion") {
        // Differentiate numerically and compare against the drift field.
        const double eps = 1e-6;
        for (double t : {0.5, 1.0, 3.0}) {
            const PhaseState up = deterministic_exact(sys, kCanonical, t + eps);
            const PhaseState dn = deterministic_exact(sys, kCanonical, t - eps);
            const PhaseState at = deterministic_exact(sys, kCanonical, t);
            const PhaseState f = eval_drift(sys, at, t);
            CHECK(std::fabs((up.q - dn.q) / (2 * eps) - f.q) <= 1e-8);
            CHECK(std::fabs((up.p - dn.p) / (2 * eps) - f.p) <= 1e-8);
            CHECK(std::fabs((up.s - dn.s) / (2 * eps) - f.s) <= 1e-8);
        }
    }
}

TEST_CASE("undamped limit uses the ballistic closed form") {
    OscillatorParams undamped;
    undamped.gamma = 0.0;
    ContactSystem sys = make_oscillator(undamped);
    const PhaseState x = deterministic_exact(sys, kCanonical, 2.0);
    CHECK(std::fabs(x.q - 0.25) <= 1e-14);
    CHECK(std::fabs(x.p - (-0.25)) <= 1e-14);
    CHECK(std::fabs(x.s - 0.1425) <= 1e-14);

    // The damped formula tends continuously to the undamped one.
    OscillatorParams faint;
    faint.gamma = 1e-8;
    ContactSystem nearly = make_oscillator(faint);
    const PhaseState y = deterministic_exact(nearly, kCanonical, 2.0);
    CHECK(distance(x, y) <= 1e-6);
}

TEST_CASE("closed form requires the free-particle member") {
    OscillatorParams harmonic;
    harmonic.omega0 = 0.4;
    ContactSystem sys = make_oscillator(harmonic);
    CHECK_THROWS_AS(deterministic_exact(sys, kCanonical, 1.0), ConfigError);
}

TEST_CASE("predictor-corrector reference step is second order at zero noise") {
    ContactSystem sys = default_system();
    const auto endpoint_error = [&](double h) {
        const std::int64_t n = std::llround(2.0 / h);
        PhaseState x = kCanonical;
        for (std::int64_t i = 0; i < n; ++i)
            x = heun_step(sys, x, h * static_cast<double>(i), h, 0.0);
        return distance(x, deterministic_exact(sys, kCanonical, 2.0));
    };
    const double e1 = endpoint_error(0.05);
    const double e2 = endpoint_error(0.025);
    CHECK(e1 / e2 > 3.5);  // halving h divides the error by ~4
    CHECK(e1 / e2 < 4.5);
}

TEST_CASE("reference endpoint at zero refinement is the plain reference loop") {
    ContactSystem sys = default_system();
    const BrownianPath path = generate(0.0, 2.0, 20, derive_stream(3, 0));
    PhaseState manual = kCanonical;
    for (std::int64_t n = 0; n < path.n_steps; ++n)
        manual = heun_step(sys, manual, path.time_at(n), path.dt(),
                           increment(path, n));
    const PhaseState ref = reference_endpoint(sys, path, kCanonical,
                                              OracleConfig{0});
    CHECK(manual.q == ref.q);
    CHECK(manual.p == ref.p);
    CHECK(manual.s == ref.s);
}

TEST_CASE("pathwise reference lives on the coarse grid") {
    ContactSystem sys = default_system();
    const BrownianPath path = generate(0.0, 1.0, 10, derive_stream(3, 1));
    const Trajectory ref = pathwise_reference(sys, path, kCanonical,
                                              OracleConfig{3});
    REQUIRE(ref.times.size() == 11);
    for (std::int64_t n = 0; n <= 10; ++n)
        CHECK(ref.times[static_cast<std::size_t>(n)] ==
              doctest::Approx(path.time_at(n)));
    CHECK(ref.states.front().q == kCanonical.q);

    // Its endpoint must be the endpoint-only variant, computed identically.
    const PhaseState end = reference_endpoint(sys, path, kCanonical,
                                              OracleConfig{3});
    CHECK(ref.states.back().q == end.q);
    CHECK(ref.states.back().p == end.p);
    CHECK(ref.states.back().s == end.s);
}

TEST_CASE("successive refinement levels are nested and converge") {
    ContactSystem sys = default_system();
    const BrownianPath path = generate(0.0, 2.0, 20, derive_stream(3, 0));
    const PhaseState r0 = reference_endpoint(sys, path, kCanonical,
                                             OracleConfig{0});
    const PhaseState r5 = reference_endpoint(sys, path, kCanonical,
                                             OracleConfig{5});
    const PhaseState r6 = reference_endpoint(sys, path, kCanonical,
                                             OracleConfig{6});
    // Nesting: level k+1 subdivides the same bridge as level k, so the k->k+1
    // gap measures genuine residual resolution, not a fresh noise draw.
    const double coarse_gap = distance(r0, r6);
    const double fine_gap = distance(r5, r6);
    CHECK(fine_gap < 0.5 * coarse_gap);
    CHECK(fine_gap < 5e-3);
}
