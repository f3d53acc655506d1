#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "scint/brownian_path.hpp"
#include "scint/contact_system.hpp"
#include "scint/errors.hpp"
#include "scint/rng.hpp"
#include "scint/schemes.hpp"

using namespace scint;

namespace {
const PhaseState kCanonical{0.75, -0.25, 0.08};

bool near(double a, double b, double tol = 1e-12) { return std::fabs(a - b) <= tol; }

ContactSystem default_system() { return make_oscillator(OscillatorParams{}); }
}  // namespace

TEST_CASE("scheme names, tags, and parsing round-trip") {
    for (SchemeId id : {SchemeId::euler_maruyama, SchemeId::herglotz_contact,
                        SchemeId::hj_contact}) {
        CHECK(parse_scheme(scheme_name(id)) == id);
        CHECK(parse_scheme(scheme_tag(id)) == id);
    }
    CHECK(parse_scheme("herglotz") == SchemeId::herglotz_contact);
    CHECK_THROWS_AS(parse_scheme("midpoint"), UsageError);
}

TEST_CASE("Euler–Maruyama step reproduces the hand-stepped values") {
    ContactSystem sys = default_system();

    SUBCASE("zero noise, transcribed action drift") {
        const PhaseState next = em_step(sys, kCanonical, 0.0, 0.1, 0.0);
        CHECK(near(next.q, 0.725));
        CHECK(near(next.p, -0.225));
        CHECK(near(next.s, 0.03762499999999999));
    }
    SUBCASE("noisy step, transcribed action drift") {
        const PhaseState next = em_step(sys, kCanonical, 0.0, 0.1, 0.2);
        CHECK(near(next.q, 0.725));
        CHECK(near(next.p, -0.425));
        CHECK(near(next.s, -0.112375));
    }
    SUBCASE("zero noise, action drift disabled") {
        StepConfig cfg;
        cfg.em_correction = EmCorrection::none;
        const PhaseState next = em_step(sys, kCanonical, 0.0, 0.1, 0.0, cfg);
        CHECK(near(next.q, 0.725));
        CHECK(near(next.p, -0.225));
        CHECK(near(next.s, 0.075125));
    }
    SUBCASE("step size must be positive") {
        CHECK_THROWS_AS(em_step(sys, kCanonical, 0.0, 0.0, 0.0), ConfigError);
    }
}

TEST_CASE("variational contact step reproduces the hand-stepped values") {
    ContactSystem sys = default_system();

    SUBCASE("zero noise, transcribed momentum line") {
        const PhaseState next = herglotz_step(sys, kCanonical, 0.0, 0.1, 0.0);
        CHECK(near(next.q, 0.72625));
        CHECK(near(next.p, -0.25));  // no deterministic damping in this mode
        CHECK(near(next.s, 0.07506696428571429));
    }
    SUBCASE("noisy step, transcribed momentum line") {
        const PhaseState next = herglotz_step(sys, kCanonical, 0.0, 0.1, 0.1);
        CHECK(near(next.q, 0.7162499999999999));
        CHECK(near(next.p, -0.35526315789473684));
        CHECK(near(next.s, 0.0063764880952381035));
    }
    SUBCASE("conformal momentum line damps by (1-h/2)/(1+h/2)") {
        StepConfig cfg;
        cfg.herglotz_p = HerglotzPUpdate::conformal;
        const PhaseState a = herglotz_step(sys, kCanonical, 0.0, 0.1, 0.0, cfg);
        CHECK(near(a.q, 0.72625));
        CHECK(near(a.p, -0.22619047619047616));
        CHECK(near(a.s, 0.07506696428571429));

        const PhaseState b = herglotz_step(sys, kCanonical, 0.0, 0.1, 0.1, cfg);
        CHECK(near(b.q, 0.7162499999999999));
        CHECK(near(b.p, -0.3214285714285714));
        CHECK(near(b.s, 0.0063764880952381035));
    }
    SUBCASE("precondition violations raise ConfigError") {
        CHECK_THROWS_AS(herglotz_step(sys, kCanonical, 0.0, -0.1, 0.0),
                        ConfigError);
        // gamma * h >= 2 leaves the validity region of the midpoint damping.
        CHECK_THROWS_AS(herglotz_step(sys, kCanonical, 0.0, 2.0, 0.0),
                        ConfigError);
        // The closed-form step only exists for the free-particle member.
        OscillatorParams harmonic;
        harmonic.omega0 = 0.5;
        ContactSystem with_spring = make_oscillator(harmonic);
        CHECK_THROWS_AS(herglotz_step(with_spring, kCanonical, 0.0, 0.1, 0.0),
                        ConfigError);
    }
}

TEST_CASE("integrate records the whole trajectory on the path grid") {
    ContactSystem sys = default_system();
    const BrownianPath path = generate(0.0, 2.0, 20, derive_stream(1, 0));
    const Trajectory traj =
        integrate(SchemeId::euler_maruyama, sys, path, kCanonical);

    REQUIRE(traj.times.size() == 21);
    REQUIRE(traj.states.size() == 21);
    CHECK(traj.scheme == SchemeId::euler_maruyama);
    CHECK(traj.seed == path.seed);
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == doctest::Approx(2.0));
    CHECK(traj.states.front().q == kCanonical.q);

    // The driver must agree with stepping by hand.
    PhaseState x = kCanonical;
    for (std::int64_t n = 0; n < path.n_steps; ++n)
        x = em_step(sys, x, path.time_at(n), path.dt(), increment(path, n));
    CHECK(x.q == traj.states.back().q);
    CHECK(x.p == traj.states.back().p);
    CHECK(x.s == traj.states.back().s);
}

TEST_CASE("integrate on an empty path returns just the initial state") {
    ContactSystem sys = default_system();
    const BrownianPath empty = from_increments(1.5, 0.0, {});
    const Trajectory traj =
        integrate(SchemeId::herglotz_contact, sys, empty, kCanonical);
    REQUIRE(traj.states.size() == 1);
    CHECK(traj.times.front() == 1.5);
    CHECK(traj.states.front().p == kCanonical.p);
}

TEST_CASE("step failures carry the one-based failing step index") {
    ContactSystem sys = default_system();
    const BrownianPath path = zero_path(0.0, 1.0, 10);
    try {
        integrate(SchemeId::hj_contact, sys, path, kCanonical);
        FAIL("expected a DomainError");
    } catch (const DomainError& err) {
        REQUIRE(err.step.has_value());
        CHECK(*err.step == 1);
        CHECK(err.describe().find("at step 1") != std::string::npos);
    }
}

TEST_CASE("states that leave the finite range raise OverflowError") {
    ContactSystem sys = default_system();
    // One enormous step: the action line squares the momentum and overflows.
    const BrownianPath huge = from_increments(0.0, 1e300, {0.0});
    PhaseState big = kCanonical;
    big.p = 1e200;
    try {
        integrate(SchemeId::euler_maruyama, sys, huge, big);
        FAIL("expected an OverflowError");
    } catch (const OverflowError& err) {
        REQUIRE(err.step.has_value());
        CHECK(*err.step == 1);
    }
}
