#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "scint/errors.hpp"
#include "scint/hj_engine.hpp"

using namespace scint;

namespace {
bool near(double a, double b, double tol = 1e-12) { return std::fabs(a - b) <= tol; }

HJState canonical_coeffs() {
    HJState c;
    c.x = c.y = c.z = 0.65;
    c.b0 = hj_b0(0.75);
    return c;
}
}  // namespace

TEST_CASE("reference amplitude helpers") {
    CHECK(near(hj_b0(0.75), 2.3125));
    CHECK(near(b_reference(2.3125, 1.0, 0.0), 2.3125));
    CHECK(near(b_reference(2.0, 0.5, 2.0), 2.0 * std::exp(-1.0)));
    // The eta offset the general q-update sees after one sensitivity advance.
    CHECK(near(0.9 - b_reference(hj_b0(0.75), 1.0, 0.1), -1.1924365292081567));
}

TEST_CASE("coefficient recursion reproduces the hand-stepped values") {
    const HJState c = canonical_coeffs();

    SUBCASE("zero noise") {
        const HJState next = coeff_step(c, 0.1, 0.0);
        CHECK(near(next.x, 0.563875));
        CHECK(near(next.y, 0.5005));
        CHECK(near(next.z, 0.5005));
    }
    SUBCASE("noisy step") {
        const HJState next = coeff_step(c, 0.1, 0.1);
        CHECK(near(next.x, 0.5698750000000001));
        CHECK(near(next.y, 0.5235));
        CHECK(near(next.z, 0.5005));
    }
    SUBCASE("sensitivities and amplitude ride along unchanged") {
        HJState tagged = c;
        tagged.sx = 0.9;
        tagged.sy = 0.8;
        tagged.sz = 0.7;
        const HJState next = coeff_step(tagged, 0.1, 0.05);
        CHECK(next.sx == 0.9);
        CHECK(next.sy == 0.8);
        CHECK(next.sz == 0.7);
        CHECK(next.b0 == tagged.b0);
    }
}

TEST_CASE("sensitivity advance multiplies by the per-step factors") {
    const HJState c = canonical_coeffs();
    const HJState next = sensitivity_step(c, 0.1);
    // Factors at z = 0.65: (1-h-4hz, 1-h-2hz, 1-h) = (0.64, 0.77, 0.9).
    CHECK(near(next.sz, 0.64));
    CHECK(near(next.sy, 0.77));
    CHECK(near(next.sx, 0.9));

    HJState scaled = c;
    scaled.sx = 2.0;
    CHECK(near(sensitivity_step(scaled, 0.1).sx, 1.8));
}

TEST_CASE("sensitivity advance detects a non-invertible coefficient flow") {
    HJState at_edge = canonical_coeffs();
    at_edge.z = 2.25;  // 1 - h - 4hz = 0 at h = 0.1
    CHECK_THROWS_AS(sensitivity_step(at_edge, 0.1), DegeneracyError);

    HJState beyond = canonical_coeffs();
    beyond.z = 2.5;  // factor -0.1
    CHECK_THROWS_AS(sensitivity_step(beyond, 0.1), DegeneracyError);
}

TEST_CASE("closed-form position update evaluates both branches") {
    HJState c;
    c.z = 3.0;  // discriminant 1.17 > 0
    CHECK(near(hj_q_update(c, 0.1, HJConfig{}), -1.3027756377319946));

    HJConfig minus_branch;
    minus_branch.branch = HJBranch::minus;
    CHECK(near(hj_q_update(c, 0.1, minus_branch), 2.3027756377319948));
}

TEST_CASE("closed-form position update fails at the default coefficients") {
    const HJState c = canonical_coeffs();
    try {
        hj_q_update(c, 0.1, HJConfig{});
        FAIL("expected a DomainError");
    } catch (const DomainError& err) {
        CHECK(near(err.discriminant, -1.7111000000000001));
        CHECK(std::string(err.what()).find("negative discriminant") !=
              std::string::npos);
    }

    HJConfig clamped;
    clamped.policy = HJPolicy::clamp_to_zero;
    // Clamping treats the discriminant as zero: q' = -0.77 / 1.28.
    CHECK(near(hj_q_update(c, 0.1, clamped), -0.6015625));
}

TEST_CASE("general position update solves the sensitivity quadratic") {
    HJConfig cfg;
    cfg.mode = HJMode::general;

    HJState a;  // kappa=1, chi=0, eta=-4  ->  q' = 2 on the plus branch
    a.sz = 1.0;
    a.sy = 0.0;
    a.sx = -4.0;
    a.b0 = 0.0;
    CHECK(near(hj_q_general(a, 1.0, 0.1, cfg), 2.0));

    HJState b;  // kappa=1, chi=2, eta=1  ->  double root -1
    b.sz = 1.0;
    b.sy = 2.0;
    b.sx = 1.0;
    b.b0 = 0.0;
    CHECK(near(hj_q_general(b, 1.0, 0.1, cfg), -1.0));

    HJState degenerate;  // kappa = 0: not a quadratic any more
    degenerate.sz = 0.0;
    degenerate.sy = 1.0;
    degenerate.sx = 0.0;
    degenerate.b0 = 0.0;
    CHECK_THROWS_AS(hj_q_general(degenerate, 1.0, 0.1, cfg), DegeneracyError);

    HJState negative;  // kappa=1, chi=0, eta=4: discriminant -16
    negative.sz = 1.0;
    negative.sy = 0.0;
    negative.sx = 4.0;
    negative.b0 = 0.0;
    CHECK_THROWS_AS(hj_q_general(negative, 1.0, 0.1, cfg), DomainError);
    HJConfig clamp = cfg;
    clamp.policy = HJPolicy::clamp_to_zero;
    CHECK(near(hj_q_general(negative, 1.0, 0.1, clamp), 0.0));
}

TEST_CASE("momentum and action read off the updated coefficients") {
    HJState next;
    next.x = 1.0;
    next.y = 2.0;
    next.z = 1.0;
    CHECK(near(hj_p_update(next, 3.0, 0.5), 7.5));   // y + 2zq - dW
    CHECK(near(hj_s_update(next, 3.0, 0.5), 14.5));  // x + yq + zq^2 - q dW
}

TEST_CASE("full step surfaces the discriminant it consumed") {
    HJComposite comp;
    comp.phase = PhaseState{0.75, -0.25, 0.08};
    comp.coeffs = canonical_coeffs();

    SUBCASE("printed mode aborts immediately at the default coefficients") {
        try {
            hj_step(comp, 0.0, 0.1, 0.0, 1.0, HJConfig{});
            FAIL("expected a DomainError");
        } catch (const DomainError& err) {
            CHECK(near(err.discriminant, -1.7111000000000001));
        }
    }
    SUBCASE("general mode completes from the same data") {
        HJConfig cfg;
        cfg.mode = HJMode::general;
        const HJStepResult res = hj_step(comp, 0.0, 0.1, 0.0, 1.0, cfg);
        CHECK(res.discriminant > 0.0);
        CHECK(std::isfinite(res.state.phase.q));
        CHECK(std::isfinite(res.state.phase.p));
        CHECK(std::isfinite(res.state.phase.s));
        // Coefficients advanced by the zero-noise recursion.
        CHECK(near(res.state.coeffs.z, 0.5005));
        CHECK(near(res.state.coeffs.y, 0.5005));
        CHECK(near(res.state.coeffs.x, 0.563875));
        // Sensitivities advanced by the factors at z = 0.65.
        CHECK(near(res.state.coeffs.sz, 0.64));
        CHECK(near(res.state.coeffs.sy, 0.77));
        CHECK(near(res.state.coeffs.sx, 0.9));
    }
}
