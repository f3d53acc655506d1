#include "scint/hj_engine.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "scint/errors.hpp"

namespace scint {

double hj_b0(double q0) { return 1.0 + q0 + q0 * q0; }

double b_reference(double b0, double gamma, double t) {
    return b0 * std::exp(-gamma * t);
}

HJState coeff_step(const HJState& c, double h, double dW) {
    HJState n = c;
    n.z = c.z - 2.0 * c.z * c.z * h - c.z * h;
    n.y = c.y - 2.0 * c.z * (c.y - dW) * h - (c.y - dW) * h;
    n.x = c.x - 0.5 * h * (c.y * c.y + dW * dW - 2.0 * dW * c.y) - c.x * h;
    return n;
}

HJState sensitivity_step(const HJState& c, double h) {
    const double fz = 1.0 - h - 4.0 * h * c.z;
    const double fy = 1.0 - h - 2.0 * h * c.z;
    const double fx = 1.0 - h;
    if (fz <= 0.0 || fy <= 0.0 || fx <= 0.0)
        throw DegeneracyError(
            "coefficient sensitivity factor is not positive (z=" +
            std::to_string(c.z) + ", h=" + std::to_string(h) + ")");
    HJState n = c;
    n.sz = c.sz * fz;
    n.sy = c.sy * fy;
    n.sx = c.sx * fx;
    return n;
}

namespace {

/// Positive root of the discriminant under the configured policy/branch.
double solve_quadratic(double kappa, double chi, double disc,
                       const HJConfig& cfg, const char* what) {
    if (disc < 0.0) {
        if (cfg.policy == HJPolicy::error) {
            char value[40];
            std::snprintf(value, sizeof value, "%.17g", disc);
            throw DomainError(std::string(what) +
                                  ": negative discriminant " + value,
                              disc);
        }
        disc = 0.0;
    }
    const double root = std::sqrt(disc);
    const double num = cfg.branch == HJBranch::plus ? -chi + root : -chi - root;
    return num / (2.0 * kappa);
}

}  // namespace

double hj_q_update(const HJState& c, double h, const HJConfig& cfg) {
    const double z = c.z;
    const double kappa = 1.0 - h - 4.0 * h * z;
    const double chi = 1.0 - h - 2.0 * h * z;
    if (kappa == 0.0)
        throw DegeneracyError("position update: vanishing quadratic coefficient");
    const double disc = 12.0 * h * (1.0 - h) * z + 4.0 * h * h * z * z -
                        3.0 * (1.0 - h) * (1.0 - h);
    return solve_quadratic(kappa, chi, disc, cfg, "closed-form position update");
}

double hj_q_general(const HJState& c, double gamma, double t_next,
                    const HJConfig& cfg) {
    const double kappa = c.sz;
    const double chi = c.sy;
    const double eta = c.sx - b_reference(c.b0, gamma, t_next);
    if (kappa == 0.0)
        throw DegeneracyError("position update: degenerate quadratic (kappa = 0)");
    const double disc = chi * chi - 4.0 * kappa * eta;
    return solve_quadratic(kappa, chi, disc, cfg, "general position update");
}

double hj_p_update(const HJState& next, double q_next, double dW) {
    return next.y + 2.0 * next.z * q_next - dW;
}

double hj_s_update(const HJState& next, double q_next, double dW) {
    return next.x + next.y * q_next + next.z * q_next * q_next - q_next * dW;
}

HJStepResult hj_step(const HJComposite& cur, double t, double h, double dW,
                     double gamma, const HJConfig& cfg) {
    HJStepResult out;

    // 1. Sensitivities pick up this step's factors (evaluated at current z).
    HJState adv = sensitivity_step(cur.coeffs, h);

    // 2. Position update; record the discriminant that was consumed.
    double q_next;
    if (cfg.mode == HJMode::printed) {
        const double z = cur.coeffs.z;
        out.discriminant = 12.0 * h * (1.0 - h) * z + 4.0 * h * h * z * z -
                           3.0 * (1.0 - h) * (1.0 - h);
        q_next = hj_q_update(cur.coeffs, h, cfg);
    } else {
        const double eta = adv.sx - b_reference(adv.b0, gamma, t + h);
        out.discriminant = adv.sy * adv.sy - 4.0 * adv.sz * eta;
        q_next = hj_q_general(adv, gamma, t + h, cfg);
    }

    // 3. Coefficients advance with this step's noise.
    HJState next = coeff_step(adv, h, dW);

    // 4. Momentum and action from the advanced coefficients.
    out.state.coeffs = next;
    out.state.phase.q = q_next;
    out.state.phase.p = hj_p_update(next, q_next, dW);
    out.state.phase.s = hj_s_update(next, q_next, dW);
    return out;
}

}  // namespace scint
