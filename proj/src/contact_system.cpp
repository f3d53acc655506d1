#include "scint/contact_system.hpp"

#include <algorithm>
#include <cmath>

#include "scint/errors.hpp"

namespace scint {

ContactSystem make_oscillator(const OscillatorParams& params) {
    if (!(params.mass > 0.0))
        throw ConfigError("oscillator mass must be positive");
    if (!(params.gamma >= 0.0))
        throw ConfigError("oscillator damping rate must be non-negative");

    ContactSystem sys;
    sys.params = params;
    const double m = params.mass;
    const double gamma = params.gamma;
    const double a = params.a;
    const OscillatorParams p = params;  // captured by value below

    sys.h0 = [m, gamma, p](const PhaseState& x, double t) {
        const double w = p.omega_at(t);
        return x.p * x.p / (2.0 * m) + 0.5 * m * w * w * x.q * x.q + gamma * x.s;
    };
    sys.h1 = [a](const PhaseState& x, double) { return a * x.q; };

    sys.dq_h0 = [m, p](const PhaseState& x, double t) {
        const double w = p.omega_at(t);
        return m * w * w * x.q;
    };
    sys.dp_h0 = [m](const PhaseState& x, double) { return x.p / m; };
    sys.ds_h0 = [gamma](const PhaseState&, double) { return gamma; };

    sys.dq_h1 = [a](const PhaseState&, double) { return a; };
    sys.dp_h1 = [](const PhaseState&, double) { return 0.0; };
    sys.ds_h1 = [](const PhaseState&, double) { return 0.0; };

    return sys;
}

namespace {

/// Shared template: the contact vector field generated by a Hamiltonian h
/// with partials (hq, hp, hs).
PhaseState contact_field(double h, double hq, double hp, double hs,
                         const PhaseState& x) {
    PhaseState out;
    out.q = hp;
    out.p = -(hq + x.p * hs);
    out.s = x.p * hp - h;
    return out;
}

}  // namespace

PhaseState eval_drift(const ContactSystem& sys, const PhaseState& x, double t) {
    return contact_field(sys.h0(x, t), sys.dq_h0(x, t), sys.dp_h0(x, t),
                         sys.ds_h0(x, t), x);
}

PhaseState eval_diffusion(const ContactSystem& sys, const PhaseState& x, double t) {
    return contact_field(sys.h1(x, t), sys.dq_h1(x, t), sys.dp_h1(x, t),
                         sys.ds_h1(x, t), x);
}

double check_partials(const ContactSystem& sys, const PhaseState& x, double t,
                      double eps) {
    if (!(eps > 0.0)) throw UsageError("check_partials: eps must be positive");

    const auto central = [&](const ContactSystem::Field& f, int coord) {
        PhaseState plus = x, minus = x;
        double* pp = coord == 0 ? &plus.q : coord == 1 ? &plus.p : &plus.s;
        double* pm = coord == 0 ? &minus.q : coord == 1 ? &minus.p : &minus.s;
        *pp += eps;
        *pm -= eps;
        return (f(plus, t) - f(minus, t)) / (2.0 * eps);
    };

    struct Pair {
        const ContactSystem::Field& analytic;
        const ContactSystem::Field& of;
        int coord;
    };
    const Pair pairs[] = {
        {sys.dq_h0, sys.h0, 0}, {sys.dp_h0, sys.h0, 1}, {sys.ds_h0, sys.h0, 2},
        {sys.dq_h1, sys.h1, 0}, {sys.dp_h1, sys.h1, 1}, {sys.ds_h1, sys.h1, 2},
    };

    double worst = 0.0;
    for (const auto& pr : pairs) {
        const double analytic = pr.analytic(x, t);
        const double numeric = central(pr.of, pr.coord);
        const double res = std::abs(analytic - numeric) / (1.0 + std::abs(analytic));
        worst = std::max(worst, res);
    }
    return worst;
}

}  // namespace scint
