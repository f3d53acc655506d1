#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "scint/config.hpp"
#include "scint/csv_io.hpp"
#include "scint/diagnostics.hpp"
#include "scint/errors.hpp"
#include "scint/oracle.hpp"
#include "scint/parallel.hpp"
#include "scint/rng.hpp"
#include "scint/schemes.hpp"
#include "scint/summation.hpp"

namespace fs = std::filesystem;
using namespace scint;

namespace {

std::string trimmed(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

struct CliOverrides {
    std::string config_path;
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<std::string> out_dir;
    std::vector<std::string> schemes;
    std::optional<std::string> hj_mode, hj_policy, hj_branch;
    std::optional<std::string> em_correction, herglotz_p_update;
    bool zero_noise = false;
    std::optional<double> horizon, step, convergence_horizon, eps, stride;
    std::optional<int> n_paths, oracle_k;
    std::optional<std::string> ladder;
};

ExperimentConfig assemble(const CliOverrides& o) {
    ExperimentConfig cfg = o.config_path.empty()
                               ? ExperimentConfig{}
                               : parse_config_file(o.config_path);
    for (const std::string& kv : o.sets) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects key=value, got '" + kv + "'");
        apply_key(cfg, trimmed(kv.substr(0, eq)), trimmed(kv.substr(eq + 1)));
    }
    if (o.seed) cfg.seed = *o.seed;
    if (o.threads) apply_key(cfg, "threads", std::to_string(*o.threads));
    if (o.out_dir) apply_key(cfg, "out_dir", *o.out_dir);
    if (!o.schemes.empty()) {
        std::string joined;
        for (std::size_t i = 0; i < o.schemes.size(); ++i) {
            if (i) joined += ',';
            joined += o.schemes[i];
        }
        apply_key(cfg, "schemes", joined);
    }
    if (o.hj_mode) apply_key(cfg, "hj_mode", *o.hj_mode);
    if (o.hj_policy) apply_key(cfg, "hj_policy", *o.hj_policy);
    if (o.hj_branch) apply_key(cfg, "hj_branch", *o.hj_branch);
    if (o.em_correction) apply_key(cfg, "em_drift_correction", *o.em_correction);
    if (o.herglotz_p_update)
        apply_key(cfg, "herglotz_p_update", *o.herglotz_p_update);
    if (o.zero_noise) cfg.zero_noise = true;
    if (o.horizon) cfg.horizon = *o.horizon;
    if (o.step) cfg.h = *o.step;
    if (o.convergence_horizon) cfg.convergence_horizon = *o.convergence_horizon;
    if (o.eps) cfg.eps = *o.eps;
    if (o.stride) cfg.checkpoint_stride = *o.stride;
    if (o.n_paths) apply_key(cfg, "n_paths", std::to_string(*o.n_paths));
    if (o.oracle_k) apply_key(cfg, "oracle_k", std::to_string(*o.oracle_k));
    if (o.ladder) apply_key(cfg, "ladder", *o.ladder);
    validate(cfg);
    return cfg;
}

struct Session {
    ExperimentConfig cfg;
    ContactSystem sys;
    PhaseState init;
    IntegrateOptions opts;
    fs::path out;
};

Session make_session(const CliOverrides& o) {
    Session s;
    s.cfg = assemble(o);
    s.sys = make_system(s.cfg);
    s.init = initial_state(s.cfg);
    s.opts = integrate_options(s.cfg);
    s.out = fs::path(s.cfg.out_dir);
    std::error_code ec;
    fs::create_directories(s.out, ec);
    if (ec)
        throw UsageError("cannot create output directory " + s.out.string() +
                         ": " + ec.message());
    return s;
}

std::int64_t steps_for(double horizon, double h) {
    if (horizon == 0.0) return 0;
    const std::int64_t n = std::llround(horizon / h);
    if (n < 1 ||
        std::abs(static_cast<double>(n) * h - horizon) >
            1e-9 * std::max(1.0, horizon))
        throw ConfigError("horizon must be an integer multiple of h");
    return n;
}

BrownianPath common_path(const ExperimentConfig& cfg, std::int64_t n_steps) {
    if (n_steps == 0)
        return from_increments(0.0, 0.0, {}, derive_stream(cfg.seed, 0));
    if (cfg.zero_noise) return zero_path(0.0, cfg.horizon, n_steps);
    return generate(0.0, cfg.horizon, n_steps, derive_stream(cfg.seed, 0));
}

std::vector<SchemeId> unique_schemes(const std::vector<SchemeId>& ids) {
    std::vector<SchemeId> out;
    for (SchemeId id : ids)
        if (std::find(out.begin(), out.end(), id) == out.end())
            out.push_back(id);
    return out;
}

void finish_manifest(const Session& s, const std::string& command,
                     std::vector<ManifestScheme> statuses,
                     std::vector<std::string> outputs) {
    Manifest m;
    m.command = command;
    m.config = s.cfg;
    m.schemes = std::move(statuses);
    m.outputs = std::move(outputs);
    write_manifest((s.out / "manifest.json").string(), m);
}

int cmd_simulate(const Session& s) {
    const ExperimentConfig& cfg = s.cfg;
    const std::int64_t n = steps_for(cfg.horizon, cfg.h);
    const BrownianPath path = common_path(cfg, n);

    std::vector<std::string> outputs;
    write_path_csv((s.out / "path.csv").string(), path);
    outputs.push_back("path.csv");

    const std::vector<SchemeId> ids = unique_schemes(cfg.schemes);
    std::vector<Trajectory> trajs(ids.size());
    std::vector<bool> ok(ids.size(), false);
    std::vector<ManifestScheme> statuses;
    int exit_code = 0;

    for (std::size_t i = 0; i < ids.size(); ++i) {
        const SchemeId id = ids[i];
        HJTrace trace;
        IntegrateOptions opts = s.opts;
        if (id == SchemeId::hj_contact) opts.hj_trace = &trace;
        try {
            trajs[i] = integrate(id, s.sys, path, s.init, opts);
            ok[i] = true;
            const std::string name = "trajectory_" + scheme_tag(id) + ".csv";
            write_trajectory_csv((s.out / name).string(), trajs[i]);
            outputs.push_back(name);
            statuses.push_back({scheme_name(id), "ok"});
        } catch (const NumericError& err) {
            statuses.push_back({scheme_name(id), err.describe()});
            std::cerr << "scheme " << scheme_name(id) << ": " << err.describe()
                      << '\n';
            if (exit_code == 0) exit_code = err.exit_code();
        }
        if (id == SchemeId::hj_contact && !trace.empty()) {
            write_hj_trace_csv((s.out / "hj_trace.csv").string(), trace);
            outputs.push_back("hj_trace.csv");
        }
    }

    std::vector<std::pair<std::string, const Trajectory*>> labeled;
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (ok[i]) labeled.emplace_back(scheme_tag(ids[i]), &trajs[i]);
    if (labeled.size() >= 2) {
        write_comparison_csv((s.out / "comparison.csv").string(),
                             labeled.front().second->times, labeled);
        outputs.push_back("comparison.csv");
    }

    finish_manifest(s, "simulate", std::move(statuses), std::move(outputs));
    return exit_code;
}

int cmd_convergence(const Session& s, bool self_test) {
    const ExperimentConfig& cfg = s.cfg;
    if (self_test) {
        std::vector<double> ladder = cfg.ladder;
        std::sort(ladder.begin(), ladder.end());
        std::vector<double> errors;
        errors.reserve(ladder.size());
        for (double h : ladder) errors.push_back(0.5 * h);
        const OrderFit fit = order_fit(ladder, errors);
        std::cout << "self-test slope=" << format_double(fit.slope) << '\n';
        if (std::abs(fit.slope - 1.0) > 1e-12)
            throw NumericError("synthetic order fit deviates from slope 1.0");
        return 0;
    }

    StudyConfig scfg;
    scfg.ladder = cfg.ladder;
    scfg.horizon = cfg.convergence_horizon;
    scfg.n_paths = cfg.n_paths;
    scfg.seed = cfg.seed;
    scfg.oracle_k = cfg.oracle_k;
    scfg.threads = cfg.threads;
    scfg.zero_noise = cfg.zero_noise;
    scfg.opts = s.opts;

    std::vector<std::string> outputs;
    std::vector<ManifestScheme> statuses;
    int exit_code = 0;
    for (SchemeId id : unique_schemes(cfg.schemes)) {
        try {
            const ConvergenceReport rep =
                convergence_study(id, s.sys, s.init, scfg);
            const std::string name = "convergence_" + scheme_tag(id) + ".csv";
            write_convergence_csv((s.out / name).string(), rep);
            outputs.push_back(name);
            statuses.push_back({scheme_name(id), "ok"});
            std::cout << scheme_name(id)
                      << " slope=" << format_double(rep.slope) << '\n';
        } catch (const NumericError& err) {
            statuses.push_back({scheme_name(id), err.describe()});
            std::cerr << "scheme " << scheme_name(id) << ": " << err.describe()
                      << '\n';
            if (exit_code == 0) exit_code = err.exit_code();
        } catch (const OracleResolutionError& err) {
            statuses.push_back({scheme_name(id), err.what()});
            std::cerr << "scheme " << scheme_name(id) << ": " << err.what()
                      << '\n';
            if (exit_code == 0) exit_code = err.exit_code();
        }
    }
    finish_manifest(s, "convergence", std::move(statuses), std::move(outputs));
    return exit_code;
}

int cmd_contact_check(const Session& s) {
    const ExperimentConfig& cfg = s.cfg;
    const std::int64_t n = steps_for(cfg.horizon, cfg.h);
    const BrownianPath path = common_path(cfg, n);

    std::vector<double> checkpoints;
    for (int k = 1; static_cast<double>(k) * cfg.checkpoint_stride <=
                    cfg.horizon + 1e-9;
         ++k)
        checkpoints.push_back(static_cast<double>(k) * cfg.checkpoint_stride);
    if (checkpoints.empty())
        throw ConfigError("no checkpoints before the horizon; lower "
                          "checkpoint_stride");

    std::vector<std::string> outputs;
    std::vector<ManifestScheme> statuses;
    int exit_code = 0;
    for (SchemeId id : unique_schemes(cfg.schemes)) {
        std::vector<ContactReport> rows;
        try {
            for (double tc : checkpoints) {
                const FlowJacobian jac = flow_jacobian(id, s.sys, s.init, path,
                                                       tc, cfg.eps, s.opts);
                rows.push_back(contact_residuals(jac));
            }
            const std::string name = "contact_" + scheme_tag(id) + ".csv";
            write_contact_csv((s.out / name).string(), rows, cfg.gamma);
            outputs.push_back(name);
            statuses.push_back({scheme_name(id), "ok"});
        } catch (const NumericError& err) {
            statuses.push_back({scheme_name(id), err.describe()});
            std::cerr << "scheme " << scheme_name(id) << ": " << err.describe()
                      << '\n';
            if (exit_code == 0) exit_code = err.exit_code();
        }
    }
    finish_manifest(s, "contact-check", std::move(statuses),
                    std::move(outputs));
    return exit_code;
}

int cmd_compare(const Session& s) {
    const ExperimentConfig& cfg = s.cfg;
    if (cfg.schemes.size() < 2)
        throw UsageError("compare needs at least two schemes");
    const std::int64_t n = steps_for(cfg.horizon, cfg.h);
    if (n == 0) throw ConfigError("compare needs a positive horizon");

    const std::size_t paths_n = static_cast<std::size_t>(cfg.n_paths);
    std::vector<BrownianPath> paths(paths_n);
    std::vector<PhaseState> refs(paths_n);
    parallel_for(cfg.n_paths, cfg.threads, [&](std::int64_t i) {
        paths[static_cast<std::size_t>(i)] =
            cfg.zero_noise
                ? zero_path(0.0, cfg.horizon, n)
                : generate(0.0, cfg.horizon, n,
                           derive_stream(cfg.seed, static_cast<std::uint64_t>(i)));
        refs[static_cast<std::size_t>(i)] =
            reference_endpoint(s.sys, paths[static_cast<std::size_t>(i)],
                               s.init, OracleConfig{cfg.oracle_k});
    });

    std::vector<CompareRow> rows;
    std::vector<std::string> outputs;
    std::vector<ManifestScheme> statuses;
    int exit_code = 0;
    for (SchemeId id : cfg.schemes) {
        std::vector<double> errs(paths_n, 0.0);
        std::vector<std::uint8_t> excluded(paths_n, 0);
        parallel_for(cfg.n_paths, cfg.threads, [&](std::int64_t i) {
            const std::size_t u = static_cast<std::size_t>(i);
            try {
                const Trajectory tr =
                    integrate(id, s.sys, paths[u], s.init, s.opts);
                errs[u] = distance(tr.states.back(), refs[u]);
            } catch (const NumericError&) {
                excluded[u] = 1;
            }
        });
        std::vector<double> valid;
        valid.reserve(paths_n);
        NeumaierSum sum;
        double max_err = 0.0;
        int exc = 0;
        for (std::size_t u = 0; u < paths_n; ++u) {
            if (excluded[u]) {
                ++exc;
                continue;
            }
            valid.push_back(errs[u]);
            sum.add(errs[u]);
            max_err = std::max(max_err, errs[u]);
        }
        if (exc * 10 > cfg.n_paths) {
            const std::string why = "failed on " + std::to_string(exc) + " of " +
                                    std::to_string(cfg.n_paths) + " paths";
            statuses.push_back({scheme_name(id), why});
            std::cerr << "scheme " << scheme_name(id) << ": " << why << '\n';
            if (exit_code == 0) exit_code = 3;
            continue;
        }
        std::sort(valid.begin(), valid.end());
        const std::size_t m = valid.size();
        const double median = m % 2 == 1
                                  ? valid[m / 2]
                                  : 0.5 * (valid[m / 2 - 1] + valid[m / 2]);
        rows.push_back({scheme_name(id), cfg.h, cfg.n_paths, exc, median,
                        sum.value() / static_cast<double>(m), max_err});
        statuses.push_back({scheme_name(id), "ok"});
    }
    write_compare_csv((s.out / "compare.csv").string(), rows);
    outputs.push_back("compare.csv");
    finish_manifest(s, "compare", std::move(statuses), std::move(outputs));
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "integrators for stochastic contact systems: trajectory runs, "
        "strong-order studies, contact-form diagnostics"};
    app.require_subcommand(1);

    CliOverrides o;
    bool self_test = false;

    app.add_option("--config", o.config_path, "flat key=value config file");
    app.add_option("--set", o.sets,
                   "override one config key (key=value, repeatable)");
    app.add_option("--seed", o.seed, "master RNG seed");
    app.add_option("--threads", o.threads, "worker threads for ensembles");
    app.add_option("--out", o.out_dir, "output directory");
    app.add_option("--scheme", o.schemes,
                   "scheme to run: em|hg|hj (repeatable; replaces the config "
                   "list)");
    app.add_option("--hj-mode", o.hj_mode,
                   "position-update mode for hj: printed|general");
    app.add_option("--hj-policy", o.hj_policy,
                   "negative-discriminant policy for hj: error|clamp");
    app.add_option("--hj-branch", o.hj_branch, "quadratic root: plus|minus");
    app.add_option("--em-correction", o.em_correction,
                   "extra action drift term for em: printed|none");
    app.add_option("--herglotz-p-update", o.herglotz_p_update,
                   "momentum line for hg: printed|conformal");
    app.add_flag("--zero-noise", o.zero_noise,
                 "replace the noise by the zero path");
    app.add_option("--horizon", o.horizon, "integration horizon T");
    app.add_option("--step", o.step, "step size h");
    app.add_option("--convergence-horizon", o.convergence_horizon,
                   "horizon for the ladder study");
    app.add_option("--eps", o.eps, "finite-difference perturbation");
    app.add_option("--checkpoint-stride", o.stride,
                   "spacing of contact-check checkpoints");
    app.add_option("--n-paths", o.n_paths, "ensemble size");
    app.add_option("--oracle-k", o.oracle_k,
                   "reference refinement exponent (grid 2^k finer)");
    app.add_option("--ladder", o.ladder,
                   "comma-separated step sizes for the ladder study");

    CLI::App* sim = app.add_subcommand(
        "simulate", "integrate each scheme on a common noise path");
    CLI::App* conv = app.add_subcommand(
        "convergence", "step-ladder strong-error study with fitted order");
    conv->add_flag("--self-test", self_test,
                   "fit synthetic c*h errors and require slope 1");
    CLI::App* chk = app.add_subcommand(
        "contact-check", "contact-form transport residuals at checkpoints");
    CLI::App* cmp = app.add_subcommand(
        "compare", "endpoint-error summary across schemes on common paths");
    for (CLI::App* sub : {sim, conv, chk, cmp}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const Session s = make_session(o);
        if (sim->parsed()) return cmd_simulate(s);
        if (conv->parsed()) return cmd_convergence(s, self_test);
        if (chk->parsed()) return cmd_contact_check(s);
        return cmd_compare(s);
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.describe() << '\n';
        return e.exit_code();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
