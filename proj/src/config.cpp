#include "scint/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "scint/errors.hpp"

namespace scint {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

double parse_double(const std::string& key, const std::string& value) {
    if (value.empty())
        throw ConfigError("empty value for key '" + key + "'");
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end != value.c_str() + value.size())
        throw ConfigError("key '" + key + "': cannot parse '" + value +
                          "' as a real number");
    return v;
}

long long parse_ll(const std::string& key, const std::string& value) {
    if (value.empty())
        throw ConfigError("empty value for key '" + key + "'");
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (end != value.c_str() + value.size())
        throw ConfigError("key '" + key + "': cannot parse '" + value +
                          "' as an integer");
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    if (value.empty())
        throw ConfigError("empty value for key '" + key + "'");
    if (value[0] == '-')
        throw ConfigError("key '" + key + "' must be non-negative");
    char* end = nullptr;
    const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (end != value.c_str() + value.size())
        throw ConfigError("key '" + key + "': cannot parse '" + value +
                          "' as an unsigned integer");
    return static_cast<std::uint64_t>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ConfigError("key '" + key + "': expected true or false, got '" +
                      value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string cur;
    std::istringstream in(value);
    while (std::getline(in, cur, ',')) items.push_back(trim(cur));
    return items;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string to_string(HJMode v) {
    return v == HJMode::printed ? "printed" : "general";
}
std::string to_string(HJPolicy v) {
    return v == HJPolicy::error ? "error" : "clamp";
}
std::string to_string(HJBranch v) {
    return v == HJBranch::plus ? "plus" : "minus";
}
std::string to_string(EmCorrection v) {
    return v == EmCorrection::printed ? "printed" : "none";
}
std::string to_string(HerglotzPUpdate v) {
    return v == HerglotzPUpdate::printed ? "printed" : "conformal";
}

HJMode parse_hj_mode(const std::string& v) {
    if (v == "printed") return HJMode::printed;
    if (v == "general") return HJMode::general;
    throw ConfigError("hj_mode must be printed or general, got '" + v + "'");
}
HJPolicy parse_hj_policy(const std::string& v) {
    if (v == "error") return HJPolicy::error;
    if (v == "clamp" || v == "clamp_to_zero") return HJPolicy::clamp_to_zero;
    throw ConfigError("hj_policy must be error or clamp, got '" + v + "'");
}
HJBranch parse_hj_branch(const std::string& v) {
    if (v == "plus") return HJBranch::plus;
    if (v == "minus") return HJBranch::minus;
    throw ConfigError("hj_branch must be plus or minus, got '" + v + "'");
}
EmCorrection parse_em_correction(const std::string& v) {
    if (v == "printed") return EmCorrection::printed;
    if (v == "none") return EmCorrection::none;
    throw ConfigError("em_drift_correction must be printed or none, got '" +
                      v + "'");
}
HerglotzPUpdate parse_herglotz_p_update(const std::string& v) {
    if (v == "printed") return HerglotzPUpdate::printed;
    if (v == "conformal") return HerglotzPUpdate::conformal;
    throw ConfigError("herglotz_p_update must be printed or conformal, got '" +
                      v + "'");
}

void apply_key(ExperimentConfig& cfg, const std::string& key,
               const std::string& value) {
    if (key == "mass") cfg.mass = parse_double(key, value);
    else if (key == "gamma") cfg.gamma = parse_double(key, value);
    else if (key == "omega_const") cfg.omega_const = parse_double(key, value);
    else if (key == "a") cfg.a = parse_double(key, value);
    else if (key == "q0") cfg.q0 = parse_double(key, value);
    else if (key == "p0") cfg.p0 = parse_double(key, value);
    else if (key == "s0") cfg.s0 = parse_double(key, value);
    else if (key == "x0") cfg.x0 = parse_double(key, value);
    else if (key == "y0") cfg.y0 = parse_double(key, value);
    else if (key == "z0") cfg.z0 = parse_double(key, value);
    else if (key == "horizon") cfg.horizon = parse_double(key, value);
    else if (key == "h") cfg.h = parse_double(key, value);
    else if (key == "convergence_horizon")
        cfg.convergence_horizon = parse_double(key, value);
    else if (key == "eps") cfg.eps = parse_double(key, value);
    else if (key == "checkpoint_stride")
        cfg.checkpoint_stride = parse_double(key, value);
    else if (key == "n_paths") {
        const long long v = parse_ll(key, value);
        if (v < 1) throw ConfigError("n_paths must be at least 1");
        cfg.n_paths = static_cast<int>(v);
    } else if (key == "threads") {
        const long long v = parse_ll(key, value);
        if (v < 1) throw ConfigError("threads must be at least 1");
        cfg.threads = static_cast<int>(v);
    } else if (key == "oracle_k") {
        const long long v = parse_ll(key, value);
        if (v < 0 || v > 24)
            throw ConfigError("oracle_k must lie in [0, 24]");
        cfg.oracle_k = static_cast<int>(v);
    } else if (key == "seed") {
        cfg.seed = parse_u64(key, value);
    } else if (key == "zero_noise") {
        cfg.zero_noise = parse_bool(key, value);
    } else if (key == "ladder") {
        std::vector<double> hs;
        for (const std::string& item : split_list(value))
            hs.push_back(parse_double(key, item));
        if (hs.empty()) throw ConfigError("ladder must not be empty");
        cfg.ladder = std::move(hs);
    } else if (key == "schemes") {
        std::vector<SchemeId> ids;
        for (const std::string& item : split_list(value)) {
            try {
                ids.push_back(parse_scheme(item));
            } catch (const UsageError& err) {
                throw ConfigError(std::string("key 'schemes': ") + err.what());
            }
        }
        if (ids.empty()) throw ConfigError("schemes must not be empty");
        cfg.schemes = std::move(ids);
    } else if (key == "hj_mode") {
        cfg.hj_mode = parse_hj_mode(value);
    } else if (key == "hj_policy") {
        cfg.hj_policy = parse_hj_policy(value);
    } else if (key == "hj_branch") {
        cfg.hj_branch = parse_hj_branch(value);
    } else if (key == "em_drift_correction") {
        cfg.em_drift_correction = parse_em_correction(value);
    } else if (key == "herglotz_p_update") {
        cfg.herglotz_p_update = parse_herglotz_p_update(value);
    } else if (key == "out_dir") {
        if (value.empty()) throw ConfigError("out_dir must not be empty");
        cfg.out_dir = value;
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::set<std::string> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": expected key=value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": empty key");
        if (!seen.insert(key).second)
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": duplicate key '" + key + "'");
        apply_key(cfg, key, value);
    }
    return cfg;
}

void validate(const ExperimentConfig& cfg) {
    if (!(cfg.mass > 0.0)) throw ConfigError("mass must be positive");
    if (cfg.gamma < 0.0) throw ConfigError("gamma must be non-negative");
    if (!(cfg.h > 0.0)) throw ConfigError("h must be positive");
    if (!(cfg.horizon >= 0.0)) throw ConfigError("horizon must be non-negative");
    if (!(cfg.convergence_horizon > 0.0))
        throw ConfigError("convergence_horizon must be positive");
    if (!(cfg.eps > 0.0)) throw ConfigError("eps must be positive");
    if (!(cfg.checkpoint_stride > 0.0))
        throw ConfigError("checkpoint_stride must be positive");
    if (cfg.n_paths < 1) throw ConfigError("n_paths must be at least 1");
    if (cfg.threads < 1) throw ConfigError("threads must be at least 1");
    if (cfg.oracle_k < 0 || cfg.oracle_k > 24)
        throw ConfigError("oracle_k must lie in [0, 24]");
    if (cfg.ladder.empty()) throw ConfigError("ladder must not be empty");
    for (double h : cfg.ladder)
        if (!(h > 0.0)) throw ConfigError("ladder steps must be positive");
    if (cfg.schemes.empty()) throw ConfigError("schemes must not be empty");
    if (cfg.out_dir.empty()) throw ConfigError("out_dir must not be empty");
}

std::string canonical_text(const ExperimentConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> kv;
    const auto add = [&](const char* k, std::string v) {
        kv.emplace_back(k, std::move(v));
    };
    add("a", fmt17(cfg.a));
    add("checkpoint_stride", fmt17(cfg.checkpoint_stride));
    add("convergence_horizon", fmt17(cfg.convergence_horizon));
    add("em_drift_correction", to_string(cfg.em_drift_correction));
    add("eps", fmt17(cfg.eps));
    add("gamma", fmt17(cfg.gamma));
    add("h", fmt17(cfg.h));
    add("herglotz_p_update", to_string(cfg.herglotz_p_update));
    add("hj_branch", to_string(cfg.hj_branch));
    add("hj_mode", to_string(cfg.hj_mode));
    add("hj_policy", to_string(cfg.hj_policy));
    add("horizon", fmt17(cfg.horizon));
    {
        std::string v;
        for (std::size_t i = 0; i < cfg.ladder.size(); ++i) {
            if (i) v += ',';
            v += fmt17(cfg.ladder[i]);
        }
        add("ladder", std::move(v));
    }
    add("mass", fmt17(cfg.mass));
    add("n_paths", std::to_string(cfg.n_paths));
    add("omega_const", fmt17(cfg.omega_const));
    add("oracle_k", std::to_string(cfg.oracle_k));
    add("out_dir", cfg.out_dir);
    add("p0", fmt17(cfg.p0));
    add("q0", fmt17(cfg.q0));
    add("s0", fmt17(cfg.s0));
    {
        std::string v;
        for (std::size_t i = 0; i < cfg.schemes.size(); ++i) {
            if (i) v += ',';
            v += scheme_tag(cfg.schemes[i]);
        }
        add("schemes", std::move(v));
    }
    add("seed", std::to_string(cfg.seed));
    add("threads", std::to_string(cfg.threads));
    add("x0", fmt17(cfg.x0));
    add("y0", fmt17(cfg.y0));
    add("z0", fmt17(cfg.z0));
    add("zero_noise", cfg.zero_noise ? "true" : "false");
    std::sort(kv.begin(), kv.end());
    std::string out;
    for (const auto& [k, v] : kv) {
        out += k;
        out += '=';
        out += v;
        out += '\n';
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (const char c : bytes) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

std::string config_hash(const ExperimentConfig& cfg) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical_text(cfg))));
    return buf;
}

ContactSystem make_system(const ExperimentConfig& cfg) {
    OscillatorParams par;
    par.mass = cfg.mass;
    par.gamma = cfg.gamma;
    par.a = cfg.a;
    par.omega0 = cfg.omega_const;
    return make_oscillator(par);
}

PhaseState initial_state(const ExperimentConfig& cfg) {
    return {cfg.q0, cfg.p0, cfg.s0};
}

IntegrateOptions integrate_options(const ExperimentConfig& cfg) {
    IntegrateOptions opts;
    opts.step.em_correction = cfg.em_drift_correction;
    opts.step.herglotz_p = cfg.herglotz_p_update;
    opts.hj.mode = cfg.hj_mode;
    opts.hj.policy = cfg.hj_policy;
    opts.hj.branch = cfg.hj_branch;
    opts.x0 = cfg.x0;
    opts.y0 = cfg.y0;
    opts.z0 = cfg.z0;
    return opts;
}

}  // namespace scint
