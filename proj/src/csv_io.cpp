#include "scint/csv_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "scint/errors.hpp"
#include "scint/rng.hpp"

namespace scint {

namespace {

std::ofstream open_out(const std::string& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw UsageError("cannot write file: " + file);
    return out;
}

}  // namespace

std::string format_double(double v) {
    // Shortest decimal form that parses back to exactly v; locale-independent.
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_trajectory_csv(const std::string& file, const Trajectory& traj) {
    std::ofstream out = open_out(file);
    out << "n,t,q,p,s\n";
    for (std::size_t n = 0; n < traj.states.size(); ++n) {
        const PhaseState& x = traj.states[n];
        out << n << ',' << format_double(traj.times[n]) << ','
            << format_double(x.q) << ',' << format_double(x.p) << ','
            << format_double(x.s) << '\n';
    }
}

void write_path_csv(const std::string& file, const BrownianPath& path) {
    std::ofstream out = open_out(file);
    out << "n,t,dW\n";
    for (std::int64_t n = 0; n < path.n_steps; ++n)
        out << n << ',' << format_double(path.time_at(n)) << ','
            << format_double(path.increments[static_cast<std::size_t>(n)])
            << '\n';
}

void write_contact_csv(const std::string& file,
                       const std::vector<ContactReport>& rows, double gamma) {
    std::ofstream out = open_out(file);
    out << "t,lambda,lambda_ref,r_p,r_q\n";
    for (const ContactReport& r : rows)
        out << format_double(r.t) << ',' << format_double(r.lambda_est) << ','
            << format_double(conformal_reference(gamma, r.t)) << ','
            << format_double(r.r_p) << ',' << format_double(r.r_q) << '\n';
}

void write_convergence_csv(const std::string& file,
                           const ConvergenceReport& rep) {
    std::ofstream out = open_out(file);
    out << "h,ms_standard,ms_sumsq,n_excluded\n";
    for (std::size_t i = 0; i < rep.step_sizes.size(); ++i)
        out << format_double(rep.step_sizes[i]) << ','
            << format_double(rep.ms_errors[i]) << ','
            << format_double(rep.ms_errors_sumsq[i]) << ','
            << rep.n_excluded[i] << '\n';
    out << "# slope=" << format_double(rep.slope)
        << " intercept=" << format_double(rep.intercept)
        << " n_paths=" << rep.n_paths
        << " scheme=" << scheme_name(rep.scheme) << '\n';
}

void write_hj_trace_csv(const std::string& file, const HJTrace& trace) {
    std::ofstream out = open_out(file);
    out << "n,t,x,y,z,sx,sy,sz,disc,q,p,s\n";
    for (const HJTraceRow& r : trace) {
        out << r.n << ',' << format_double(r.t) << ',' << format_double(r.x)
            << ',' << format_double(r.y) << ',' << format_double(r.z) << ','
            << format_double(r.sx) << ',' << format_double(r.sy) << ','
            << format_double(r.sz) << ',';
        if (r.n > 0) out << format_double(r.disc);
        out << ',' << format_double(r.q) << ',' << format_double(r.p) << ','
            << format_double(r.s) << '\n';
    }
}

void write_compare_csv(const std::string& file,
                       const std::vector<CompareRow>& rows) {
    std::ofstream out = open_out(file);
    out << "scheme,h,n_paths,n_excluded,median_error,mean_error,max_error\n";
    for (const CompareRow& r : rows)
        out << r.scheme << ',' << format_double(r.h) << ',' << r.n_paths << ','
            << r.n_excluded << ',' << format_double(r.median_error) << ','
            << format_double(r.mean_error) << ','
            << format_double(r.max_error) << '\n';
}

void write_comparison_csv(
    const std::string& file, const std::vector<double>& times,
    const std::vector<std::pair<std::string, const Trajectory*>>& labeled) {
    for (const auto& [tag, traj] : labeled)
        if (traj->states.size() != times.size())
            throw UsageError("comparison for '" + tag +
                             "' does not match the shared time grid");
    std::ofstream out = open_out(file);
    out << 't';
    for (const auto& [tag, traj] : labeled)
        out << ",q_" << tag << ",p_" << tag << ",s_" << tag;
    out << '\n';
    for (std::size_t n = 0; n < times.size(); ++n) {
        out << format_double(times[n]);
        for (const auto& [tag, traj] : labeled) {
            const PhaseState& x = traj->states[n];
            out << ',' << format_double(x.q) << ',' << format_double(x.p)
                << ',' << format_double(x.s);
        }
        out << '\n';
    }
}

void write_manifest(const std::string& file, const Manifest& m) {
    nlohmann::json doc;
    doc["command"] = m.command;
    nlohmann::json cfg = nlohmann::json::object();
    std::istringstream lines(canonical_text(m.config));
    std::string line;
    while (std::getline(lines, line)) {
        const std::size_t eq = line.find('=');
        cfg[line.substr(0, eq)] = line.substr(eq + 1);
    }
    doc["config"] = std::move(cfg);
    doc["config_hash"] = config_hash(m.config);
    doc["generator"] = {{"name", kGeneratorName}, {"version", kGeneratorVersion}};
    nlohmann::json schemes = nlohmann::json::array();
    for (const ManifestScheme& s : m.schemes)
        schemes.push_back({{"name", s.name}, {"status", s.status}});
    doc["schemes"] = std::move(schemes);
    doc["outputs"] = m.outputs;
    std::ofstream out = open_out(file);
    out << doc.dump(2) << '\n';
}

}  // namespace scint
