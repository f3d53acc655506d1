#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scint/brownian_path.hpp"
#include "scint/config.hpp"
#include "scint/diagnostics.hpp"
#include "scint/hj_engine.hpp"
#include "scint/schemes.hpp"

namespace scint {

/// Shortest decimal form of a double that parses back to the same value
/// (std::to_chars); locale-independent, '.' separator.
std::string format_double(double v);

// All writers emit a header row, '\n' line endings, and format_double for
// every real column, so identical inputs give byte-identical files.

/// Columns: n,t,q,p,s
void write_trajectory_csv(const std::string& file, const Trajectory& traj);

/// Columns: n,t,dW  (one row per increment)
void write_path_csv(const std::string& file, const BrownianPath& path);

/// Columns: t,lambda,lambda_ref,r_p,r_q  with lambda_ref = e^{−γt}.
void write_contact_csv(const std::string& file,
                       const std::vector<ContactReport>& rows, double gamma);

/// Columns: h,ms_standard,ms_sumsq,n_excluded followed by a comment line
/// carrying the fitted slope/intercept and the path count.
void write_convergence_csv(const std::string& file,
                           const ConvergenceReport& rep);

/// Columns: n,t,x,y,z,sx,sy,sz,disc,q,p,s (disc empty on the initial row).
void write_hj_trace_csv(const std::string& file, const HJTrace& trace);

struct CompareRow {
    std::string scheme;
    double h = 0.0;
    int n_paths = 0;
    int n_excluded = 0;
    double median_error = 0.0;
    double mean_error = 0.0;
    double max_error = 0.0;
};

/// Columns: scheme,h,n_paths,n_excluded,median_error,mean_error,max_error
void write_compare_csv(const std::string& file,
                       const std::vector<CompareRow>& rows);

/// Merged per-time comparison: column t, then q_<tag>,p_<tag>,s_<tag> per
/// labeled trajectory. All trajectories must share the same time grid.
void write_comparison_csv(
    const std::string& file, const std::vector<double>& times,
    const std::vector<std::pair<std::string, const Trajectory*>>& labeled);

struct ManifestScheme {
    std::string name;
    std::string status;  ///< "ok" or the failure description
};

struct Manifest {
    std::string command;
    ExperimentConfig config;
    std::vector<ManifestScheme> schemes;
    std::vector<std::string> outputs;
};

/// JSON run manifest: canonical config (as key/value strings), its hash,
/// the noise-generator identity, per-scheme status, and the artifact list.
/// Deliberately timestamp-free so reruns are byte-identical.
void write_manifest(const std::string& file, const Manifest& m);

}  // namespace scint
