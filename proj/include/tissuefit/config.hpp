#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tissuefit/optimize.hpp"

namespace tissuefit {

// Per-model overrides from a config section named after the model:
//   k1 = 0.17          pins the parameter
//   k2.min / k2.max    tighten the search range
//   k2.log = true      forces log-scale sampling
struct ModelOverrides {
    std::map<std::string, double> fixed;
    std::map<std::string, double> lo, hi;
    std::map<std::string, bool> log_scale;
};

// One runnable job: which models, which data, and how to search. Populated
// from an INI-style file ([run] / [ga] / [refine] / per-model sections) plus
// command-line flags layered on top.
struct RunConfig {
    std::vector<ModelKind> models;
    std::vector<std::string> data_paths;
    double phi_deg = 0.0;
    bool fit_phi = false;
    bool fix_weights = false;
    double w1 = 0.5;
    int quad_order = 32;
    bool dbb_cutoff = false;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    GAConfig ga;
    RefineConfig refine;
    std::map<ModelKind, ModelOverrides> overrides;
};

RunConfig parse_run_config(const std::string& text, const std::string& origin = "<config>");
RunConfig load_run_config(const std::string& path);

// Fit problem for one model under this config; data loaded separately.
FitProblem problem_for(const RunConfig& cfg, ModelKind kind, std::vector<Dataset> data);

// Deterministic flat dump of every setting (sorted keys); backs the report
// hash so a run is replayable from its report alone.
std::string canonical_config(const RunConfig& cfg);

}  // namespace tissuefit
