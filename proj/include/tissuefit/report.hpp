#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tissuefit/config.hpp"
#include "tissuefit/optimize.hpp"
#include "tissuefit/quality.hpp"
#include "tissuefit/stress.hpp"

namespace tissuefit {

std::uint64_t fnv1a64(std::string_view data);

// Hash of the canonical config dump, embedded in every report so a run can be
// replayed from its outputs.
std::string config_hash(const RunConfig& cfg);

// Machine report. Deliberately excludes wall-clock time so identical runs
// produce identical bytes; the human report carries the runtime instead.
std::string fit_report_json(const FitResult& fit, const QualityReport& quality,
                            const RunConfig& cfg);
std::string fit_report_text(const FitResult& fit, const QualityReport& quality,
                            const RunConfig& cfg, double runtime_seconds);

// Entry for a model whose fit aborted; keeps the ranking run going.
std::string failure_report_json(ModelKind kind, const std::string& error, const RunConfig& cfg);

std::string fitted_curves_csv(const ModelSpec& m, const std::vector<Dataset>& data,
                              const SphereQuadrature* quad = nullptr);
std::string ranking_csv(const std::vector<RankEntry>& table);

// Directional stiffness over a 1-degree polar grid.
std::string polar_ds_csv(const ModelSpec& m, const SphereQuadrature* quad = nullptr);

// Angular fiber density (volume fraction for the mixture model) over the same
// grid; only meaningful for the dispersion models.
bool has_density(ModelKind kind);
std::string polar_density_csv(const ModelSpec& m, const SphereQuadrature* quad = nullptr);

// Shortest round-trip decimal form; shared by all CSV writers.
std::string format_double(double v);

}  // namespace tissuefit
