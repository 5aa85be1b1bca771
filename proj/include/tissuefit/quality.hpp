#pragma once

#include <array>
#include <string>
#include <vector>

#include "tissuefit/dataset.hpp"

namespace tissuefit {

// Denominator guard for the normalized error measure; experimental nominal
// stresses at or below this (MPa) are excluded from chi^2 and counted.
inline constexpr double kChi2Guard = 1e-9;

// chi^2 = sum (P_model - P_exp)^2 / P_exp over aligned samples (nominal MPa).
double chi_squared(const std::vector<double>& model, const std::vector<double>& exp,
                   int* excluded = nullptr);

// Cumulative stretch windows [1, 1 + (k/3)(lambda_max - 1)], k = 1..3.
std::array<std::pair<double, double>, 3> regional_ranges(double lambda_max);

struct CurveQuality {
    std::string label;  // direction/mode
    double lambda_max = 1.0;
    std::array<double, 3> chi2_region{};  // region 3 covers the full curve
    int excluded = 0;
};

struct QualityReport {
    std::vector<CurveQuality> curves;
    std::array<double, 3> chi2_region{};  // summed over curves
    double chi2_total = 0.0;              // full-range total (== region 3)
    int excluded = 0;
};

QualityReport evaluate_quality(const ModelSpec& m, const std::vector<Dataset>& data,
                               const SphereQuadrature* quad = nullptr);

struct RankEntry {
    ModelKind kind = ModelKind::NeoHooke;
    double chi2 = 0.0;
    int nop = 0;  // number of material parameters (tie-break)
};

// Ascending chi^2; ties broken by parameter count, then model name.
std::vector<RankEntry> rank_models(std::vector<RankEntry> entries);

}  // namespace tissuefit
