#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tissuefit/dataset.hpp"

namespace tissuefit {

struct ParamBounds {
    std::string name;
    double lo = 0.0;
    double hi = 1.0;
    bool log_scale = false;  // sample/refine in log10 coordinates
};

// One identification task: a model, the tissue fiber angle, one or two
// experimental curves and the search domain. Weights over the curves are free
// (summing to one) unless fixed.
struct FitProblem {
    ModelKind kind = ModelKind::NeoHooke;
    double phi = 0.0;  // radians, fixed tissue property
    std::vector<Dataset> data;
    std::vector<ParamBounds> bounds;                 // free parameters
    std::map<std::string, double> fixed;             // pinned parameters
    bool fix_weights = false;
    double w1 = 0.5;  // weight of data[0] when fix_weights
    int quad_order = 32;
    bool dbb_cutoff = false;

    // Mean fiber angle is normally a measured tissue property; this override
    // adds it to the search instead.
    bool fit_phi = false;
    double phi_lo = 0.0;
    double phi_hi = 1.5707963267948966;  // pi/2

    // bounds default to the model schema; log sampling kicks in for wide
    // strictly-positive ranges
    static FitProblem for_model(ModelKind kind, double phi_rad, std::vector<Dataset> data);
    ModelSpec spec_from(const std::vector<double>& values) const;  // free values in bounds order
};

struct GAConfig {
    int population = 60;
    int generations = 80;
    double crossover = 0.9;
    double mutation_rate = 0.25;
    double mutation_scale = 0.10;  // in normalized genome units
    int elites = 2;
    int tournament = 2;
    int refine_top = 5;  // candidates passed to the gradient stage
    std::uint64_t seed = 1;
};

struct RefineConfig {
    int max_iters = 400;
    double grad_tol = 1e-8;   // projected gradient infinity norm
    double cost_tol = 1e-12;  // minimal accepted decrease
    double fd_step = 1e-6;    // central difference step in normalized coords
};

struct FitResult {
    ModelSpec model;
    std::vector<double> weights;       // per curve, sum 1
    std::vector<double> curve_errors;  // unweighted squared-residual sums E_k
    double cost_weighted = 0.0;        // sum w_k E_k (the optimized objective)
    double cost_unweighted = 0.0;      // sum E_k
    double kkt_residual = 0.0;
    std::vector<double> bound_multipliers;  // >= 0, per free coordinate
    bool converged = false;
    std::vector<double> ga_trace;      // best cost per generation (nonincreasing)
    std::vector<double> refine_trace;  // accepted costs (nonincreasing)
    std::uint64_t seed = 0;
    int cost_evaluations = 0;
};

// Squared-residual error of one curve in nominal stress (MPa).
double curve_error(const ModelSpec& m, const Dataset& ds, const SphereQuadrature* quad = nullptr);

// Weighted total cost; weights must be convex coefficients over data.
double total_cost(const ModelSpec& m, const std::vector<Dataset>& data,
                  const std::vector<double>& weights, const SphereQuadrature* quad = nullptr);

FitResult ga_search(const FitProblem& prob, const GAConfig& cfg);
FitResult gradient_refine(const FitProblem& prob, const FitResult& start,
                          const RefineConfig& cfg);
FitResult hybrid_fit(const FitProblem& prob, const GAConfig& ga = {},
                     const RefineConfig& refine = {});

}  // namespace tissuefit
