#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tissuefit/stress.hpp"

namespace tissuefit {

struct DataPoint {
    double lambda = 1.0;
    double stress = 0.0;  // MPa, in the curve's stress kind
};

// One experimental curve: a test mode, a direction label and monotone
// (lambda, stress) samples. Stresses are held in MPa in the kind given in the
// file; nominal_points() converts on demand.
struct Dataset {
    std::string direction;  // axial | circumferential | longitudinal | transverse
    Mode mode = Mode::UT1;
    StressKind kind = StressKind::Nominal;
    std::vector<DataPoint> points;

    double lambda_max() const;
    // which principal nominal stress the curve observes (1 or 2)
    int component() const;
    std::vector<DataPoint> nominal_points() const;
};

// CSV with header lambda,stress,kind,unit,direction,mode. A file may carry
// several curves; they are split by (direction, mode). kPa values are
// converted to MPa on load.
std::vector<Dataset> load_datasets(const std::string& path);
Dataset load_dataset(const std::string& path);  // expects exactly one curve
void save_datasets(const std::string& path, const std::vector<Dataset>& curves);

// Model-generated curve with optional multiplicative Gaussian noise.
Dataset synth_dataset(const ModelSpec& m, Mode mode, int component, double lambda_max,
                      int n_points, double noise_rel, std::uint64_t seed,
                      const SphereQuadrature* quad = nullptr);

}  // namespace tissuefit
