#include "tissuefit/quality.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace tissuefit {

double chi_squared(const std::vector<double>& model, const std::vector<double>& exp,
                   int* excluded) {
    if (model.size() != exp.size())
        throw std::invalid_argument("chi_squared: model/experiment size mismatch");
    double acc = 0.0;
    int skipped = 0;
    for (size_t i = 0; i < exp.size(); ++i) {
        if (!(exp[i] > kChi2Guard)) {
            ++skipped;
            continue;
        }
        const double d = model[i] - exp[i];
        acc += d * d / exp[i];
    }
    if (excluded) *excluded = skipped;
    return acc;
}

std::array<std::pair<double, double>, 3> regional_ranges(double lambda_max) {
    if (!(lambda_max > 1.0))
        throw std::invalid_argument("regional_ranges: lambda_max must exceed 1");
    std::array<std::pair<double, double>, 3> r;
    for (int k = 1; k <= 3; ++k) r[k - 1] = {1.0, 1.0 + k / 3.0 * (lambda_max - 1.0)};
    return r;
}

QualityReport evaluate_quality(const ModelSpec& m, const std::vector<Dataset>& data,
                               const SphereQuadrature* quad) {
    QualityReport rep;
    for (const auto& ds : data) {
        CurveQuality cq;
        cq.label = ds.direction + "/" + mode_name(ds.mode);
        cq.lambda_max = ds.lambda_max();
        const auto ranges = regional_ranges(cq.lambda_max);
        const auto exp_pts = ds.nominal_points();
        const int comp = ds.component();
        std::vector<double> model_vals(exp_pts.size());
        for (size_t i = 0; i < exp_pts.size(); ++i) {
            const StressResult sr = nominal_stress(m, {ds.mode, exp_pts[i].lambda}, quad);
            model_vals[i] = comp == 1 ? sr.P1 : sr.P2;
        }
        for (int k = 0; k < 3; ++k) {
            std::vector<double> mv, ev;
            for (size_t i = 0; i < exp_pts.size(); ++i)
                if (exp_pts[i].lambda <= ranges[k].second + 1e-12) {
                    mv.push_back(model_vals[i]);
                    ev.push_back(exp_pts[i].stress);
                }
            int excl = 0;
            cq.chi2_region[k] = chi_squared(mv, ev, &excl);
            if (k == 2) cq.excluded = excl;
        }
        rep.curves.push_back(cq);
    }
    for (const auto& c : rep.curves) {
        for (int k = 0; k < 3; ++k) rep.chi2_region[k] += c.chi2_region[k];
        rep.excluded += c.excluded;
    }
    rep.chi2_total = rep.chi2_region[2];
    return rep;
}

std::vector<RankEntry> rank_models(std::vector<RankEntry> entries) {
    std::stable_sort(entries.begin(), entries.end(), [](const RankEntry& a, const RankEntry& b) {
        if (a.chi2 != b.chi2) return a.chi2 < b.chi2;
        if (a.nop != b.nop) return a.nop < b.nop;
        return std::strcmp(model_name(a.kind), model_name(b.kind)) < 0;
    });
    return entries;
}

}  // namespace tissuefit
