// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
// (SKIP when its input data is absent) and the process exits nonzero if any
// criterion fails. Tolerances and budgets are pinned here on purpose.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tissuefit/config.hpp"
#include "tissuefit/dispersion.hpp"
#include "tissuefit/optimize.hpp"
#include "tissuefit/quality.hpp"
#include "tissuefit/report.hpp"
#include "tissuefit/rng.hpp"

using namespace tissuefit;

namespace {

constexpr double kPhi26 = 26.0 * std::numbers::pi / 180.0;

int g_failures = 0;

class Criterion {
  public:
    Criterion(std::string id, std::string title, double budget_s)
        : id_(std::move(id)), title_(std::move(title)), budget_(budget_s),
          start_(std::chrono::steady_clock::now()) {}

    void check(bool ok, const std::string& detail) {
        if (!ok && failure_.empty()) failure_ = detail;
    }

    void finish() {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        if (budget_ > 0.0 && secs > budget_ && failure_.empty()) {
            std::ostringstream os;
            os << "exceeded " << budget_ << " s budget (" << secs << " s)";
            failure_ = os.str();
        }
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        if (failure_.empty()) {
            line << "[PASS] " << id_ << " " << title_ << " (" << secs << " s)";
        } else {
            line << "[FAIL] " << id_ << " " << title_ << ": " << failure_ << " (" << secs
                 << " s)";
            ++g_failures;
        }
        std::cout << line.str() << "\n";
    }

    void skip(const std::string& reason) {
        std::cout << "[SKIP] " << id_ << " " << title_ << ": " << reason << "\n";
        skipped_ = true;
    }

    bool skipped() const { return skipped_; }

  private:
    std::string id_, title_, failure_;
    double budget_;
    bool skipped_ = false;
    std::chrono::steady_clock::time_point start_;
};

ModelSpec spec(ModelKind kind, std::initializer_list<std::pair<const char*, double>> ps,
               double phi) {
    std::map<std::string, double> named;
    for (const auto& [k, v] : ps) named[k] = v;
    return ModelSpec::make(kind, named, phi);
}

ModelSpec aaa_spec(ModelKind kind) {
    switch (kind) {
        case ModelKind::NY:
            return spec(kind, {{"k0", 0.1148}, {"k1", 31.1439}, {"k2", 1523.0}}, kPhi26);
        case ModelKind::HGO:
            return spec(kind, {{"mu", 2.6712}, {"k1", 0.1742}, {"k2", 55.9001}}, kPhi26);
        case ModelKind::HSGR:
            return spec(kind, {{"mu", 0.9347}, {"k1", 0.2704}, {"k2", 47.0232}, {"p", 0.9126}},
                        kPhi26);
        case ModelKind::OS:
            return spec(kind, {{"mu", 2.5537}, {"k1", 3.38107}, {"Jf", 0.1149}, {"Jm", 0.2369}},
                        kPhi26);
        case ModelKind::GOH:
            return spec(kind, {{"mu", 1.7416}, {"k1", 4.4460}, {"k2", 161.3920},
                               {"kappa", 0.2256}},
                        kPhi26);
        case ModelKind::HNORS:
            return spec(kind, {{"mu", 1.8517}, {"k1", 0.6981}, {"k2", 59.9093},
                               {"kappa_ip", 0.7657}, {"kappa_op", 0.47}},
                        kPhi26);
        case ModelKind::AMDM:
            return spec(kind, {{"mu", 0.9337}, {"k1", 0.9118}, {"k2", 46.8474}, {"b", 3.67}},
                        kPhi26);
        case ModelKind::ASMD:
            return spec(kind, {{"mu", 0.6517}, {"k1", 3.5475}, {"k2", 46.4817},
                               {"kappa1", 2.3798e-07}, {"kappa2", 0.9}, {"kappa3", 0.0}},
                        kPhi26);
        case ModelKind::DBB:
            return spec(kind, {{"mu", 2.1366}, {"k1", 3.1017}, {"k2", 46.8793},
                               {"sigma", 0.2597}, {"v_tot", 0.7}},
                        kPhi26);
        default:
            return spec(ModelKind::NeoHooke, {{"mu", 1.0}}, kPhi26);
    }
}

ModelSpec draw_model(ModelKind kind, Rng& rng, double phi) {
    switch (kind) {
        case ModelKind::NeoHooke:
            return spec(kind, {{"mu", rng.uniform(0.1, 5.0)}}, phi);
        case ModelKind::NY:
            return spec(kind, {{"k0", rng.uniform(0.1, 1.0)}, {"k1", rng.uniform(1.0, 40.0)},
                               {"k2", rng.uniform(100.0, 1600.0)}},
                        phi);
        case ModelKind::HGO:
            return spec(kind, {{"mu", rng.uniform(0.1, 5.0)}, {"k1", rng.uniform(0.05, 5.0)},
                               {"k2", rng.uniform(1.0, 100.0)}},
                        phi);
        case ModelKind::HSGR:
            return spec(kind, {{"mu", rng.uniform(0.1, 5.0)}, {"k1", rng.uniform(0.05, 5.0)},
                               {"k2", rng.uniform(1.0, 100.0)}, {"p", rng.uniform(0.05, 0.95)}},
                        phi);
        case ModelKind::OS:
            return spec(kind, {{"mu", rng.uniform(0.1, 5.0)}, {"k1", rng.uniform(0.05, 5.0)},
                               {"Jf", rng.uniform(0.3, 2.0)}, {"Jm", rng.uniform(0.5, 2.0)}},
                        phi);
        case ModelKind::GOH:
            return spec(kind, {{"mu", rng.uniform(0.1, 5.0)}, {"k1", rng.uniform(0.05, 5.0)},
                               {"k2", rng.uniform(1.0, 100.0)},
                               {"kappa", rng.uniform(0.0, 1.0 / 3.0)}},
                        phi);
        case ModelKind::HNORS:
            return spec(kind, {{"mu", rng.uniform(0.1, 5.0)}, {"k1", rng.uniform(0.05, 5.0)},
                               {"k2", rng.uniform(1.0, 100.0)},
                               {"kappa_ip", rng.uniform(0.05, 0.95)},
                               {"kappa_op", rng.uniform(0.05, 0.45)}},
                        phi);
        case ModelKind::AMDM:
            return spec(kind, {{"mu", rng.uniform(0.1, 5.0)}, {"k1", rng.uniform(0.05, 5.0)},
                               {"k2", rng.uniform(1.0, 100.0)}, {"b", rng.uniform(0.5, 8.0)}},
                        phi);
        case ModelKind::ASMD:
            return spec(kind, {{"mu", rng.uniform(0.1, 5.0)}, {"k1", rng.uniform(0.05, 5.0)},
                               {"k2", rng.uniform(1.0, 100.0)},
                               {"kappa1", rng.uniform(0.0, 4.0)},
                               {"kappa2", rng.uniform(0.0, 4.0)},
                               {"kappa3", rng.uniform(0.0, 2.0)}},
                        phi);
        default:
            return spec(ModelKind::DBB,
                        {{"mu", rng.uniform(0.1, 5.0)}, {"k1", rng.uniform(0.05, 5.0)},
                         {"k2", rng.uniform(1.0, 100.0)}, {"sigma", rng.uniform(0.2, 1.0)},
                         {"v_tot", rng.uniform(0.3, 0.9)}},
                        phi);
    }
}

// keep finite-difference probes away from the fiber activation kinks
bool away_from_kinks(const ModelSpec& m, const DeformationState& s) {
    const Formulation f = formulation_of(m.kind);
    if (f == Formulation::Invariant) {
        const auto inv = invariants(s, m.fibers);
        return std::abs(inv.I4 - 1.0) > 1e-3 && std::abs(inv.I6 - 1.0) > 1e-3;
    }
    if (f == Formulation::GST) {
        const Eigen::Matrix3d F = deformation_gradient(s);
        const auto e = gst_eval(m, F.transpose() * F);
        return std::abs(e.fam[0].E) > 1e-3 && std::abs(e.fam[1].E) > 1e-3;
    }
    return true;
}

void criterion_a1() {
    Criterion c("A1", "stresses are work conjugate to the energy", 30.0);
    try {
        const double kPhis[] = {0.0, kPhi26, 45.0 * std::numbers::pi / 180.0};
        Rng rng(101);
        double worst = 0.0;
        std::string worst_at;
        for (ModelKind kind : all_models()) {
            for (Mode mode : {Mode::UT1, Mode::ET}) {
                for (int draw = 0; draw < 20; ++draw) {
                    ModelSpec m;
                    DeformationState s{mode, 1.1};
                    bool ok = false;
                    for (int attempt = 0; attempt < 500 && !ok; ++attempt) {
                        m = draw_model(kind, rng, kPhis[draw % 3]);
                        s.lambda = rng.uniform(1.02, 1.15);
                        ok = away_from_kinks(m, s);
                    }
                    if (!ok) {
                        c.check(false, std::string("no admissible draw for ") +
                                           model_name(kind));
                        continue;
                    }
                    const double h = 1e-6 * s.lambda;
                    const double wp = total_energy(m, {mode, s.lambda + h});
                    const double wm = total_energy(m, {mode, s.lambda - h});
                    const double fd = (wp - wm) / (2.0 * h);
                    const auto r = nominal_stress(m, s);
                    const double conj =
                        mode == Mode::ET
                            ? r.P1 + r.P2
                            : r.P1 - 0.5 * std::pow(s.lambda, -1.5) * r.P2;
                    const double rel = std::abs(fd - conj) / std::max(std::abs(fd), 1e-8);
                    if (rel > worst) {
                        worst = rel;
                        std::ostringstream os;
                        os << model_name(kind) << " " << mode_name(mode) << " lambda "
                           << s.lambda;
                        worst_at = os.str();
                    }
                }
            }
        }
        std::ostringstream os;
        os << "worst relative gap " << worst << " at " << worst_at << " (tol 1e-4)";
        c.check(worst <= 1e-4, os.str());
    } catch (const std::exception& e) {
        c.check(false, std::string("exception: ") + e.what());
    }
    c.finish();
}

void criterion_a2() {
    Criterion c("A2", "model family limits recover their parents", 5.0);
    try {
        auto compare = [&](const ModelSpec& a, const ModelSpec& b, const char* label) {
            for (Mode mode : {Mode::UT1, Mode::ET}) {
                for (int i = 0; i <= 20; ++i) {
                    const double lam = 1.0 + 0.2 * i / 20.0;
                    const auto ra = nominal_stress(a, {mode, lam});
                    const auto rb = nominal_stress(b, {mode, lam});
                    for (const auto [pa, pb] :
                         {std::pair{ra.P1, rb.P1}, std::pair{ra.P2, rb.P2}}) {
                        const double tol = 1e-6 * std::max(1.0, std::abs(pb));
                        if (std::abs(pa - pb) > tol) {
                            std::ostringstream os;
                            os << label << " differs at " << mode_name(mode) << " lambda "
                               << lam << " (" << pa << " vs " << pb << ")";
                            c.check(false, os.str());
                            return;
                        }
                    }
                }
            }
        };
        // single-family model with full fiber weight against the two-family
        // model at angle 0, where both families merge
        compare(spec(ModelKind::HSGR,
                     {{"mu", 0.9347}, {"k1", 0.2704}, {"k2", 47.0232}, {"p", 1.0}}, 0.0),
                spec(ModelKind::HGO, {{"mu", 0.9347}, {"k1", 0.2704}, {"k2", 47.0232}}, 0.0),
                "HSGR(p=1) vs HGO at phi=0");
        // zero dispersion collapses the structure tensor onto the fiber axis
        compare(spec(ModelKind::GOH,
                     {{"mu", 2.6712}, {"k1", 0.1742}, {"k2", 55.9001}, {"kappa", 0.0}}, kPhi26),
                spec(ModelKind::HGO, {{"mu", 2.6712}, {"k1", 0.1742}, {"k2", 55.9001}}, kPhi26),
                "GOH(kappa=0) vs HGO");
        // unbounded extensibility and no fiber stiffness leave the matrix
        compare(spec(ModelKind::OS, {{"mu", 2.5537}, {"k1", 0.0}, {"Jf", 1.0}, {"Jm", 1e8}},
                     kPhi26),
                spec(ModelKind::NeoHooke, {{"mu", 2.5537}}, kPhi26),
                "OS(Jm->inf, k1=0) vs neo-Hookean");
    } catch (const std::exception& e) {
        c.check(false, std::string("exception: ") + e.what());
    }
    c.finish();
}

void criterion_a3() {
    Criterion c("A3", "round trip identification recovers generating parameters", 600.0);
    try {
        const ModelSpec truth = aaa_spec(ModelKind::GOH);
        std::vector<Dataset> data{synth_dataset(truth, Mode::ET, 1, 1.2, 20, 0.0, 1234),
                                  synth_dataset(truth, Mode::ET, 2, 1.2, 20, 0.0, 1235)};
        FitProblem prob = FitProblem::for_model(ModelKind::GOH, kPhi26, data);
        prob.bounds = {{"mu", 0.01, 20.0, true},
                       {"k1", 0.01, 100.0, true},
                       {"k2", 1.0, 1000.0, true},
                       {"kappa", 0.0, 1.0 / 3.0, false}};
        GAConfig ga;
        ga.seed = 11;
        const FitResult fit = hybrid_fit(prob, ga, {});
        const QualityReport q = evaluate_quality(fit.model, data);
        {
            std::ostringstream os;
            os << "chi2 " << q.chi2_total << " (tol 1e-6)";
            c.check(q.chi2_total < 1e-6, os.str());
        }
        const auto& schema = param_schema(ModelKind::GOH);
        for (std::size_t i = 0; i < schema.size(); ++i) {
            const double rel =
                std::abs(fit.model.params[i] - truth.params[i]) / std::abs(truth.params[i]);
            std::ostringstream os;
            os << schema[i].name << " recovered " << fit.model.params[i] << " vs "
               << truth.params[i] << " (" << rel * 100.0 << "%, tol 5%)";
            c.check(rel <= 0.05, os.str());
        }
    } catch (const std::exception& e) {
        c.check(false, std::string("exception: ") + e.what());
    }
    c.finish();
}

void criterion_a4() {
    Criterion c("A4", "dispersion measures and angular integration are consistent", 60.0);
    try {
        // scalar dispersion of the planar von Mises family
        c.check(std::abs(kappa_from_b(0.0) - 1.0 / 3.0) < 1e-8, "kappa(0) != 1/3");
        double prev = kappa_from_b(0.0);
        for (double b : {0.5, 1.0, 2.0, 3.67, 5.0, 10.0, 20.0, 100.0}) {
            const double k = kappa_from_b(b);
            c.check(k < prev, "kappa(b) not strictly decreasing");
            prev = k;
        }

        // structure tensors keep unit trace across their parameter domains
        Rng rng(404);
        const auto fib = FiberGeometry::at_angle(kPhi26);
        for (int i = 0; i < 100; ++i) {
            const Eigen::Matrix3d Hg =
                goh_structure_tensor(rng.uniform(0.0, 1.0 / 3.0), fib.M1);
            c.check(std::abs(Hg.trace() - 1.0) < 1e-12, "GOH trace(H) != 1");
            const Eigen::Matrix3d Hh = hnors_structure_tensor(
                rng.uniform(0.0, 1.0), rng.uniform(0.0, 0.5), fib.M1, fib.Mn);
            c.check(std::abs(Hh.trace() - 1.0) < 1e-12, "HNORS trace(H) != 1");
        }

        // every density family integrates to its nominal mass on the sphere
        const SphereQuadrature& quad = default_quadrature();
        auto sphere_avg = [&](auto&& f) {
            double acc = 0.0;
            for (std::size_t i = 0; i < quad.nodes.size(); ++i)
                acc += quad.weights[i] * f(quad.nodes[i]);
            return acc / (4.0 * std::numbers::pi);
        };

        const VonMisesPlanar vm(3.67);
        const double vm_avg = sphere_avg(
            [&](const Eigen::Vector3d& r) { return vm.density(r, fib.M1); });
        c.check(std::abs(vm_avg - 1.0) < 1e-8, "von Mises density not normalized");

        const double a_ip = 1.5, b_op = 2.2;
        const double erf_b = std::erf(std::sqrt(2.0 * b_op));
        const double biv_avg = sphere_avg([&](const Eigen::Vector3d& r) {
            const double rho_ip = vm_inplane_density(a_ip, std::atan2(r(1), r(0)));
            const double rho_op = 2.0 * std::sqrt(2.0 * b_op / std::numbers::pi) *
                                  std::exp(-2.0 * b_op * r(2) * r(2)) / erf_b;
            return rho_ip * rho_op;
        });
        c.check(std::abs(biv_avg - 1.0) < 1e-8, "bivariate density not normalized");

        const auto asmd = aaa_spec(ModelKind::ASMD);
        Eigen::Matrix3d Q;
        Q.col(0) = fib.Mn.cross(fib.M1);
        Q.col(1) = fib.M1;
        Q.col(2) = fib.Mn;
        const auto bing = BinghamDistribution::make(
            Eigen::Vector3d(asmd.params[3], asmd.params[4], asmd.params[5]), Q, quad);
        const double bing_avg =
            sphere_avg([&](const Eigen::Vector3d& r) { return bing.density(r); });
        c.check(std::abs(bing_avg - 1.0) < 1e-8, "Bingham density not normalized");

        // the volume fraction lives on the in-plane circle; its wrapped kinks
        // defeat the uniform azimuth rule, so integrate it adaptively
        for (double sigma : {0.26, 0.5, 1.05}) {
            const auto pg = PlanarGaussian::make(sigma, kPhi26, 0.7);
            const double two_pi = 2.0 * std::numbers::pi;
            const double pg_avg =
                integrate_adaptive([&](double a) { return pg.volume_fraction_angle(a); }, 0.0,
                                   two_pi, 1e-12) /
                two_pi;
            c.check(std::abs(pg_avg - 0.7) < 1e-8,
                    "Gaussian volume fraction does not integrate to v_tot");
        }

        // angular integration stresses are converged at the working order
        const auto& rule = default_quadrature();
        const auto doubled = rule.doubled();
        for (ModelKind kind : {ModelKind::AMDM, ModelKind::ASMD, ModelKind::DBB}) {
            const auto m = aaa_spec(kind);
            for (Mode mode : {Mode::ET, Mode::UT1}) {
                const DeformationState s{mode, 1.1};
                const auto a = nominal_stress_ai(m, s, rule);
                const auto b = nominal_stress_ai(m, s, doubled);
                const double scale = std::max({1e-12, std::abs(b.P1), std::abs(b.P2)});
                const double delta =
                    std::max(std::abs(a.P1 - b.P1), std::abs(a.P2 - b.P2)) / scale;
                std::ostringstream os;
                os << model_name(kind) << " " << mode_name(mode) << " order " << rule.order
                   << " doubling moves P by " << delta;
                c.check(delta < 1e-6, os.str());
            }
        }
    } catch (const std::exception& e) {
        c.check(false, std::string("exception: ") + e.what());
    }
    c.finish();
}

void criterion_a5() {
    Criterion c("A5", "quality measure matches its definition", 5.0);
    try {
        const std::vector<double> model{1.1, 2.2};
        const std::vector<double> exp{1.0, 2.0};
        c.check(std::abs(chi_squared(model, exp) - 0.03) < 1e-12,
                "10% overshoot on stresses 1 and 2 must give 0.03");

        const ModelSpec truth = aaa_spec(ModelKind::GOH);
        Rng rng(505);
        for (int trial = 0; trial < 50; ++trial) {
            ModelSpec off = truth;
            off.params[0] *= rng.uniform(0.6, 1.4);
            off.params[1] *= rng.uniform(0.6, 1.4);
            const Mode mode = rng.integer(2) ? Mode::ET : Mode::UT1;
            const auto ds = synth_dataset(truth, mode, 1, rng.uniform(1.08, 1.25), 15, 0.02,
                                          900 + trial);
            const auto q = evaluate_quality(off, {ds});
            c.check(q.chi2_region[0] <= q.chi2_region[1] + 1e-15 &&
                        q.chi2_region[1] <= q.chi2_region[2] + 1e-15,
                    "regional errors must be cumulative");
            c.check(q.chi2_total == q.chi2_region[2], "total must equal the full-range region");
        }
    } catch (const std::exception& e) {
        c.check(false, std::string("exception: ") + e.what());
    }
    c.finish();
}

void criterion_a6() {
    Criterion c("A6", "digitized abdominal aorta ranking is reproduced", 120.0);
    std::string path = "data/aaa_et.csv";
    if (const char* env = std::getenv("TISSUEFIT_AAA_DATA")) path = env;
    if (!std::filesystem::exists(path)) {
        c.skip("dataset not found (place data/aaa_et.csv or set TISSUEFIT_AAA_DATA); "
               "nothing checked");
        return;
    }
    try {
        const auto data = load_datasets(path);
        const std::vector<ModelKind> kinds{ModelKind::NY,    ModelKind::HGO,
                                           ModelKind::HSGR,  ModelKind::OS,
                                           ModelKind::GOH,   ModelKind::HNORS,
                                           ModelKind::AMDM,  ModelKind::ASMD,
                                           ModelKind::DBB};
        std::vector<RankEntry> entries;
        double chi_hgo = -1.0, chi_hnors = -1.0;
        for (ModelKind kind : kinds) {
            double chi = std::numeric_limits<double>::infinity();
            try {
                chi = evaluate_quality(aaa_spec(kind), data).chi2_total;
            } catch (const SaturationError&) {
                // limited-extensibility model saturates inside the data range;
                // score it last
            }
            if (kind == ModelKind::HGO) chi_hgo = chi;
            if (kind == ModelKind::HNORS) chi_hnors = chi;
            entries.push_back({kind, chi, static_cast<int>(param_schema(kind).size())});
        }
        {
            std::ostringstream os;
            os << "hgo chi2 " << chi_hgo << " vs published 47.4992 (tol 15%)";
            c.check(std::abs(chi_hgo - 47.4992) / 47.4992 <= 0.15, os.str());
        }
        {
            std::ostringstream os;
            os << "hnors chi2 " << chi_hnors << " vs published 2.4368 (tol 15%)";
            c.check(std::abs(chi_hnors - 2.4368) / 2.4368 <= 0.15, os.str());
        }
        const auto ranked = rank_models(entries);
        const std::set<ModelKind> top3{ranked[0].kind, ranked[1].kind, ranked[2].kind};
        const std::set<ModelKind> bottom2{ranked[7].kind, ranked[8].kind};
        c.check(top3 == std::set<ModelKind>{ModelKind::HNORS, ModelKind::HSGR, ModelKind::AMDM},
                "top three models must be hnors, hsgr, amdm");
        c.check(bottom2 == std::set<ModelKind>{ModelKind::OS, ModelKind::HGO},
                "bottom two models must be os and hgo");
    } catch (const std::exception& e) {
        c.check(false, std::string("exception: ") + e.what());
    }
    c.finish();
}

void criterion_a7() {
    Criterion c("A7", "same seed reproduces the identification report byte for byte", 120.0);
    try {
        const ModelSpec truth = aaa_spec(ModelKind::GOH);
        std::vector<Dataset> data{synth_dataset(truth, Mode::ET, 1, 1.2, 20, 0.0, 1234),
                                  synth_dataset(truth, Mode::ET, 2, 1.2, 20, 0.0, 1235)};
        FitProblem prob = FitProblem::for_model(ModelKind::GOH, kPhi26, data);
        prob.bounds = {{"mu", 0.01, 20.0, true},
                       {"k1", 0.01, 100.0, true},
                       {"k2", 1.0, 1000.0, true},
                       {"kappa", 0.0, 1.0 / 3.0, false}};
        GAConfig ga;
        ga.seed = 20;
        RunConfig cfg;
        cfg.models = {ModelKind::GOH};
        cfg.phi_deg = 26.0;
        cfg.seed = ga.seed;
        cfg.ga = ga;

        std::string first;
        for (int run = 0; run < 2; ++run) {
            const FitResult fit = hybrid_fit(prob, ga, {});
            const QualityReport q = evaluate_quality(fit.model, data);
            const std::string json = fit_report_json(fit, q, cfg);
            if (run == 0)
                first = json;
            else
                c.check(json == first, "reports of two same-seed runs differ");
        }
        c.check(!first.empty() && first.back() == '\n', "report must end with a newline");
    } catch (const std::exception& e) {
        c.check(false, std::string("exception: ") + e.what());
    }
    c.finish();
}

}  // namespace

int main() {
    criterion_a1();
    criterion_a2();
    criterion_a3();
    criterion_a4();
    criterion_a5();
    criterion_a6();
    criterion_a7();
    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
