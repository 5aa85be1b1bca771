#include "tissuefit/report.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "tissuefit/dispersion.hpp"

namespace tissuefit {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

double snap(double v) { return std::round(v * 1e9) / 1e9; }

nlohmann::ordered_json params_json(const ModelSpec& m) {
    nlohmann::ordered_json out;
    const auto schema = param_schema(m.kind);
    for (size_t i = 0; i < schema.size(); ++i) out[schema[i].name] = m.params[i];
    return out;
}

nlohmann::ordered_json quality_json(const QualityReport& q) {
    nlohmann::ordered_json out;
    out["chi2_regions"] = q.chi2_region;
    out["chi2_total"] = q.chi2_total;
    out["excluded_points"] = q.excluded;
    out["curves"] = nlohmann::ordered_json::array();
    for (const auto& c : q.curves) {
        nlohmann::ordered_json jc;
        jc["label"] = c.label;
        jc["lambda_max"] = c.lambda_max;
        jc["chi2_regions"] = c.chi2_region;
        jc["excluded_points"] = c.excluded;
        out["curves"].push_back(jc);
    }
    return out;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string config_hash(const RunConfig& cfg) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(canonical_config(cfg));
    return os.str();
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fit_report_json(const FitResult& fit, const QualityReport& quality,
                            const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["model"] = model_name(fit.model.kind);
    j["formulation"] = formulation_tag(fit.model.kind);
    j["phi_deg"] = snap(fit.model.fibers.phi * kRadToDeg);
    j["parameters"] = params_json(fit.model);
    j["weights"] = fit.weights;
    j["curve_errors"] = fit.curve_errors;
    j["cost_weighted"] = fit.cost_weighted;
    j["cost_unweighted"] = fit.cost_unweighted;
    j["kkt_residual"] = fit.kkt_residual;
    j["bound_multipliers"] = fit.bound_multipliers;
    j["converged"] = fit.converged;
    j["cost_evaluations"] = fit.cost_evaluations;
    j["seed"] = fit.seed;
    j["quad_order"] = cfg.quad_order;
    j["config_hash"] = config_hash(cfg);
    j["quality"] = quality_json(quality);
    j["ga_trace"] = fit.ga_trace;
    j["refine_trace"] = fit.refine_trace;
    return j.dump(2) + "\n";
}

std::string fit_report_text(const FitResult& fit, const QualityReport& quality,
                            const RunConfig& cfg, double runtime_seconds) {
    std::ostringstream os;
    os << "model        " << model_name(fit.model.kind) << " ("
       << formulation_tag(fit.model.kind) << ")\n";
    os << "phi [deg]    " << format_double(snap(fit.model.fibers.phi * kRadToDeg)) << "\n";
    os << "seed         " << fit.seed << "\n";
    os << "config hash  " << config_hash(cfg) << "\n";
    os << "runtime [s]  " << std::fixed << std::setprecision(2) << runtime_seconds << "\n\n";
    os.unsetf(std::ios::fixed);

    const auto schema = param_schema(fit.model.kind);
    os << std::left << std::setw(12) << "parameter" << "value\n";
    for (size_t i = 0; i < schema.size(); ++i)
        os << std::left << std::setw(12) << schema[i].name << format_double(fit.model.params[i])
           << "\n";
    os << "\n";

    os << std::left << std::setw(24) << "curve" << std::setw(24) << "weight" << std::setw(24)
       << "error E_k" << "chi2 (r1, r2, r3)\n";
    for (size_t k = 0; k < quality.curves.size(); ++k) {
        const auto& c = quality.curves[k];
        const double w = k < fit.weights.size() ? fit.weights[k] : 0.0;
        const double e = k < fit.curve_errors.size() ? fit.curve_errors[k] : 0.0;
        os << std::left << std::setw(24) << c.label << std::setw(23) << format_double(w) << ' '
           << std::setw(23) << format_double(e) << ' ' << format_double(c.chi2_region[0]) << ", "
           << format_double(c.chi2_region[1]) << ", " << format_double(c.chi2_region[2]) << "\n";
    }
    os << "\n";
    os << "cost (weighted)    " << format_double(fit.cost_weighted) << "\n";
    os << "cost (unweighted)  " << format_double(fit.cost_unweighted) << "\n";
    os << "chi2 regions       " << format_double(quality.chi2_region[0]) << ", "
       << format_double(quality.chi2_region[1]) << ", " << format_double(quality.chi2_region[2])
       << "\n";
    os << "chi2 total         " << format_double(quality.chi2_total) << "\n";
    if (quality.excluded > 0)
        os << "excluded points    " << quality.excluded << " (experimental stress <= "
           << format_double(kChi2Guard) << " MPa)\n";
    os << "kkt residual       " << format_double(fit.kkt_residual) << "\n";
    os << "converged          " << (fit.converged ? "yes" : "no") << "\n";
    os << "cost evaluations   " << fit.cost_evaluations << "\n";
    return os.str();
}

std::string failure_report_json(ModelKind kind, const std::string& error, const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["model"] = model_name(kind);
    j["formulation"] = formulation_tag(kind);
    j["error"] = error;
    j["seed"] = cfg.seed;
    j["config_hash"] = config_hash(cfg);
    return j.dump(2) + "\n";
}

std::string fitted_curves_csv(const ModelSpec& m, const std::vector<Dataset>& data,
                              const SphereQuadrature* quad) {
    std::ostringstream os;
    os << "lambda,stress_exp,stress_fit,direction,mode\n";
    for (const auto& ds : data) {
        std::vector<double> lam;
        const auto pts = ds.nominal_points();
        for (const auto& p : pts) lam.push_back(p.lambda);
        const auto fitv = nominal_stress_curve(m, ds.mode, ds.component(), lam, quad);
        for (size_t i = 0; i < pts.size(); ++i)
            os << format_double(pts[i].lambda) << "," << format_double(pts[i].stress) << ","
               << format_double(fitv[i]) << "," << ds.direction << "," << mode_name(ds.mode)
               << "\n";
    }
    return os.str();
}

std::string ranking_csv(const std::vector<RankEntry>& table) {
    std::ostringstream os;
    os << "rank,model,type,chi2,nop\n";
    for (size_t i = 0; i < table.size(); ++i)
        os << i + 1 << "," << model_name(table[i].kind) << ","
           << formulation_tag(table[i].kind) << ","
           << format_double(table[i].chi2) << "," << table[i].nop << "\n";
    return os.str();
}

std::string polar_ds_csv(const ModelSpec& m, const SphereQuadrature* quad) {
    const auto curve = directional_stiffness(m, 361, quad);
    std::ostringstream os;
    os << "alpha_deg,ds\n";
    for (const auto& [alpha, ds] : curve)
        os << format_double(snap(alpha * kRadToDeg)) << "," << format_double(ds) << "\n";
    return os.str();
}

bool has_density(ModelKind kind) {
    switch (kind) {
        case ModelKind::GOH:
        case ModelKind::HNORS:
        case ModelKind::AMDM:
        case ModelKind::ASMD:
        case ModelKind::DBB:
            return true;
        default:
            return false;
    }
}

std::string polar_density_csv(const ModelSpec& m, const SphereQuadrature* quad) {
    if (!has_density(m.kind))
        throw std::invalid_argument(std::string("model ") + model_name(m.kind) +
                                    " has no orientation density");
    const SphereQuadrature& q = quad ? *quad : default_quadrature();

    // in-plane angular density at alpha, averaged over the fiber families
    std::function<double(double)> rho;
    switch (m.kind) {
        case ModelKind::GOH: {
            const VonMisesPlanar vm(b_from_kappa(m.params[3]));
            const double phi = m.fibers.phi;
            rho = [vm, phi](double a) {
                return 0.5 * (vm.density_angle(a - phi) + vm.density_angle(a + phi));
            };
            break;
        }
        case ModelKind::HNORS: {
            const double a_ip = a_from_kappa_ip(m.params[3]);
            const double phi = m.fibers.phi;
            rho = [a_ip, phi](double a) {
                return 0.5 * (vm_inplane_density(a_ip, a - phi) +
                              vm_inplane_density(a_ip, a + phi));
            };
            break;
        }
        case ModelKind::AMDM: {
            const VonMisesPlanar vm(m.params[3]);
            const double phi = m.fibers.phi;
            rho = [vm, phi](double a) {
                return 0.5 * (vm.density_angle(a - phi) + vm.density_angle(a + phi));
            };
            break;
        }
        case ModelKind::ASMD: {
            const Eigen::Vector3d kappa(m.params[3], m.params[4], m.params[5]);
            std::vector<BinghamDistribution> fams;
            for (const Eigen::Vector3d& M : {m.fibers.M1, m.fibers.M2}) {
                Eigen::Matrix3d Q;
                Q.col(0) = m.fibers.Mn.cross(M);
                Q.col(1) = M;
                Q.col(2) = m.fibers.Mn;
                fams.push_back(BinghamDistribution::make(kappa, Q, q));
            }
            rho = [fams](double a) {
                const Eigen::Vector3d r(std::cos(a), std::sin(a), 0.0);
                return 0.5 * (fams[0].density(r) + fams[1].density(r));
            };
            break;
        }
        case ModelKind::DBB: {
            const PlanarGaussian g = PlanarGaussian::make(m.params[3], m.fibers.phi, m.params[4]);
            rho = [g](double a) { return g.volume_fraction_angle(a); };
            break;
        }
        default:
            break;
    }

    std::ostringstream os;
    os << "alpha_deg,density\n";
    for (int deg = 0; deg <= 360; ++deg) {
        const double a = deg * std::numbers::pi / 180.0;
        os << deg << "," << format_double(rho(a)) << "\n";
    }
    return os.str();
}

}  // namespace tissuefit
