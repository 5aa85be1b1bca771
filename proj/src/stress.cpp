#include "tissuefit/stress.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "tissuefit/dispersion.hpp"

namespace tissuefit {

namespace {

// Angular weight per family: a normalized orientation density for the
// sphere-average models, a volume fraction for the rule-of-mixtures model.
struct AiSetup {
    std::vector<std::function<double(const Eigen::Vector3d&)>> weight;
    bool rule_of_mixtures = false;
};

AiSetup ai_setup(const ModelSpec& m, const SphereQuadrature& quad) {
    AiSetup s;
    switch (m.kind) {
        case ModelKind::AMDM: {
            const VonMisesPlanar vm(m.params[3]);
            for (const Eigen::Vector3d& M : {m.fibers.M1, m.fibers.M2})
                s.weight.push_back([vm, M](const Eigen::Vector3d& r) { return vm.density(r, M); });
            return s;
        }
        case ModelKind::ASMD: {
            const Eigen::Vector3d kappa(m.params[3], m.params[4], m.params[5]);
            for (const Eigen::Vector3d& M : {m.fibers.M1, m.fibers.M2}) {
                Eigen::Matrix3d Q;
                // largest-concentration axis (kappa2 in the identified sets)
                // aligned with the family mean direction
                Q.col(0) = m.fibers.Mn.cross(M);
                Q.col(1) = M;
                Q.col(2) = m.fibers.Mn;
                const BinghamDistribution bing = BinghamDistribution::make(kappa, Q, quad);
                s.weight.push_back(
                    [bing](const Eigen::Vector3d& r) { return bing.density(r); });
            }
            return s;
        }
        case ModelKind::DBB: {
            // a single azimuthal volume-fraction distribution around the mean
            // angle; duplicating it per family would double-count v_tot
            const PlanarGaussian g =
                PlanarGaussian::make(m.params[3], m.fibers.phi, m.params[4]);
            s.weight.push_back(
                [g](const Eigen::Vector3d& r) { return g.volume_fraction(r); });
            s.rule_of_mixtures = true;
            return s;
        }
        default:
            throw std::invalid_argument(std::string("model ") + model_name(m.kind) +
                                        " is not angular-integration based");
    }
}

// Kirchhoff kernel g(lambda_f) with stress contribution g * t x t per unit
// direction. For DBB this carries the matrix-exclusion term evaluated with
// the directional neo-Hookean stress mu(lambda_f^2 - 1), which keeps the
// model hyperelastic.
double ai_kernel(const ModelSpec& m, double lambda_f) {
    if (m.kind == ModelKind::DBB) {
        if (m.dbb_cutoff && lambda_f < 1.0) return 0.0;
        const double mu = m.params[0];
        return (dbb_fiber(m.params[1], m.params[2], lambda_f) -
                mu * (lambda_f * lambda_f - 1.0)) /
               (lambda_f * lambda_f);
    }
    return ai_fiber_force(m, lambda_f) / lambda_f;
}

double ai_energy_kernel(const ModelSpec& m, double lambda_f) {
    if (m.kind == ModelKind::DBB) {
        if (m.dbb_cutoff && lambda_f < 1.0) return 0.0;
        const double mu = m.params[0];
        const double e = lambda_f * lambda_f - 1.0;
        const double excl = mu * (0.5 * e - std::log(lambda_f));
        return ai_fiber_energy(m, lambda_f) - excl;
    }
    return ai_fiber_energy(m, lambda_f);
}

// Fiber Kirchhoff stress on the principal axes, c = diag(C).
Eigen::Vector3d ai_fiber_tau_with(const ModelSpec& m, const AiSetup& setup,
                                  const Eigen::Vector3d& c, const SphereQuadrature& quad) {
    Eigen::Vector3d tau = Eigen::Vector3d::Zero();
    const double inv4pi = 1.0 / (4.0 * std::numbers::pi);
    for (const auto& w_fn : setup.weight) {
        for (size_t i = 0; i < quad.nodes.size(); ++i) {
            const Eigen::Vector3d& r = quad.nodes[i];
            const Eigen::Vector3d t2 = c.cwiseProduct(r.cwiseProduct(r));
            const double lf = std::sqrt(t2.sum());
            const double g = ai_kernel(m, lf);
            if (g == 0.0) continue;
            tau += (quad.weights[i] * inv4pi * w_fn(r) * g) * t2;
        }
    }
    return tau;
}

StressResult finish(const Eigen::Vector3d& lam, Eigen::Vector3d tau) {
    StressResult r;
    r.p = tau(2);  // tau3 = 0 fixes the constraint pressure
    tau.array() -= r.p;
    r.P1 = tau(0) / lam(0);
    r.P2 = tau(1) / lam(1);
    r.P3 = tau(2) / lam(2);
    r.cauchy1 = tau(0);
    r.cauchy2 = tau(1);
    return r;
}

}  // namespace

StressKind stress_kind_from_name(const std::string& s) {
    if (s == "nominal") return StressKind::Nominal;
    if (s == "cauchy") return StressKind::Cauchy;
    throw std::invalid_argument("unknown stress kind '" + s + "' (expected nominal or cauchy)");
}

const char* stress_kind_name(StressKind k) {
    return k == StressKind::Nominal ? "nominal" : "cauchy";
}

StressResult nominal_stress_invariant(const ModelSpec& m, const DeformationState& s) {
    const InvariantSet inv = invariants(s, m.fibers);
    const PsiDerivatives d = invariant_psi(m, inv);
    const Eigen::Vector3d lam = principal_stretches(s);
    const Eigen::Vector3d c = lam.array().square();
    Eigen::Vector3d tau;
    for (int i = 0; i < 3; ++i) {
        const double m1 = m.fibers.M1(i) * m.fibers.M1(i);
        const double m2 = m.fibers.M2(i) * m.fibers.M2(i);
        tau(i) = 2.0 * (d.psi1 + inv.I1 * d.psi2) * c(i) - 2.0 * d.psi2 * c(i) * c(i) +
                 2.0 * d.psi4 * m1 * c(i) + 4.0 * d.psi5 * m1 * c(i) * c(i) +
                 2.0 * d.psi6 * m2 * c(i) + 4.0 * d.psi7 * m2 * c(i) * c(i);
    }
    return finish(lam, tau);
}

StressResult nominal_stress_gst(const ModelSpec& m, const DeformationState& s) {
    const Eigen::Vector3d lam = principal_stretches(s);
    const Eigen::Vector3d c = lam.array().square();
    const GstEval e = gst_eval(m, Eigen::Matrix3d(c.asDiagonal()));
    Eigen::Vector3d tau;
    for (int i = 0; i < 3; ++i) {
        tau(i) = 2.0 * e.psi1 * c(i);
        for (const auto& f : e.fam) tau(i) += 2.0 * f.psi_f * f.H(i, i) * c(i);
    }
    return finish(lam, tau);
}

StressResult nominal_stress_ai(const ModelSpec& m, const DeformationState& s,
                               const SphereQuadrature& quad) {
    const Eigen::Vector3d lam = principal_stretches(s);
    const Eigen::Vector3d c = lam.array().square();
    const double mu = m.params[0];
    Eigen::Vector3d tau = mu * c;  // neo-Hookean matrix; spherical shifts go into p
    tau += ai_fiber_tau_with(m, ai_setup(m, quad), c, quad);
    return finish(lam, tau);
}

std::vector<double> nominal_stress_curve(const ModelSpec& m, Mode mode, int component,
                                         const std::vector<double>& lambdas,
                                         const SphereQuadrature* quad) {
    if (component != 1 && component != 2)
        throw std::invalid_argument("component must be 1 or 2");
    std::vector<double> out;
    out.reserve(lambdas.size());
    if (formulation_of(m.kind) == Formulation::AI) {
        const SphereQuadrature& q = quad ? *quad : default_quadrature();
        const AiSetup setup = ai_setup(m, q);
        const double mu = m.params[0];
        for (const double lam : lambdas) {
            const Eigen::Vector3d ls = principal_stretches({mode, lam});
            const Eigen::Vector3d c = ls.array().square();
            Eigen::Vector3d tau = mu * c;
            tau += ai_fiber_tau_with(m, setup, c, q);
            const StressResult r = finish(ls, tau);
            out.push_back(component == 1 ? r.P1 : r.P2);
        }
        return out;
    }
    for (const double lam : lambdas) {
        const StressResult r = nominal_stress(m, {mode, lam}, quad);
        out.push_back(component == 1 ? r.P1 : r.P2);
    }
    return out;
}

StressResult nominal_stress_ai_checked(const ModelSpec& m, const DeformationState& s,
                                       const SphereQuadrature& quad) {
    const StressResult a = nominal_stress_ai(m, s, quad);
    const StressResult b = nominal_stress_ai(m, s, quad.doubled());
    const double scale = std::max({1e-12, std::abs(b.P1), std::abs(b.P2)});
    const double delta = std::max(std::abs(a.P1 - b.P1), std::abs(a.P2 - b.P2));
    if (delta > 1e-6 * scale) {
        std::ostringstream os;
        os << "sphere quadrature not converged for " << model_name(m.kind) << " at order "
           << quad.order << " (" << mode_name(s.mode) << ", lambda = " << s.lambda
           << "): doubling moves P by " << delta / scale << " relative";
        throw NumericError(os.str());
    }
    return a;
}

StressResult nominal_stress(const ModelSpec& m, const DeformationState& s,
                            const SphereQuadrature* quad) {
    switch (formulation_of(m.kind)) {
        case Formulation::Invariant: return nominal_stress_invariant(m, s);
        case Formulation::GST: return nominal_stress_gst(m, s);
        case Formulation::AI:
            return nominal_stress_ai(m, s, quad ? *quad : default_quadrature());
    }
    throw std::logic_error("unreachable");
}

double solve_pressure(const ModelSpec& m, const DeformationState& s,
                      const SphereQuadrature* quad) {
    return nominal_stress(m, s, quad).p;
}

double convert_stress(double value, StressKind from, StressKind to, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("stretch must be positive");
    if (from == to) return value;
    return from == StressKind::Nominal ? value * lambda : value / lambda;
}

double total_energy(const ModelSpec& m, const DeformationState& s, const SphereQuadrature* quad) {
    switch (formulation_of(m.kind)) {
        case Formulation::Invariant: return invariant_energy(m, invariants(s, m.fibers));
        case Formulation::GST: {
            const Eigen::Vector3d c = principal_stretches(s).array().square();
            return gst_energy(m, Eigen::Matrix3d(c.asDiagonal()));
        }
        case Formulation::AI: {
            const SphereQuadrature& q = quad ? *quad : default_quadrature();
            const Eigen::Vector3d c = principal_stretches(s).array().square();
            const double mu = m.params[0];
            double W = 0.5 * mu * (c.sum() - 3.0);
            const AiSetup setup = ai_setup(m, q);
            const double inv4pi = 1.0 / (4.0 * std::numbers::pi);
            for (const auto& w_fn : setup.weight)
                for (size_t i = 0; i < q.nodes.size(); ++i) {
                    const Eigen::Vector3d& r = q.nodes[i];
                    const double lf =
                        std::sqrt(c.dot(Eigen::Vector3d(r.cwiseProduct(r))));
                    W += q.weights[i] * inv4pi * w_fn(r) * ai_energy_kernel(m, lf);
                }
            return W;
        }
    }
    throw std::logic_error("unreachable");
}

Eigen::Matrix3d anisotropic_pk2(const ModelSpec& m, const Eigen::Matrix3d& C,
                                const SphereQuadrature* quad) {
    switch (formulation_of(m.kind)) {
        case Formulation::Invariant: {
            const InvariantSet inv = invariants_from_C(C, m.fibers);
            const PsiDerivatives d = invariant_psi(m, inv);
            const Eigen::Matrix3d A1 = m.fibers.M1 * m.fibers.M1.transpose();
            const Eigen::Matrix3d A2 = m.fibers.M2 * m.fibers.M2.transpose();
            Eigen::Matrix3d S = 2.0 * d.psi4 * A1 + 2.0 * d.psi6 * A2;
            switch (m.kind) {
                case ModelKind::NeoHooke: return Eigen::Matrix3d::Zero();
                case ModelKind::NY:
                    // no isotropic/anisotropic split; the whole energy counts
                    S += 2.0 * d.psi1 * Eigen::Matrix3d::Identity();
                    break;
                case ModelKind::HSGR:
                    // the exponential term also carries an I1 contribution
                    S += 2.0 * (d.psi1 - 0.5 * m.params[0]) * Eigen::Matrix3d::Identity();
                    break;
                default: break;  // HGO, OS: fiber terms only
            }
            return S;
        }
        case Formulation::GST: {
            const GstEval e = gst_eval(m, C);
            Eigen::Matrix3d S = Eigen::Matrix3d::Zero();
            for (const auto& f : e.fam) S += 2.0 * f.psi_f * f.H;
            return S;
        }
        case Formulation::AI: {
            const SphereQuadrature& q = quad ? *quad : default_quadrature();
            const AiSetup setup = ai_setup(m, q);
            Eigen::Matrix3d S = Eigen::Matrix3d::Zero();
            const double inv4pi = 1.0 / (4.0 * std::numbers::pi);
            for (const auto& w_fn : setup.weight)
                for (size_t i = 0; i < q.nodes.size(); ++i) {
                    const Eigen::Vector3d& r = q.nodes[i];
                    const double lf = std::sqrt(r.dot(C * r));
                    const double g = ai_kernel(m, lf);
                    if (g == 0.0) continue;
                    S += (q.weights[i] * inv4pi * w_fn(r) * g) * (r * r.transpose());
                }
            return S;
        }
    }
    throw std::logic_error("unreachable");
}

std::vector<std::pair<double, double>> directional_stiffness(const ModelSpec& m, int n_alpha,
                                                             const SphereQuadrature* quad) {
    if (n_alpha < 2) throw std::invalid_argument("need at least 2 polar samples");
    std::vector<std::pair<double, double>> out;
    out.reserve(n_alpha);
    const double k1 = m.params.size() > 1 ? m.params[1] : 0.0;
    for (int ia = 0; ia < n_alpha; ++ia) {
        const double alpha = 2.0 * std::numbers::pi * ia / (n_alpha - 1);
        const Eigen::Vector3d n(std::cos(alpha), std::sin(alpha), 0.0);
        double ds = 0.0;
        if (formulation_of(m.kind) == Formulation::GST) {
            // C_ani = 4 psi_ff H x H per family with psi_ff(E=0) = k1
            const GstEval e = gst_eval(m, Eigen::Matrix3d::Identity());
            for (const auto& f : e.fam) {
                const double nHn = n.dot(f.H * n);
                ds += 4.0 * k1 * nHn * nHn;
            }
        } else {
            // one-sided (tensile) second-order difference across the
            // activation kinks at the reference state
            const Eigen::Matrix3d N = n * n.transpose();
            const auto sval = [&](double h) {
                return n.dot(anisotropic_pk2(m, Eigen::Matrix3d::Identity() + h * N, quad) * n);
            };
            const double s0 = sval(0.0);
            double h = 1e-5;
            double d_prev = (4.0 * sval(h) - sval(2.0 * h) - 3.0 * s0) / (2.0 * h);
            for (int it = 0; it < 3; ++it) {
                h *= 0.5;
                const double d_next = (4.0 * sval(h) - sval(2.0 * h) - 3.0 * s0) / (2.0 * h);
                const bool stable = std::abs(d_next - d_prev) <= 1e-4 * std::max(1.0, std::abs(d_next));
                d_prev = d_next;
                if (stable) break;
            }
            ds = 2.0 * d_prev;
        }
        out.emplace_back(alpha, ds);
    }
    return out;
}

const SphereQuadrature& default_quadrature() {
    // Tension cutoffs leave kinks on the sphere, so the angular integrals
    // converge only algebraically; this order keeps an order doubling below
    // 1e-6 relative on the nominal stresses of every angular model.
    static const SphereQuadrature q = SphereQuadrature::product_rule(256);
    return q;
}

}  // namespace tissuefit
