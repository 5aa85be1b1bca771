#include "tissuefit/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tissuefit/dispersion.hpp"

namespace tissuefit {

namespace {

double mac(double x) { return x > 0.0 ? x : 0.0; }  // Macauley bracket

struct ModelInfo {
    ModelKind kind;
    const char* name;
    Formulation form;
    std::vector<ParamDef> schema;
};

// Bounds double as the admissible domain for validation and as default search
// ranges for the identification runs.
const std::vector<ModelInfo>& model_table() {
    static const std::vector<ModelInfo> table = {
        {ModelKind::NeoHooke, "neohooke", Formulation::Invariant, {{"mu", 1e-6, 5e3}}},
        {ModelKind::NY,
         "ny",
         Formulation::Invariant,
         {{"k0", 1e-6, 5e3}, {"k1", 1e-6, 5e3}, {"k2", 1e-6, 5e3}}},
        {ModelKind::HGO,
         "hgo",
         Formulation::Invariant,
         {{"mu", 1e-6, 5e3}, {"k1", 1e-6, 5e3}, {"k2", 1e-6, 5e3}}},
        {ModelKind::HSGR,
         "hsgr",
         Formulation::Invariant,
         {{"mu", 1e-6, 5e3}, {"k1", 1e-6, 5e3}, {"k2", 1e-6, 5e3}, {"p", 0.0, 1.0}}},
        {ModelKind::OS,
         "os",
         Formulation::Invariant,
         {{"mu", 1e-6, 5e3}, {"k1", 0.0, 5e3}, {"Jf", 1e-4, 1e3}, {"Jm", 1e-4, 1e3}}},
        {ModelKind::GOH,
         "goh",
         Formulation::GST,
         {{"mu", 1e-6, 5e3}, {"k1", 1e-6, 5e3}, {"k2", 1e-6, 5e3}, {"kappa", 0.0, 1.0 / 3.0}}},
        {ModelKind::HNORS,
         "hnors",
         Formulation::GST,
         {{"mu", 1e-6, 5e3},
          {"k1", 1e-6, 5e3},
          {"k2", 1e-6, 5e3},
          {"kappa_ip", 0.0, 1.0},
          {"kappa_op", 0.0, 0.5}}},
        {ModelKind::AMDM,
         "amdm",
         Formulation::AI,
         {{"mu", 1e-6, 5e3}, {"k1", 1e-6, 5e3}, {"k2", 1e-6, 5e3}, {"b", 0.0, 100.0}}},
        {ModelKind::ASMD,
         "asmd",
         Formulation::AI,
         {{"mu", 1e-6, 5e3},
          {"k1", 1e-6, 5e3},
          {"k2", 1e-6, 5e3},
          {"kappa1", 0.0, 100.0},
          {"kappa2", 0.0, 100.0},
          {"kappa3", 0.0, 100.0}}},
        {ModelKind::DBB,
         "dbb",
         Formulation::AI,
         {{"mu", 1e-6, 5e3},
          {"k1", 1e-6, 5e3},
          {"k2", 1e-6, 5e3},
          {"sigma", 0.01, 3.2},
          {"v_tot", 0.01, 1.0}}},
    };
    return table;
}

const ModelInfo& info(ModelKind kind) {
    for (const auto& m : model_table())
        if (m.kind == kind) return m;
    throw std::logic_error("unknown model kind");
}

}  // namespace

const std::vector<ParamDef>& param_schema(ModelKind kind) { return info(kind).schema; }
Formulation formulation_of(ModelKind kind) { return info(kind).form; }
const char* model_name(ModelKind kind) { return info(kind).name; }

ModelKind model_from_name(const std::string& s) {
    std::string lower = s;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    for (const auto& m : model_table())
        if (lower == m.name) return m.kind;
    throw std::invalid_argument("unknown model '" + s + "'");
}

const char* formulation_tag(ModelKind kind) {
    switch (formulation_of(kind)) {
        case Formulation::Invariant: return "I1-I4";
        case Formulation::GST: return "GST";
        case Formulation::AI: return "AI";
    }
    return "?";
}

std::vector<ModelKind> all_models() {
    std::vector<ModelKind> v;
    for (const auto& m : model_table()) v.push_back(m.kind);
    return v;
}

ModelSpec ModelSpec::make(ModelKind kind, const std::map<std::string, double>& named,
                          double phi_rad) {
    ModelSpec m;
    m.kind = kind;
    m.fibers = FiberGeometry::at_angle(phi_rad);
    const auto& schema = param_schema(kind);
    m.params.resize(schema.size());
    for (size_t i = 0; i < schema.size(); ++i) {
        const auto it = named.find(schema[i].name);
        if (it == named.end())
            throw std::invalid_argument(std::string("missing parameter '") + schema[i].name +
                                        "' for model " + model_name(kind));
        m.params[i] = it->second;
    }
    for (const auto& [k, v] : named) {
        (void)v;
        bool known = false;
        for (const auto& d : schema) known = known || d.name == k;
        if (!known)
            throw std::invalid_argument("parameter '" + k + "' does not belong to model " +
                                        model_name(kind));
    }
    return m;
}

double ModelSpec::param(const std::string& name) const {
    const auto& schema = param_schema(kind);
    for (size_t i = 0; i < schema.size(); ++i)
        if (schema[i].name == name) return params.at(i);
    throw std::invalid_argument("model " + std::string(model_name(kind)) + " has no parameter '" +
                                name + "'");
}

void ModelSpec::set_param(const std::string& name, double v) {
    const auto& schema = param_schema(kind);
    for (size_t i = 0; i < schema.size(); ++i)
        if (schema[i].name == name) {
            params.at(i) = v;
            return;
        }
    throw std::invalid_argument("model " + std::string(model_name(kind)) + " has no parameter '" +
                                name + "'");
}

void ModelSpec::validate() const {
    const auto& schema = param_schema(kind);
    if (params.size() != schema.size()) {
        std::ostringstream os;
        os << "model " << model_name(kind) << " expects " << schema.size() << " parameters, got "
           << params.size();
        throw std::invalid_argument(os.str());
    }
    for (size_t i = 0; i < schema.size(); ++i) {
        const double v = params[i];
        if (!std::isfinite(v) || v < schema[i].lo || v > schema[i].hi) {
            std::ostringstream os;
            os << "parameter " << schema[i].name << " = " << v << " of model " << model_name(kind)
               << " outside admissible range [" << schema[i].lo << ", " << schema[i].hi << "]";
            throw std::invalid_argument(os.str());
        }
    }
}

// ---------------------------------------------------------------------------
// invariant-based energies

double invariant_energy(const ModelSpec& m, const InvariantSet& inv) {
    switch (m.kind) {
        case ModelKind::NeoHooke: {
            return 0.5 * m.params[0] * (inv.I1 - 3.0);
        }
        case ModelKind::NY: {
            const double k0 = m.params[0], k1 = m.params[1], k2 = m.params[2];
            const double a4 = std::sqrt(inv.I4) - 1.0, a6 = std::sqrt(inv.I6) - 1.0;
            const double Q = k1 * (inv.I1 - 3.0) * (inv.I1 - 3.0) + k2 * a4 * a4 * a4 * a4 +
                             k2 * a6 * a6 * a6 * a6;
            return k0 * (std::exp(Q) - 1.0);
        }
        case ModelKind::HGO: {
            const double mu = m.params[0], k1 = m.params[1], k2 = m.params[2];
            const double e4 = mac(inv.I4 - 1.0), e6 = mac(inv.I6 - 1.0);
            return 0.5 * mu * (inv.I1 - 3.0) +
                   0.5 * k1 / k2 *
                       ((std::exp(k2 * e4 * e4) - 1.0) + (std::exp(k2 * e6 * e6) - 1.0));
        }
        case ModelKind::HSGR: {
            const double mu = m.params[0], k1 = m.params[1], k2 = m.params[2], p = m.params[3];
            const double iso = 0.5 * mu * (inv.I1 - 3.0);
            if (inv.I4 <= 1.0) return iso;  // sgn<I4-1> switches the whole term off
            const double e1 = inv.I1 - 3.0, e4 = inv.I4 - 1.0;
            const double Q = k2 * ((1.0 - p) * e1 * e1 + p * e4 * e4);
            return iso + k1 / k2 * (std::exp(Q) - 1.0);
        }
        case ModelKind::OS: {
            const double mu = m.params[0], k1 = m.params[1], Jf = m.params[2], Jm = m.params[3];
            const double e1 = inv.I1 - 3.0;
            if (e1 >= Jm)
                throw SaturationError("matrix extensibility limit reached (I1 - 3 >= Jm)", "Jm");
            double W = -0.5 * mu * Jm * std::log1p(-e1 / Jm);
            for (double I : {inv.I4, inv.I6}) {
                const double e = mac(I - 1.0);
                if (e * e >= Jf)
                    throw SaturationError("fiber extensibility limit reached (<I-1>^2 >= Jf)",
                                          "Jf");
                W += -0.5 * k1 * Jf * std::log1p(-e * e / Jf);
            }
            return W;
        }
        default: break;
    }
    throw std::invalid_argument(std::string("model ") + model_name(m.kind) +
                                " is not invariant-based");
}

PsiDerivatives invariant_psi(const ModelSpec& m, const InvariantSet& inv) {
    PsiDerivatives d;
    switch (m.kind) {
        case ModelKind::NeoHooke: {
            d.psi1 = 0.5 * m.params[0];
            return d;
        }
        case ModelKind::NY: {
            const double k0 = m.params[0], k1 = m.params[1], k2 = m.params[2];
            const double s4 = std::sqrt(inv.I4), s6 = std::sqrt(inv.I6);
            const double a4 = s4 - 1.0, a6 = s6 - 1.0;
            const double Q = k1 * (inv.I1 - 3.0) * (inv.I1 - 3.0) + k2 * a4 * a4 * a4 * a4 +
                             k2 * a6 * a6 * a6 * a6;
            const double eQ = std::exp(Q);
            d.psi1 = 2.0 * k0 * k1 * (inv.I1 - 3.0) * eQ;
            d.psi4 = 2.0 * k0 * k2 * a4 * a4 * a4 * eQ / s4;
            d.psi6 = 2.0 * k0 * k2 * a6 * a6 * a6 * eQ / s6;
            return d;
        }
        case ModelKind::HGO: {
            const double mu = m.params[0], k1 = m.params[1], k2 = m.params[2];
            d.psi1 = 0.5 * mu;
            const double e4 = mac(inv.I4 - 1.0), e6 = mac(inv.I6 - 1.0);
            d.psi4 = k1 * e4 * std::exp(k2 * e4 * e4);
            d.psi6 = k1 * e6 * std::exp(k2 * e6 * e6);
            return d;
        }
        case ModelKind::HSGR: {
            const double mu = m.params[0], k1 = m.params[1], k2 = m.params[2], p = m.params[3];
            d.psi1 = 0.5 * mu;
            if (inv.I4 <= 1.0) return d;
            const double e1 = inv.I1 - 3.0, e4 = inv.I4 - 1.0;
            const double eQ = std::exp(k2 * ((1.0 - p) * e1 * e1 + p * e4 * e4));
            d.psi1 += 2.0 * k1 * (1.0 - p) * e1 * eQ;
            d.psi4 = 2.0 * k1 * p * e4 * eQ;
            return d;
        }
        case ModelKind::OS: {
            const double mu = m.params[0], k1 = m.params[1], Jf = m.params[2], Jm = m.params[3];
            const double e1 = inv.I1 - 3.0;
            if (e1 >= Jm)
                throw SaturationError("matrix extensibility limit reached (I1 - 3 >= Jm)", "Jm");
            d.psi1 = 0.5 * mu * Jm / (Jm - e1);
            const double e4 = mac(inv.I4 - 1.0), e6 = mac(inv.I6 - 1.0);
            if (e4 * e4 >= Jf || e6 * e6 >= Jf)
                throw SaturationError("fiber extensibility limit reached (<I-1>^2 >= Jf)", "Jf");
            d.psi4 = k1 * Jf * e4 / (Jf - e4 * e4);
            d.psi6 = k1 * Jf * e6 / (Jf - e6 * e6);
            return d;
        }
        default: break;
    }
    throw std::invalid_argument(std::string("model ") + model_name(m.kind) +
                                " is not invariant-based");
}

// ---------------------------------------------------------------------------
// generalized structure tensor energies (exponential fiber law in E = H:C - 1)

GstEval gst_eval(const ModelSpec& m, const Eigen::Matrix3d& C) {
    GstEval e;
    const double mu = m.params[0], k1 = m.params[1], k2 = m.params[2];
    e.psi1 = 0.5 * mu;
    for (int i = 0; i < 2; ++i) {
        const Eigen::Vector3d& M = (i == 0) ? m.fibers.M1 : m.fibers.M2;
        GstFamily& f = e.fam[i];
        if (m.kind == ModelKind::GOH) {
            f.H = goh_structure_tensor(m.params[3], M);
        } else if (m.kind == ModelKind::HNORS) {
            f.H = hnors_structure_tensor(m.params[3], m.params[4], M, m.fibers.Mn);
        } else {
            throw std::invalid_argument(std::string("model ") + model_name(m.kind) +
                                        " is not structure-tensor based");
        }
        f.active = M.dot(C * M) > 1.0;  // fibers only carry load in tension
        f.E = (f.H.array() * C.array()).sum() - 1.0;
        f.psi_f = f.active ? k1 * f.E * std::exp(k2 * f.E * f.E) : 0.0;
    }
    return e;
}

double gst_energy(const ModelSpec& m, const Eigen::Matrix3d& C) {
    const GstEval e = gst_eval(m, C);
    const double k1 = m.params[1], k2 = m.params[2];
    double W = e.psi1 * (C.trace() - 3.0);
    for (const auto& f : e.fam)
        if (f.active) W += 0.5 * k1 / k2 * (std::exp(k2 * f.E * f.E) - 1.0);
    return W;
}

// ---------------------------------------------------------------------------
// angular-integration fiber laws

double ai_fiber_energy(const ModelSpec& m, double lambda_f) {
    const double k1 = m.params[1], k2 = m.params[2];
    switch (m.kind) {
        case ModelKind::AMDM:
        case ModelKind::ASMD: {
            if (lambda_f < 1.0) return 0.0;
            const double e = lambda_f * lambda_f - 1.0;
            return 0.5 * k1 / k2 * (std::exp(k2 * e * e) - 1.0);
        }
        case ModelKind::DBB: {
            if (m.dbb_cutoff && lambda_f < 1.0) return 0.0;
            const double e = lambda_f * lambda_f - 1.0;
            return 0.5 * k1 * (k2 * (std::exp(e) - 1.0) - e);
        }
        default: break;
    }
    throw std::invalid_argument(std::string("model ") + model_name(m.kind) +
                                " has no angular-integration fiber law");
}

double ai_fiber_force(const ModelSpec& m, double lambda_f) {
    const double k1 = m.params[1], k2 = m.params[2];
    switch (m.kind) {
        case ModelKind::AMDM:
        case ModelKind::ASMD: {
            if (lambda_f < 1.0) return 0.0;
            const double e = lambda_f * lambda_f - 1.0;
            return 2.0 * k1 * lambda_f * e * std::exp(k2 * e * e);
        }
        case ModelKind::DBB: {
            if (m.dbb_cutoff && lambda_f < 1.0) return 0.0;
            // equals dbb_fiber / lambda_f, so the Kirchhoff kernel is
            // tau_f / lambda_f^2 as in the rule-of-mixtures form
            return k1 * lambda_f * (k2 * std::exp(lambda_f * lambda_f - 1.0) - 1.0);
        }
        default: break;
    }
    throw std::invalid_argument(std::string("model ") + model_name(m.kind) +
                                " has no angular-integration fiber law");
}

double dbb_fiber(double k1, double k2, double lambda_f) {
    return k1 * lambda_f * lambda_f * (k2 * std::exp(lambda_f * lambda_f - 1.0) - 1.0);
}

}  // namespace tissuefit
