#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "tissuefit/kinematics.hpp"

namespace tissuefit {

// The ten constitutive laws: an isotropic neo-Hookean baseline plus nine
// anisotropic models grouped by how they represent the fiber architecture
// (classical invariants, generalized structure tensors, or angular
// integration over the unit sphere).
enum class ModelKind { NeoHooke, NY, HGO, HSGR, OS, GOH, HNORS, AMDM, ASMD, DBB };

enum class Formulation { Invariant, GST, AI };

struct ParamDef {
    std::string name;
    double lo = 0.0;
    double hi = 1.0;
};

const std::vector<ParamDef>& param_schema(ModelKind kind);
Formulation formulation_of(ModelKind kind);
const char* model_name(ModelKind kind);
ModelKind model_from_name(const std::string& s);
const char* formulation_tag(ModelKind kind);  // "I1-I4", "GST" or "AI"
std::vector<ModelKind> all_models();

// A concrete model: kind + parameter vector (ordered per schema) + fiber
// geometry. The mean fiber angle is a fixed tissue property, not a fitted
// parameter.
struct ModelSpec {
    ModelKind kind = ModelKind::NeoHooke;
    std::vector<double> params;
    FiberGeometry fibers = FiberGeometry::at_angle(0.0);
    bool dbb_cutoff = false;  // optional tension cutoff for the DBB fiber law

    static ModelSpec make(ModelKind kind, const std::map<std::string, double>& named,
                          double phi_rad);
    double param(const std::string& name) const;
    void set_param(const std::string& name, double v);
    void validate() const;  // throws std::invalid_argument naming the offender
};

// Raised by the limited-extensibility (Gent-type) terms when an argument
// reaches its singular bound; carries the name of the violated limit.
struct SaturationError : std::domain_error {
    explicit SaturationError(const std::string& what, std::string bound_name)
        : std::domain_error(what), bound(std::move(bound_name)) {}
    std::string bound;
};

// First derivatives of the free energy w.r.t. I1..I7 (psi3 kept for
// completeness; it never contributes under incompressibility).
struct PsiDerivatives {
    double psi1 = 0, psi2 = 0, psi3 = 0, psi4 = 0, psi5 = 0, psi6 = 0, psi7 = 0;
};

// Invariant-based models (NeoHooke, NY, HGO, HSGR, OS).
double invariant_energy(const ModelSpec& m, const InvariantSet& inv);
PsiDerivatives invariant_psi(const ModelSpec& m, const InvariantSet& inv);

// Structure-tensor models (GOH, HNORS). A family only contributes while its
// mean-direction stretch is tensile (I4 > 1).
struct GstFamily {
    Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
    double E = 0.0;      // H : C - 1
    double psi_f = 0.0;  // d psi / d E
    bool active = false;
};
struct GstEval {
    double psi1 = 0.0;
    std::array<GstFamily, 2> fam;
};
GstEval gst_eval(const ModelSpec& m, const Eigen::Matrix3d& C);
double gst_energy(const ModelSpec& m, const Eigen::Matrix3d& C);

// Angular-integration fiber laws, per unit fiber direction at stretch
// lambda_f. ai_fiber_force is the derivative of ai_fiber_energy.
double ai_fiber_energy(const ModelSpec& m, double lambda_f);
double ai_fiber_force(const ModelSpec& m, double lambda_f);

// DBB fiber Kirchhoff stress tau_f = k1 lambda_f^2 (k2 exp(lambda_f^2-1) - 1);
// note tau_f(1) = k1(k2 - 1), which is nonzero unless k2 = 1.
double dbb_fiber(double k1, double k2, double lambda_f);

}  // namespace tissuefit
