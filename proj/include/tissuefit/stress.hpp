#pragma once

#include <utility>
#include <vector>

#include "tissuefit/models.hpp"
#include "tissuefit/quadrature.hpp"

namespace tissuefit {

enum class StressKind { Nominal, Cauchy };

StressKind stress_kind_from_name(const std::string& s);
const char* stress_kind_name(StressKind k);

// Nominal (first Piola-Kirchhoff) and Cauchy principal stresses under the
// incompressibility pressure that enforces tau3 = 0. P2 under UT1/UT2 is the
// residual transverse stress of the prescribed isochoric motion; it is
// reported as is, not equilibrated away.
struct StressResult {
    double P1 = 0, P2 = 0, P3 = 0;
    double p = 0;  // constraint pressure
    double cauchy1 = 0, cauchy2 = 0;
};

// Pressure making the out-of-plane Cauchy/Kirchhoff stress vanish.
double solve_pressure(const ModelSpec& m, const DeformationState& s,
                      const SphereQuadrature* quad = nullptr);

StressResult nominal_stress(const ModelSpec& m, const DeformationState& s,
                            const SphereQuadrature* quad = nullptr);
StressResult nominal_stress_invariant(const ModelSpec& m, const DeformationState& s);
StressResult nominal_stress_gst(const ModelSpec& m, const DeformationState& s);
StressResult nominal_stress_ai(const ModelSpec& m, const DeformationState& s,
                               const SphereQuadrature& quad);

// Same with an order-doubling convergence guard; throws NumericError when the
// result moves by more than 1e-6 relative.
StressResult nominal_stress_ai_checked(const ModelSpec& m, const DeformationState& s,
                                       const SphereQuadrature& quad);

// Whole-curve evaluation of one nominal stress component (1 or 2); reuses the
// angular-integration setup across stretches, which matters in the fit loop.
std::vector<double> nominal_stress_curve(const ModelSpec& m, Mode mode, int component,
                                         const std::vector<double>& lambdas,
                                         const SphereQuadrature* quad = nullptr);

double convert_stress(double value, StressKind from, StressKind to, double lambda);

// Total free energy along the isochoric path; the constraint pressure does no
// work there, so d/dlambda recovers the work-conjugate nominal stresses.
double total_energy(const ModelSpec& m, const DeformationState& s,
                    const SphereQuadrature* quad = nullptr);

// Anisotropic part of the second Piola-Kirchhoff stress at a general C;
// backs the finite-difference moduli probe.
Eigen::Matrix3d anisotropic_pk2(const ModelSpec& m, const Eigen::Matrix3d& C,
                                const SphereQuadrature* quad = nullptr);

// Directional stiffness of the anisotropic moduli at the reference state,
// n(alpha) x n(alpha) : C_ani : n(alpha) x n(alpha) for in-plane directions.
// Analytic for the structure-tensor models, one-sided finite differences
// (tension side of the activation kinks) otherwise.
std::vector<std::pair<double, double>> directional_stiffness(
    const ModelSpec& m, int n_alpha = 181, const SphereQuadrature* quad = nullptr);

// Shared default sphere rule (order 32); CLI/optimizer pass their own.
const SphereQuadrature& default_quadrature();

}  // namespace tissuefit
