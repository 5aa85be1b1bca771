#pragma once

#include <Eigen/Dense>

namespace tissuefit {

// Homogeneous incompressible test modes: uniaxial tension along e1 or e2,
// equibiaxial tension in the e1-e2 plane. lambda is the controlled stretch.
enum class Mode { UT1, UT2, ET };

const char* mode_name(Mode m);
Mode mode_from_name(const std::string& s);

struct DeformationState {
    Mode mode = Mode::UT1;
    double lambda = 1.0;
};

// Two symmetric fiber families at +/-phi from e1 in the e1-e2 plane,
// sheet normal along e3.
struct FiberGeometry {
    double phi = 0.0;  // radians
    Eigen::Vector3d M1, M2, Mn;

    static FiberGeometry at_angle(double phi_rad);
    static FiberGeometry from_degrees(double phi_deg);
};

// Isotropic invariants of C plus the two fiber families' pseudo-invariants:
// I4 = M1.C M1, I5 = M1.C^2 M1, I6/I7 the same for M2.
struct InvariantSet {
    double I1 = 3, I2 = 3, I3 = 1;
    double I4 = 1, I5 = 1, I6 = 1, I7 = 1;
};

// Principal stretches (lam1, lam2, lam3) for the isochoric test modes.
Eigen::Vector3d principal_stretches(const DeformationState& s);

// Diagonal deformation gradient for the mode; det F = 1.
Eigen::Matrix3d deformation_gradient(const DeformationState& s);

InvariantSet invariants(const DeformationState& s, const FiberGeometry& g);

// Same contractions for a general (not necessarily diagonal) right
// Cauchy-Green tensor; used by the moduli probes.
InvariantSet invariants_from_C(const Eigen::Matrix3d& C, const FiberGeometry& g);

}  // namespace tissuefit
