#include "tissuefit/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tissuefit {

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::UT1: return "UT1";
        case Mode::UT2: return "UT2";
        case Mode::ET: return "ET";
    }
    return "?";
}

Mode mode_from_name(const std::string& s) {
    if (s == "UT1") return Mode::UT1;
    if (s == "UT2") return Mode::UT2;
    if (s == "ET") return Mode::ET;
    throw std::invalid_argument("unknown deformation mode '" + s + "' (expected UT1, UT2 or ET)");
}

FiberGeometry FiberGeometry::at_angle(double phi_rad) {
    FiberGeometry g;
    g.phi = phi_rad;
    const double c = std::cos(phi_rad), s = std::sin(phi_rad);
    g.M1 = Eigen::Vector3d(c, s, 0.0);
    g.M2 = Eigen::Vector3d(c, -s, 0.0);
    g.Mn = Eigen::Vector3d(0.0, 0.0, 1.0);
    return g;
}

FiberGeometry FiberGeometry::from_degrees(double phi_deg) {
    return at_angle(phi_deg * std::numbers::pi / 180.0);
}

Eigen::Vector3d principal_stretches(const DeformationState& s) {
    if (!(s.lambda > 0.0)) throw std::invalid_argument("stretch must be positive");
    const double lam = s.lambda;
    switch (s.mode) {
        case Mode::UT1: return {lam, 1.0 / std::sqrt(lam), 1.0 / std::sqrt(lam)};
        case Mode::UT2: return {1.0 / std::sqrt(lam), lam, 1.0 / std::sqrt(lam)};
        case Mode::ET: return {lam, lam, 1.0 / (lam * lam)};
    }
    throw std::logic_error("unreachable");
}

Eigen::Matrix3d deformation_gradient(const DeformationState& s) {
    return principal_stretches(s).asDiagonal();
}

InvariantSet invariants(const DeformationState& s, const FiberGeometry& g) {
    const Eigen::Vector3d lam = principal_stretches(s);
    const Eigen::Vector3d c = lam.array().square();  // diagonal of C
    InvariantSet inv;
    inv.I1 = c.sum();
    inv.I2 = c(0) * c(1) + c(1) * c(2) + c(0) * c(2);
    inv.I3 = c(0) * c(1) * c(2);
    auto dot2 = [&](const Eigen::Vector3d& M, int pw) {
        double v = 0;
        for (int i = 0; i < 3; ++i) v += M(i) * M(i) * std::pow(c(i), pw);
        return v;
    };
    inv.I4 = dot2(g.M1, 1);
    inv.I5 = dot2(g.M1, 2);
    inv.I6 = dot2(g.M2, 1);
    inv.I7 = dot2(g.M2, 2);
    return inv;
}

InvariantSet invariants_from_C(const Eigen::Matrix3d& C, const FiberGeometry& g) {
    InvariantSet inv;
    const Eigen::Matrix3d C2 = C * C;
    inv.I1 = C.trace();
    inv.I2 = 0.5 * (inv.I1 * inv.I1 - C2.trace());
    inv.I3 = C.determinant();
    inv.I4 = g.M1.dot(C * g.M1);
    inv.I5 = g.M1.dot(C2 * g.M1);
    inv.I6 = g.M2.dot(C * g.M2);
    inv.I7 = g.M2.dot(C2 * g.M2);
    return inv;
}

}  // namespace tissuefit
