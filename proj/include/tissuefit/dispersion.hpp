#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "tissuefit/quadrature.hpp"

namespace tissuefit {

// Raised when a quadrature-backed quantity fails its convergence check.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// pi-periodic von Mises density on the sphere around a mean fiber axis,
// normalized so the surface average is 1. Written in the overflow-safe form
//   rho(Theta) = c(b) * exp(b (cos 2Theta - 1)),
// which equals the textbook exp(b(cos 2Theta + 1))/erfi(sqrt(2b)) expression.
struct VonMisesPlanar {
    double b = 0.0;
    double c = 1.0;  // normalization constant

    explicit VonMisesPlanar(double b_conc);
    double density_angle(double Theta) const;
    // rho at direction r for mean axis M (uses cos Theta = r.M)
    double density(const Eigen::Vector3d& r, const Eigen::Vector3d& M) const;
};

// kappa(b) = 1/4 int_0^pi rho(Theta) sin^3(Theta) dTheta; 1/3 at b = 0,
// strictly decreasing to 0.
double kappa_from_b(double b);

// H = kappa I + (1 - 3 kappa) M x M, kappa in [0, 1/3].
Eigen::Matrix3d goh_structure_tensor(double kappa, const Eigen::Vector3d& M);

// Non-rotationally-symmetric structure tensor from in-plane / out-of-plane
// dispersion parameters; Mi is the mean in-plane direction, Mn the normal.
Eigen::Matrix3d hnors_structure_tensor(double kappa_ip, double kappa_op,
                                       const Eigen::Vector3d& Mi, const Eigen::Vector3d& Mn);

struct KappaPair {
    double kappa_ip = 0.5;
    double kappa_op = 1.0 / 3.0;
};

// In-plane density exp(a cos 2Phi)/(pi I0(a)) and out-of-plane density
// 2 sqrt(2b/pi) exp(b(cos 2Theta - 1))/erf(sqrt(2b)) reduced to their scalar
// dispersion measures. b >= 0; a may be negative (in-plane concentration
// transverse to Mi, which the identified parameter sets do reach).
KappaPair kappas_from_concentrations(double a, double b);

double vm_inplane_density(double a, double Phi);

// Inverse maps (bisection on the monotone forward maps); used for the polar
// density plots where only the kappa values are identified.
double b_from_kappa(double kappa);
double a_from_kappa_ip(double kappa_ip);
double b_from_kappa_op(double kappa_op);

// Bingham density rho(r) = etr(Z Q^T r r^T Q)/F0000 with Z = diag(kappa).
// The normalizer is precomputed by sphere quadrature; construction fails with
// NumericError if order doubling moves it by more than 1e-6 relative.
struct BinghamDistribution {
    Eigen::Vector3d kappa = Eigen::Vector3d::Zero();
    Eigen::Matrix3d Q = Eigen::Matrix3d::Identity();
    double offset = 0.0;       // max kappa, factored out of the exponentials
    double norm_scaled = 1.0;  // exp(-offset) * F0000

    static BinghamDistribution make(const Eigen::Vector3d& kappa, const Eigen::Matrix3d& Q,
                                    const SphereQuadrature& quad);
    double density(const Eigen::Vector3d& r) const;
};

// Azimuthal Gaussian fiber volume fraction v_f(phi) = A exp(-d(phi,mean)^2 /
// (2 sigma^2)) with pi-periodic angular distance d; A is fixed so the surface
// average equals v_tot.
struct PlanarGaussian {
    double sigma = 1.0;
    double mean = 0.0;  // radians
    double v_tot = 1.0;
    double A = 1.0;

    static PlanarGaussian make(double sigma, double mean, double v_tot);
    double volume_fraction_angle(double phi) const;
    double volume_fraction(const Eigen::Vector3d& r) const;
};

// Smallest angular distance between fiber axes phi and theta (pi-periodic).
double wrapped_fiber_angle(double phi, double theta);

}  // namespace tissuefit
