#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace tissuefit {

// Adaptive Simpson rule on [a,b]; tol is an absolute tolerance on the result.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-12);

// n-point Gauss-Legendre nodes/weights on [-1,1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Scaled special functions, overflow-safe for large arguments:
//   erfi_scaled(x)  = exp(-x^2) * erfi(x)
//   bessel_i0_scaled(a) = exp(-a) * I0(a)
// Both are evaluated by adaptive quadrature of the integral definitions.
double erfi_scaled(double x);
double bessel_i0_scaled(double a);

// Product quadrature on the unit sphere: Gauss-Legendre in cos(theta) times a
// uniform (trapezoidal) rule in the azimuth. Weights sum to 4*pi. The rule is
// exact for spherical harmonics up to degree ~min(2*n_theta-1, n_phi-1).
struct SphereQuadrature {
    std::vector<Eigen::Vector3d> nodes;
    std::vector<double> weights;

    int order = 0;  // n_theta; n_phi = 2*order

    static SphereQuadrature product_rule(int order);
    SphereQuadrature doubled() const { return product_rule(2 * order); }
};

// Surface average (1/|S|) * sum_i w_i f(r_i); f == 1 gives 1.
double integrate_sphere(const std::function<double(const Eigen::Vector3d&)>& f,
                        const SphereQuadrature& quad);

}  // namespace tissuefit
