#include "tissuefit/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tissuefit {

namespace {

constexpr double kPi = std::numbers::pi;

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = simpson(a, fa, b, fb, fm);
    return adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    if (n < 1) throw std::invalid_argument("Gauss-Legendre order must be >= 1");
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration from the Chebyshev estimate of the i-th root.
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p0 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

double erfi_scaled(double x) {
    if (x == 0.0) return 0.0;
    // (2/sqrt(pi)) int_0^x exp(t^2 - x^2) dt, integrand in (0,1].
    const double c = 2.0 / std::sqrt(kPi);
    return c * integrate_adaptive([x](double t) { return std::exp(t * t - x * x); }, 0.0, x,
                                  1e-14 * std::max(1.0, x));
}

double bessel_i0_scaled(double a) {
    // (1/pi) int_0^pi exp(a(cos t - 1)) dt
    return integrate_adaptive([a](double t) { return std::exp(a * (std::cos(t) - 1.0)); }, 0.0,
                              kPi, 1e-14) /
           kPi;
}

SphereQuadrature SphereQuadrature::product_rule(int order) {
    if (order < 2) throw std::invalid_argument("sphere quadrature order must be >= 2");
    SphereQuadrature q;
    q.order = order;
    const int nphi = 2 * order;
    std::vector<double> u, wu;
    gauss_legendre(order, u, wu);
    const double wphi = 2.0 * kPi / nphi;
    q.nodes.reserve(static_cast<size_t>(order) * nphi);
    q.weights.reserve(static_cast<size_t>(order) * nphi);
    for (int i = 0; i < order; ++i) {
        const double ct = u[i];
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int j = 0; j < nphi; ++j) {
            const double phi = wphi * j;
            q.nodes.emplace_back(st * std::cos(phi), st * std::sin(phi), ct);
            q.weights.push_back(wu[i] * wphi);
        }
    }
    return q;
}

double integrate_sphere(const std::function<double(const Eigen::Vector3d&)>& f,
                        const SphereQuadrature& quad) {
    // Ordered summation keeps results bit-reproducible across runs.
    double acc = 0.0;
    for (size_t i = 0; i < quad.nodes.size(); ++i) acc += quad.weights[i] * f(quad.nodes[i]);
    return acc / (4.0 * kPi);
}

}  // namespace tissuefit
