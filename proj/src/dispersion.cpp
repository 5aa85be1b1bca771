#include "tissuefit/dispersion.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace tissuefit {

namespace {
constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}
}  // namespace

VonMisesPlanar::VonMisesPlanar(double b_conc) : b(b_conc) {
    require(std::isfinite(b) && b >= 0.0, "von Mises concentration must be >= 0");
    c = (b < 1e-12) ? 1.0 : 4.0 * std::sqrt(b / (2.0 * kPi)) / erfi_scaled(std::sqrt(2.0 * b));
}

double VonMisesPlanar::density_angle(double Theta) const {
    if (b < 1e-12) return 1.0;
    return c * std::exp(b * (std::cos(2.0 * Theta) - 1.0));
}

double VonMisesPlanar::density(const Eigen::Vector3d& r, const Eigen::Vector3d& M) const {
    if (b < 1e-12) return 1.0;
    const double ct = r.dot(M);  // cos Theta; cos 2Theta - 1 = 2(ct^2 - 1)
    return c * std::exp(2.0 * b * (ct * ct - 1.0));
}

double kappa_from_b(double b) {
    require(std::isfinite(b) && b >= 0.0, "von Mises concentration must be >= 0");
    // kappa = 1/4 int_0^pi rho(T) sin^3(T) dT reduces to
    //   1/2 + 1/(4A) - 1/(2AS),  A = 2b,  S = sqrt(pi/A) erfi_scaled(sqrt(A)).
    // Quadrature misses the narrow density peaks once b is large, so use the
    // closed form, with a Taylor series at small b (cancellation) and the
    // erfi asymptotic series at large b (quadrature cost and accuracy).
    if (b < 1e-3) {
        return 1.0 / 3.0 - b * (4.0 / 45.0 + b * (16.0 / 945.0 + b * (64.0 / 14175.0)));
    }
    const double A = 2.0 * b;
    if (b >= 50.0) {
        const double t = 1.0 / (2.0 * A);
        const double u =
            t * (1.0 + t * (3.0 + t * (15.0 + t * (105.0 + t * (945.0 + t * 10395.0)))));
        return 1.0 / (4.0 * A) + 0.5 * u / (1.0 + u);
    }
    const double S = std::sqrt(kPi / A) * erfi_scaled(std::sqrt(A));
    return 0.5 + 0.25 / A - 0.5 / (A * S);
}

Eigen::Matrix3d goh_structure_tensor(double kappa, const Eigen::Vector3d& M) {
    require(kappa >= 0.0 && kappa <= 1.0 / 3.0 + 1e-12, "kappa must lie in [0, 1/3]");
    require(std::abs(M.norm() - 1.0) < 1e-10, "mean fiber direction must be a unit vector");
    return kappa * Eigen::Matrix3d::Identity() + (1.0 - 3.0 * kappa) * (M * M.transpose());
}

Eigen::Matrix3d hnors_structure_tensor(double kappa_ip, double kappa_op,
                                       const Eigen::Vector3d& Mi, const Eigen::Vector3d& Mn) {
    require(kappa_ip >= 0.0 && kappa_ip <= 1.0, "kappa_ip must lie in [0, 1]");
    require(kappa_op >= 0.0 && kappa_op <= 0.5, "kappa_op must lie in [0, 1/2]");
    require(std::abs(Mi.norm() - 1.0) < 1e-10 && std::abs(Mn.norm() - 1.0) < 1e-10,
            "fiber frame vectors must be unit vectors");
    require(std::abs(Mi.dot(Mn)) < 1e-10, "Mi must be orthogonal to the sheet normal");
    return 2.0 * kappa_ip * kappa_op * Eigen::Matrix3d::Identity() +
           2.0 * kappa_op * (1.0 - 2.0 * kappa_ip) * (Mi * Mi.transpose()) +
           (1.0 - 2.0 * kappa_op - 2.0 * kappa_ip * kappa_op) * (Mn * Mn.transpose());
}

double vm_inplane_density(double a, double Phi) {
    require(std::isfinite(a), "in-plane concentration must be finite");
    const double aa = std::abs(a);
    if (aa < 1e-12) return 1.0;
    return std::exp(a * std::cos(2.0 * Phi) - aa) / bessel_i0_scaled(aa);
}

KappaPair kappas_from_concentrations(double a, double b) {
    require(std::isfinite(a), "in-plane concentration must be finite");
    require(std::isfinite(b) && b >= 0.0, "out-of-plane concentration must be >= 0");
    KappaPair k;
    // kappa_ip = (1/pi) int_0^pi rho_ip(Phi) sin^2(Phi) dPhi; hoist the
    // Bessel normalizer out of the integrand, it is itself a quadrature.
    if (std::abs(a) < 1e-12) {
        k.kappa_ip = 0.5;
    } else {
        const double aa = std::abs(a);
        const double i0 = bessel_i0_scaled(aa);
        const auto f = [a, aa, i0](double P) {
            const double s = std::sin(P);
            return std::exp(a * std::cos(2.0 * P) - aa) / i0 * s * s;
        };
        k.kappa_ip = integrate_adaptive(f, 0.0, kPi, 1e-12) / kPi;
    }
    // kappa_op = (1/4) int_0^pi rho_op(t) sin^3(t) dt in colatitude from the
    // sheet normal; the density concentrates on the fiber plane as b grows.
    // Same reduction as kappa_from_b with erf in place of erfi:
    //   1/2 - 1/(4A) + g/(2A),  A = 2b,  g = exp(-A) sqrt(A/pi) / erf(sqrt(A)),
    // with a Taylor series at small b where the closed form cancels.
    if (b < 1e-3) {
        k.kappa_op = 1.0 / 3.0 + b * (4.0 / 45.0 + b * (-16.0 / 945.0 + b * (64.0 / 14175.0)));
    } else {
        const double A = 2.0 * b;
        const double g = std::exp(-A) * std::sqrt(A / kPi) / std::erf(std::sqrt(A));
        k.kappa_op = 0.5 - 0.25 / A + 0.5 * g / A;
    }
    return k;
}

namespace {

// Bisection for a continuous monotone map on [lo, hi].
double bisect(const std::function<double(double)>& f, double target, double lo, double hi,
              bool decreasing) {
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = f(mid);
        const bool go_right = decreasing ? (v > target) : (v < target);
        (go_right ? lo : hi) = mid;
        if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double b_from_kappa(double kappa) {
    require(kappa > 0.0 && kappa <= 1.0 / 3.0 + 1e-12, "kappa must lie in (0, 1/3]");
    if (kappa >= 1.0 / 3.0) return 0.0;
    double hi = 1.0;
    while (kappa_from_b(hi) > kappa && hi < 1e8) hi *= 2.0;
    return bisect(kappa_from_b, kappa, 0.0, hi, /*decreasing=*/true);
}

double a_from_kappa_ip(double kappa_ip) {
    require(kappa_ip > 0.0 && kappa_ip < 1.0, "kappa_ip must lie in (0, 1)");
    const auto f = [](double a) { return kappas_from_concentrations(a, 0.0).kappa_ip; };
    double lo = -1.0, hi = 1.0;
    while (f(lo) < kappa_ip && lo > -1e8) lo *= 2.0;
    while (f(hi) > kappa_ip && hi < 1e8) hi *= 2.0;
    return bisect(f, kappa_ip, lo, hi, /*decreasing=*/true);
}

double b_from_kappa_op(double kappa_op) {
    require(kappa_op >= 1.0 / 3.0 && kappa_op < 0.5, "kappa_op must lie in [1/3, 1/2)");
    if (kappa_op <= 1.0 / 3.0) return 0.0;
    const auto f = [](double b) { return kappas_from_concentrations(0.0, b).kappa_op; };
    double hi = 1.0;
    while (f(hi) < kappa_op && hi < 1e8) hi *= 2.0;
    return bisect(f, kappa_op, 0.0, hi, /*decreasing=*/false);
}

BinghamDistribution BinghamDistribution::make(const Eigen::Vector3d& kappa,
                                              const Eigen::Matrix3d& Q,
                                              const SphereQuadrature& quad) {
    require(kappa.allFinite(), "Bingham concentrations must be finite");
    require((Q * Q.transpose() - Eigen::Matrix3d::Identity()).norm() < 1e-8,
            "Bingham orientation matrix must be orthogonal");
    BinghamDistribution d;
    d.kappa = kappa;
    d.Q = Q;
    d.offset = kappa.maxCoeff();
    const auto unnorm = [&](const Eigen::Vector3d& r) {
        const Eigen::Vector3d q = d.Q.transpose() * r;
        return std::exp(d.kappa.dot(q.cwiseProduct(q)) - d.offset);
    };
    d.norm_scaled = integrate_sphere(unnorm, quad);
    const double ref = integrate_sphere(unnorm, quad.doubled());
    if (std::abs(d.norm_scaled - ref) > 1e-6 * std::abs(ref)) {
        std::ostringstream os;
        os << "Bingham normalizer did not converge at quadrature order " << quad.order << " ("
           << d.norm_scaled << " vs " << ref << " at doubled order); raise the order";
        throw NumericError(os.str());
    }
    return d;
}

double BinghamDistribution::density(const Eigen::Vector3d& r) const {
    const Eigen::Vector3d q = Q.transpose() * r;
    return std::exp(kappa.dot(q.cwiseProduct(q)) - offset) / norm_scaled;
}

double wrapped_fiber_angle(double phi, double theta) {
    double d = std::fmod(phi - theta, kPi);
    if (d < 0.0) d += kPi;
    return std::min(d, kPi - d);
}

PlanarGaussian PlanarGaussian::make(double sigma, double mean, double v_tot) {
    require(std::isfinite(sigma) && sigma > 0.0, "Gaussian width must be positive");
    require(std::isfinite(v_tot) && v_tot > 0.0 && v_tot <= 1.0, "v_tot must lie in (0, 1]");
    PlanarGaussian g;
    g.sigma = sigma;
    g.mean = mean;
    g.v_tot = v_tot;
    const auto vbar = [&](double phi) {
        const double d = wrapped_fiber_angle(phi, g.mean);
        return std::exp(-d * d / (2.0 * sigma * sigma));
    };
    const double avg = integrate_adaptive(vbar, 0.0, 2.0 * kPi, 1e-12) / (2.0 * kPi);
    g.A = v_tot / avg;
    return g;
}

double PlanarGaussian::volume_fraction_angle(double phi) const {
    const double d = wrapped_fiber_angle(phi, mean);
    return A * std::exp(-d * d / (2.0 * sigma * sigma));
}

double PlanarGaussian::volume_fraction(const Eigen::Vector3d& r) const {
    return volume_fraction_angle(std::atan2(r.y(), r.x()));
}

}  // namespace tissuefit
