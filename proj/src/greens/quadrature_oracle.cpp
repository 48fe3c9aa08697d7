#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lindgain/error.hpp"
#include "lindgain/greens.hpp"

namespace lindgain::greens {

namespace {

constexpr double kTruncation = 1e-16;
constexpr double kTargetRelativeError = 1e-8;
constexpr unsigned kMaxDepth = 25;

// Upper bound on |element| of the integrand: k|| e^{-2 k|| z}.
double envelope(double kx, double ky, double z)
{
    const double kpar = std::hypot(kx, ky);
    return kpar * std::exp(-2.0 * kpar * z);
}

double find_cutoff(double kx, double z)
{
    // The envelope as a function of k|| >= |kx| peaks at max(|kx|, 1/(2z)).
    const double kpar_peak = std::max(std::abs(kx), 0.5 / z);
    const double ky_peak = std::sqrt(std::max(0.0, kpar_peak * kpar_peak - kx * kx));
    const double peak = envelope(kx, ky_peak, z);

    double cutoff = std::max(ky_peak, 1.0 / z);
    while (envelope(kx, cutoff, z) > kTruncation * peak) {
        cutoff *= 2.0;
    }
    // Tighten by bisection so the quadrature does not sample a long dead tail.
    double lo = cutoff / 2.0;
    double hi = cutoff;
    for (int i = 0; i < 60 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (envelope(kx, mid, z) > kTruncation * peak ? lo : hi) = mid;
    }
    return hi;
}

HermitianTensor3 integrate_channel(const SlabMotionParams& p, double kx,
                                   QuadratureDiagnostics& diag)
{
    using boost::math::quadrature::gauss_kronrod;
    const double z = p.geometry.z_a;
    const double cutoff = find_cutoff(kx, z);
    diag.k_cutoff = std::max(diag.k_cutoff, cutoff);

    Matrix3c result = Matrix3c::Zero();
    Eigen::Matrix3d error = Eigen::Matrix3d::Zero();
    double l1_scale = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            for (int part = 0; part < 2; ++part) {
                auto f = [&](double ky) {
                    const Complex value = moving_slab_integrand(kx, ky, z)(i, j);
                    return part == 0 ? value.real() : value.imag();
                };
                double err_neg = 0.0;
                double err_pos = 0.0;
                double l1_neg = 0.0;
                double l1_pos = 0.0;
                const double neg = gauss_kronrod<double, 61>::integrate(
                    f, -cutoff, 0.0, kMaxDepth, 1e-12, &err_neg, &l1_neg);
                const double pos = gauss_kronrod<double, 61>::integrate(
                    f, 0.0, cutoff, kMaxDepth, 1e-12, &err_pos, &l1_pos);
                const double value = neg + pos;
                if (part == 0) {
                    result(i, j) += value;
                } else {
                    result(i, j) += Complex{0.0, value};
                }
                error(i, j) += err_neg + err_pos;
                l1_scale = std::max(l1_scale, l1_neg + l1_pos);
            }
        }
    }
    // Odd-in-k_y elements integrate to zero; judge accuracy against the
    // largest element rather than element by element.
    const double worst = error.maxCoeff() / l1_scale;
    diag.estimated_error = std::max(diag.estimated_error, worst);
    if (!(worst <= kTargetRelativeError) || !result.allFinite()) {
        std::ostringstream msg;
        msg << "moving_slab_quadrature_oracle: quadrature did not converge (kx = " << kx
            << ", cutoff = " << cutoff << ", relative error estimate = " << worst << ")";
        throw OracleError(msg.str());
    }

    const double pref = p.drude.omega_sp / (16.0 * std::numbers::pi * p.v);
    return HermitianTensor3{pref * result, 1e-10 * pref * l1_scale};
}

} // namespace

Matrix3c moving_slab_integrand(double kx, double ky, double z_a)
{
    const double kpar = std::hypot(kx, ky);
    const Complex i{0.0, 1.0};
    Vector3c u;
    u << i * kx, i * ky, -kpar;
    // (i k|| - k|| z) (x) (-i k|| - k|| z) = u (x) conj(u)
    return (std::exp(-2.0 * kpar * z_a) / kpar) * (u * u.adjoint());
}

InteractionTensorPair moving_slab_quadrature_oracle(const SlabMotionParams& p,
                                                    QuadratureDiagnostics* diagnostics)
{
    if (p.k_loss() == 0.0) {
        throw DomainError("moving_slab_quadrature_oracle: k_L = 0 is not supported");
    }
    QuadratureDiagnostics diag;
    InteractionTensorPair out{integrate_channel(p, p.k_loss(), diag),
                              integrate_channel(p, p.k_gain(), diag)};
    if (diagnostics != nullptr) {
        *diagnostics = diag;
    }
    return out;
}

} // namespace lindgain::greens
