#include "lindgain/greens.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lindgain/error.hpp"
#include "lindgain/special_functions.hpp"

namespace lindgain::greens {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOmegaA = 1.0;

// diag(1, 1, 2) = 1_t + 2 z z
Matrix3c image_dyad()
{
    Matrix3c d = Matrix3c::Zero();
    d(0, 0) = 1.0;
    d(1, 1) = 1.0;
    d(2, 2) = 2.0;
    return d;
}

void check_channel(const SlabMotionParams& p, Channel channel, double k, double min_argument,
                   const char* where)
{
    const double arg = p.argument(k);
    if (!(arg >= min_argument)) {
        std::ostringstream msg;
        msg << where << ": " << channel_name(channel) << " channel argument 2|k|z_a = " << arg
            << " is below the validity threshold " << min_argument;
        throw ValidityError(msg.str());
    }
}

void check_slab(const SlabMotionParams& p, double min_argument, const char* where)
{
    if (p.k_loss() == 0.0) {
        throw DomainError(std::string(where) +
                          ": omega_sp == omega_a (k_L = 0) is an unresolved limit of the closed form");
    }
    check_channel(p, Channel::Loss, p.k_loss(), min_argument, where);
    check_channel(p, Channel::Gain, p.k_gain(), min_argument, where);
}

// k^2 (omega_sp / v) / (16 pi) times the Bessel matrix at 2|k|z_a.
HermitianTensor3 exact_channel(const SlabMotionParams& p, double k)
{
    const double x = p.argument(k);
    const double k0 = special::bessel_k(0, x);
    const double k1 = special::bessel_k(1, x);
    const double k2 = special::bessel_k(2, x);
    const double s = k > 0.0 ? 1.0 : -1.0;
    const double pref = k * k * (p.drude.omega_sp / p.v) / (16.0 * kPi);
    const Complex i{0.0, 1.0};

    Matrix3c m = Matrix3c::Zero();
    m(0, 0) = 2.0 * k0;
    m(1, 1) = k2 - k0;
    m(2, 2) = k2 + k0;
    m(0, 2) = -i * 2.0 * s * k1;
    m(2, 0) = +i * 2.0 * s * k1;
    return HermitianTensor3{pref * m};
}

HermitianTensor3 asymptotic_channel(const SlabMotionParams& p, double k)
{
    const double s = k > 0.0 ? 1.0 : -1.0;
    Vector3c u;
    u << 1.0, 0.0, Complex{0.0, s};
    const Matrix3c dyad = u * u.adjoint();
    return HermitianTensor3{0.5 * circular_amplitude(p, k) * dyad};
}

} // namespace

const char* channel_name(Channel c)
{
    return c == Channel::Loss ? "loss" : "gain";
}

SubstrateGeometry::SubstrateGeometry(double z) : z_a(z)
{
    if (!(z_a > 0.0) || !std::isfinite(z_a)) {
        throw DomainError("SubstrateGeometry: z_a must be positive and finite");
    }
}

SlabMotionParams::SlabMotionParams(material::DrudeParams d, double v_, SubstrateGeometry g,
                                   double g00_)
    : drude(d), v(v_), geometry(g), g00(g00_)
{
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError("SlabMotionParams: v must be positive and finite");
    }
    if (!(g00 >= 0.0) || !std::isfinite(g00)) {
        throw DomainError("SlabMotionParams: g00 must be non-negative");
    }
}

double SlabMotionParams::k_loss() const
{
    return (kOmegaA - drude.omega_sp) / v;
}

double SlabMotionParams::k_gain() const
{
    return (kOmegaA + drude.omega_sp) / v;
}

InteractionTensorPair isotropic_gain_tensors(const material::ScalarPermittivitySplit& split,
                                             const SubstrateGeometry& geom)
{
    const Complex eps = split.eps();
    if (std::abs(eps + 1.0) <= 1e-12) {
        throw ResonanceSingularityError(
            "isotropic_gain_tensors: |eps + 1| vanishes at the surface plasmon resonance");
    }
    const double denom = std::norm(eps + 1.0) * 16.0 * kPi * std::pow(geom.z_a, 3);
    const double loss = std::abs(split.eps_loss()) / denom;
    const double gain = std::abs(split.eps_gain()) / denom;
    return {HermitianTensor3::diagonal(loss, loss, 2.0 * loss),
            HermitianTensor3::diagonal(gain, gain, 2.0 * gain)};
}

Matrix3c reflected_greens_coincident(Complex eps, const SubstrateGeometry& geom)
{
    const Complex r_tilde = material::quasistatic_reflection(eps);
    const double image_distance = 2.0 * geom.z_a;
    return -r_tilde * image_dyad() / (4.0 * kPi * std::pow(image_distance, 3));
}

InteractionTensorPair moving_slab_tensors_exact(const SlabMotionParams& p)
{
    check_slab(p, kExactMinArgument, "moving_slab_tensors_exact");
    return {exact_channel(p, p.k_loss()), exact_channel(p, p.k_gain())};
}

double circular_amplitude(const SlabMotionParams& p, double k)
{
    const double z = p.geometry.z_a;
    return k * k * (p.drude.omega_sp / p.v) / (8.0 * kPi) *
           std::sqrt(kPi / (std::abs(k) * z)) * std::exp(-2.0 * std::abs(k) * z);
}

InteractionTensorPair moving_slab_tensors_asymptotic(const SlabMotionParams& p)
{
    check_slab(p, kAsymptoticMinArgument, "moving_slab_tensors_asymptotic");
    return {asymptotic_channel(p, p.k_loss()), asymptotic_channel(p, p.k_gain())};
}

InteractionTensorPair add_background_loss(const InteractionTensorPair& pair, double g00)
{
    if (!(g00 >= 0.0) || !std::isfinite(g00)) {
        throw DomainError("add_background_loss: g00 must be non-negative");
    }
    return {pair.loss_tensor + g00 * HermitianTensor3::identity(), pair.gain_tensor};
}

double greens_identity_check(const material::ScalarPermittivitySplit& split,
                             const SubstrateGeometry& geom)
{
    const auto pair = isotropic_gain_tensors(split, geom);
    const Matrix3c lhs = pair.loss_tensor.matrix() - pair.gain_tensor.matrix();

    const Complex r_tilde = material::quasistatic_reflection(split.eps());
    const Matrix3c rhs =
        -r_tilde.imag() * image_dyad() / (4.0 * kPi * std::pow(2.0 * geom.z_a, 3));
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

} // namespace lindgain::greens
