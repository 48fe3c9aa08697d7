#pragma once

#include "lindgain/hermitian.hpp"
#include "lindgain/material.hpp"

// Quasi-static interaction tensors G_L^NH / G_G^NH at the qubit position,
// evaluated at the transition frequency. Internal units: hbar = eps0 = omega_a = 1.
namespace lindgain::greens {

/// Hermitian non-negative loss/gain interaction tensors.
struct InteractionTensorPair {
    HermitianTensor3 loss_tensor;
    HermitianTensor3 gain_tensor;
};

struct SubstrateGeometry {
    double z_a; // qubit height above the interface

    explicit SubstrateGeometry(double z_a);
};

/// Qubit above a Drude slab moving along +x with velocity v.
struct SlabMotionParams {
    material::DrudeParams drude;
    double v;
    SubstrateGeometry geometry;
    double g00 = 0.0; // scalar background loss, applied by add_background_loss

    SlabMotionParams(material::DrudeParams drude, double v, SubstrateGeometry geometry,
                     double g00 = 0.0);

    /// (omega_a - omega_sp)/v
    double k_loss() const;
    /// (omega_a + omega_sp)/v
    double k_gain() const;
    /// Bessel argument 2|k|z_a of a channel.
    double argument(double k) const { return 2.0 * std::abs(k) * geometry.z_a; }
};

/// Which channel of an InteractionTensorPair.
enum class Channel { Loss, Gain };

const char* channel_name(Channel c);

/// Isotropic substrate with scalar loss/gain split:
/// (|eps''_{L,G}| / |eps+1|^2) / (16 pi z_a^3) diag(1, 1, 2).
InteractionTensorPair isotropic_gain_tensors(const material::ScalarPermittivitySplit& split,
                                             const SubstrateGeometry& geom);

/// Reflected part of the quasi-static Green's function at r = r' = r_a:
/// -R~ diag(1, 1, 2) / (4 pi (2 z_a)^3).
Matrix3c reflected_greens_coincident(Complex eps, const SubstrateGeometry& geom);

/// Minimum Bessel argument 2|k|z_a accepted by the closed forms.
inline constexpr double kExactMinArgument = 0.1;
inline constexpr double kAsymptoticMinArgument = 5.0;

/// Closed form in terms of K_0, K_1, K_2 at 2|k|z_a; g00 is not applied.
/// Throws ValidityError if 2|k|z_a < 0.1 for either channel (naming the channel)
/// and DomainError when omega_sp == omega_a (k_L = 0).
InteractionTensorPair moving_slab_tensors_exact(const SlabMotionParams& p);

/// Large-argument limit: rank-1 circular tensors G_0 (1/2)(x + i s z)(x - i s z)^H.
/// Requires 2|k|z_a >= 5 for both channels.
InteractionTensorPair moving_slab_tensors_asymptotic(const SlabMotionParams& p);

/// Prefactor G_{alpha,0} of the rank-1 asymptotic tensor for wavenumber k.
double circular_amplitude(const SlabMotionParams& p, double k);

struct QuadratureDiagnostics {
    double k_cutoff = 0.0;       // |k_y| truncation
    double estimated_error = 0.0; // worst relative error estimate over elements
};

/// Independent oracle: adaptive Gauss-Kronrod over k_y of the delta-collapsed
/// plane-wave integrand, truncated where it drops below 1e-16 of its peak.
/// Test oracle for moving_slab_tensors_exact. Throws OracleError on failure.
InteractionTensorPair moving_slab_quadrature_oracle(const SlabMotionParams& p,
                                                    QuadratureDiagnostics* diagnostics = nullptr);

/// Unnormalised k_y integrand of one channel: e^{-2 k|| z} / k|| (i k - k|| z)(-i k - k|| z)^T.
Matrix3c moving_slab_integrand(double kx, double ky, double z_a);

/// loss_tensor += g00 * identity.
InteractionTensorPair add_background_loss(const InteractionTensorPair& pair, double g00);

/// max |(G_L - G_G) - (-Im R~ diag(1,1,2) / (4 pi (2 z_a)^3))| element-wise.
double greens_identity_check(const material::ScalarPermittivitySplit& split,
                             const SubstrateGeometry& geom);

} // namespace lindgain::greens
