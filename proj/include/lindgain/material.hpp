#pragma once

#include <complex>

#include "lindgain/hermitian.hpp"

// Material responses in internal units: hbar = eps0 = omega_a = 1.
namespace lindgain::material {

/// Loss/gain decomposition of a non-Hermitian response.
struct ResponseSplit {
    HermitianTensor3 loss; // PSD
    HermitianTensor3 gain; // -gain is PSD
};

/// Eigen-decomposition split of M'' into its positive and negative spectral parts.
/// Eigenvalues with |lambda| < 1e-12 * ||m|| go to the loss component.
ResponseSplit spectral_split(const HermitianTensor3& m);

/// Checked variant for raw matrices; throws ValidationError if m deviates
/// from Hermitian by more than 1e-12 in any element.
ResponseSplit spectral_split(const Matrix3c& m);

/// eps'' = eps''_L + eps''_G for an isotropic medium at a single frequency.
class ScalarPermittivitySplit {
public:
    static constexpr double kTolerance = 1e-12;

    /// Throws ValidationError unless imag(eps) == eps_loss + eps_gain,
    /// eps_loss >= 0 and eps_gain <= 0.
    ScalarPermittivitySplit(Complex eps, double eps_loss, double eps_gain);

    /// Builds eps = eps_real + i (eps_loss + eps_gain).
    static ScalarPermittivitySplit from_parts(double eps_real, double eps_loss, double eps_gain);

    Complex eps() const { return eps_; }
    double eps_loss() const { return eps_loss_; }
    double eps_gain() const { return eps_gain_; }

    /// True when |eps''_G| >= eps''_L; such a medium is typically unstable.
    /// Reported, never enforced.
    bool stability_warning() const { return -eps_gain_ >= eps_loss_ && eps_gain_ != 0.0; }

private:
    Complex eps_;
    double eps_loss_;
    double eps_gain_;
};

struct DrudeParams {
    double omega_sp; // surface plasmon resonance, units of omega_a

    explicit DrudeParams(double omega_sp);
};

/// Lossless Drude permittivity 1 - 2 omega_sp^2 / omega^2. The 0+ collision
/// term only enters through the delta-function form of Im{R~} downstream.
Complex drude_permittivity(double omega, const DrudeParams& p);

/// Quasi-static reflection coefficient R~ = (1 - eps)/(1 + eps), air side.
Complex quasistatic_reflection(Complex eps);

struct ReflectionPair {
    Complex r; // (eps - 1)/(eps + 1)
    Complex t; // 1 + r
};

/// Potential reflection/transmission coefficients for a source inside the medium.
ReflectionPair substrate_reflection_pair(Complex eps);

} // namespace lindgain::material
