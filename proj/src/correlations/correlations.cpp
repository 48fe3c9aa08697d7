#include "lindgain/correlations.hpp"

#include <cmath>
#include <numbers>

#include "lindgain/error.hpp"

namespace lindgain::correlations {

namespace {

double thermal_factor(double n_omega)
{
    if (!(n_omega >= 0.0) || !std::isfinite(n_omega)) {
        throw DomainError("spectral density: occupation must be finite and >= 0");
    }
    return (2.0 / std::numbers::pi) * (n_omega + 0.5);
}

void check_frequency(double omega)
{
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw DomainError("spectral density: omega must be positive");
    }
}

} // namespace

SpectralPoint field_spectrum(const material::ScalarPermittivitySplit& split_at_omega,
                             const greens::SubstrateGeometry& geom, double omega, double n_omega)
{
    check_frequency(omega);
    const double factor = thermal_factor(n_omega);
    const auto pair = greens::isotropic_gain_tensors(split_at_omega, geom);
    // L - G of the response integrates to the sum of the two PSD tensors.
    const Matrix3c sum = pair.loss_tensor.matrix() + pair.gain_tensor.matrix();
    const Matrix3c real_part = sum.real().cast<Complex>();
    return {omega, n_omega, HermitianTensor3{factor * real_part}};
}

HermitianTensor3 passive_field_spectrum(Complex eps, const greens::SubstrateGeometry& geom,
                                        double n_omega)
{
    const double factor = thermal_factor(n_omega);
    const Matrix3c g = greens::reflected_greens_coincident(eps, geom);
    const Complex two_i{0.0, 2.0};
    const Matrix3c anti_hermitian = (g - g.adjoint()) / two_i;
    const Matrix3c real_part = anti_hermitian.real().cast<Complex>();
    return HermitianTensor3{factor * real_part};
}

HermitianTensor3 noise_current_spectrum(const material::ScalarPermittivitySplit& split,
                                        double omega, double n_omega)
{
    check_frequency(omega);
    const double factor = thermal_factor(n_omega);
    const double strength = omega * omega * (split.eps_loss() - split.eps_gain());
    return HermitianTensor3::identity() * (factor * strength);
}

double bose_occupation(double omega, double n_ref, double omega_ref)
{
    check_frequency(omega);
    check_frequency(omega_ref);
    if (!(n_ref >= 0.0) || !std::isfinite(n_ref)) {
        throw DomainError("bose_occupation: reference occupation must be finite and >= 0");
    }
    if (n_ref == 0.0) {
        return 0.0;
    }
    const double beta = std::log1p(1.0 / n_ref) / omega_ref;
    return 1.0 / std::expm1(beta * omega);
}

} // namespace lindgain::correlations
