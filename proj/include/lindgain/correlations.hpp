#pragma once

#include "lindgain/greens.hpp"
#include "lindgain/hermitian.hpp"
#include "lindgain/material.hpp"

// Generalized fluctuation-dissipation spectra for the electric quasi-static
// sector of an isotropic substrate. hbar = eps0 = 1.
namespace lindgain::correlations {

/// Symmetrised unilateral field spectral density at one frequency.
struct SpectralPoint {
    double omega;
    double occupation;
    HermitianTensor3 tensor;
};

/// (2/pi)(N + 1/2) Re(G_L^NH(omega) + G_G^NH(omega)). The split must already
/// describe the medium at omega; this function does not model dispersion.
SpectralPoint field_spectrum(const material::ScalarPermittivitySplit& split_at_omega,
                             const greens::SubstrateGeometry& geom, double omega, double n_omega);

/// Passive-medium form (2/pi)(N + 1/2) Re[(G_e - G_e^H)/2i] built from the
/// reflected quasi-static Green's function at r = r' = r_a.
HermitianTensor3 passive_field_spectrum(Complex eps,
                                        const greens::SubstrateGeometry& geom, double n_omega);

/// Noise-current density (2/pi)(N + 1/2) omega^2 (eps''_L - eps''_G) 1.
/// Loss and gain add here although they subtract in eps''.
HermitianTensor3 noise_current_spectrum(const material::ScalarPermittivitySplit& split,
                                        double omega, double n_omega);

/// Bose occupation 1/(exp(beta omega) - 1) with beta fixed by the occupation
/// n_ref at omega_ref. n_ref = 0 gives 0 at every frequency.
double bose_occupation(double omega, double n_ref, double omega_ref = 1.0);

} // namespace lindgain::correlations
