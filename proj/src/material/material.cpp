#include "lindgain/material.hpp"

#include <cmath>
#include <sstream>

#include "lindgain/error.hpp"

namespace lindgain::material {

namespace {

constexpr double kResonanceGuard = 1e-12;

void check_resonance(Complex eps, const char* where)
{
    if (!std::isfinite(eps.real()) || !std::isfinite(eps.imag())) {
        throw ValidationError(std::string(where) + ": non-finite permittivity");
    }
    if (std::abs(eps + 1.0) <= kResonanceGuard) {
        std::ostringstream msg;
        msg << where << ": |eps + 1| = " << std::abs(eps + 1.0)
            << " at the surface plasmon resonance; quasi-static response is singular";
        throw ResonanceSingularityError(msg.str());
    }
}

} // namespace

ResponseSplit spectral_split(const HermitianTensor3& m)
{
    Eigen::SelfAdjointEigenSolver<Matrix3c> solver(m.matrix());
    const Eigen::Vector3d& lambda = solver.eigenvalues();
    const Matrix3c& v = solver.eigenvectors();

    const double zero_tol = 1e-12 * m.matrix().norm();
    Matrix3c loss = Matrix3c::Zero();
    Matrix3c gain = Matrix3c::Zero();
    for (int i = 0; i < 3; ++i) {
        const Matrix3c projector = v.col(i) * v.col(i).adjoint();
        if (lambda(i) < 0.0 && std::abs(lambda(i)) >= zero_tol) {
            gain += lambda(i) * projector;
        } else {
            loss += lambda(i) * projector;
        }
    }
    // Projector sums are Hermitian up to rounding.
    return {HermitianTensor3{loss, 1e-10 * (1.0 + m.max_abs())},
            HermitianTensor3{gain, 1e-10 * (1.0 + m.max_abs())}};
}

ResponseSplit spectral_split(const Matrix3c& m)
{
    return spectral_split(HermitianTensor3{m, 1e-12});
}

ScalarPermittivitySplit::ScalarPermittivitySplit(Complex eps, double eps_loss, double eps_gain)
    : eps_(eps), eps_loss_(eps_loss), eps_gain_(eps_gain)
{
    if (!std::isfinite(eps.real()) || !std::isfinite(eps.imag()) || !std::isfinite(eps_loss) ||
        !std::isfinite(eps_gain)) {
        throw ValidationError("ScalarPermittivitySplit: non-finite value");
    }
    if (eps_loss < 0.0) {
        throw ValidationError("ScalarPermittivitySplit: eps_loss must be >= 0");
    }
    if (eps_gain > 0.0) {
        throw ValidationError("ScalarPermittivitySplit: eps_gain must be <= 0");
    }
    if (std::abs(eps.imag() - (eps_loss + eps_gain)) > kTolerance) {
        std::ostringstream msg;
        msg << "ScalarPermittivitySplit: imag(eps) = " << eps.imag()
            << " differs from eps_loss + eps_gain = " << eps_loss + eps_gain;
        throw ValidationError(msg.str());
    }
}

ScalarPermittivitySplit ScalarPermittivitySplit::from_parts(double eps_real, double eps_loss,
                                                            double eps_gain)
{
    return ScalarPermittivitySplit{Complex{eps_real, eps_loss + eps_gain}, eps_loss, eps_gain};
}

DrudeParams::DrudeParams(double omega_sp_) : omega_sp(omega_sp_)
{
    if (!(omega_sp > 0.0) || !std::isfinite(omega_sp)) {
        throw DomainError("DrudeParams: omega_sp must be positive and finite");
    }
}

Complex drude_permittivity(double omega, const DrudeParams& p)
{
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw DomainError("drude_permittivity: omega must be positive");
    }
    return {1.0 - 2.0 * p.omega_sp * p.omega_sp / (omega * omega), 0.0};
}

Complex quasistatic_reflection(Complex eps)
{
    check_resonance(eps, "quasistatic_reflection");
    return (1.0 - eps) / (1.0 + eps);
}

ReflectionPair substrate_reflection_pair(Complex eps)
{
    check_resonance(eps, "substrate_reflection_pair");
    const Complex r = (eps - 1.0) / (eps + 1.0);
    return {r, 1.0 + r};
}

} // namespace lindgain::material
