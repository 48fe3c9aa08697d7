#include <cmath>
#include <sstream>

#include "lindgain/error.hpp"
#include "lindgain/master.hpp"

namespace lindgain::master {

QubitSpec::QubitSpec(QubitModel model, Vector3c dipole, double omega_a)
    : model_(model), dipole_(std::move(dipole)), omega_a_(omega_a)
{
    if (!dipole_.allFinite() || !(dipole_.norm() > 0.0)) {
        throw ValidationError("QubitSpec: transition dipole must be finite and nonzero");
    }
    if (!(omega_a_ > 0.0) || !std::isfinite(omega_a_)) {
        throw DomainError("QubitSpec: omega_a must be positive");
    }
}

Vector3c QubitSpec::transition_dipole(int j) const
{
    if (j == 1) {
        return dipole_;
    }
    if (j == 2 && model_ == QubitModel::VShaped) {
        return dipole_.conjugate();
    }
    throw DomainError("QubitSpec: no such transition");
}

ThermalOccupation::ThermalOccupation(double n_) : n(n_)
{
    if (!(n >= 0.0) || !std::isfinite(n)) {
        throw DomainError("ThermalOccupation: occupation must be finite and >= 0");
    }
}

RatePair::RatePair(double loss, double gain) : gamma_loss(loss), gamma_gain(gain)
{
    if (!(loss >= 0.0) || !(gain >= 0.0) || !std::isfinite(loss) || !std::isfinite(gain)) {
        throw ValidationError("RatePair: rates must be finite and >= 0");
    }
}

double min_eigenvalue(const Matrix2c& m)
{
    const Matrix2c h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix2c> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

void check_kossakowski(const RateMatrices& rates, double rel_tol)
{
    auto check = [rel_tol](const Matrix2c& m, const char* name) {
        if (!m.allFinite()) {
            throw CompletePositivityError(std::string("rate matrix ") + name + " is not finite");
        }
        const double scale = m.cwiseAbs().maxCoeff();
        const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
        if (defect > rel_tol * std::max(scale, 1e-300) && defect > 1e-14) {
            std::ostringstream msg;
            msg << "rate matrix " << name << " is not Hermitian (defect " << defect << ")";
            throw CompletePositivityError(msg.str());
        }
        const double lambda = min_eigenvalue(m);
        if (lambda < -rel_tol * scale) {
            std::ostringstream msg;
            msg << "Kossakowski matrix " << name
                << " is not positive semidefinite (smallest eigenvalue " << lambda << ")";
            throw CompletePositivityError(msg.str());
        }
    };
    check(rates.loss, "loss");
    check(rates.gain, "gain");
}

std::vector<std::string> level_labels(int levels)
{
    if (levels == 2) {
        return {"g", "e"};
    }
    return {"g", "e1", "e2"};
}

std::optional<std::string> DensityMatrix::violation(const MatrixXc& rho)
{
    std::ostringstream msg;
    if (rho.rows() != rho.cols() || (rho.rows() != 2 && rho.rows() != 3)) {
        msg << "density matrix must be 2x2 or 3x3, got " << rho.rows() << "x" << rho.cols();
        return msg.str();
    }
    if (!rho.allFinite()) {
        return std::string("density matrix has non-finite entries");
    }
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermiticityTolerance) {
        msg << "hermiticity violated (max |rho - rho^H| = " << herm << ")";
        return msg.str();
    }
    const double trace_drift = std::abs(rho.trace() - 1.0);
    if (trace_drift > kTraceTolerance) {
        msg << "trace violated (|Tr rho - 1| = " << trace_drift << ")";
        return msg.str();
    }
    const MatrixXc h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<MatrixXc> solver(h, Eigen::EigenvaluesOnly);
    const double lambda = solver.eigenvalues()(0);
    if (lambda < -kPositivityTolerance) {
        msg << "positivity violated (min eigenvalue = " << lambda << ")";
        return msg.str();
    }
    return std::nullopt;
}

DensityMatrix::DensityMatrix(MatrixXc rho) : rho_(std::move(rho))
{
    if (auto why = violation(rho_)) {
        throw ValidationError("DensityMatrix: " + *why);
    }
}

DensityMatrix DensityMatrix::pure(const VectorXc& psi)
{
    const double norm2 = psi.squaredNorm();
    if (!(norm2 > 0.0)) {
        throw ValidationError("DensityMatrix::pure: zero state vector");
    }
    return DensityMatrix{psi * psi.adjoint() / norm2};
}

DensityMatrix DensityMatrix::from_vec(const VectorXc& v)
{
    const auto n = static_cast<Eigen::Index>(std::lround(std::sqrt(double(v.size()))));
    if (n * n != v.size()) {
        throw ValidationError("DensityMatrix::from_vec: length is not a perfect square");
    }
    MatrixXc rho(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            rho(i, j) = v(n * i + j);
        }
    }
    return DensityMatrix{rho};
}

VectorXc DensityMatrix::vec() const
{
    const Eigen::Index n = rho_.rows();
    VectorXc v(n * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            v(n * i + j) = rho_(i, j);
        }
    }
    return v;
}

double DensityMatrix::min_eigenvalue() const
{
    const MatrixXc h = 0.5 * (rho_ + rho_.adjoint());
    Eigen::SelfAdjointEigenSolver<MatrixXc> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

} // namespace lindgain::master
