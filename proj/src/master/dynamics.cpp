#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "lindgain/error.hpp"
#include "lindgain/master.hpp"

namespace lindgain::master {

namespace {

MatrixXc unvec(const VectorXc& v, int n)
{
    MatrixXc rho(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            rho(i, j) = v(n * i + j);
        }
    }
    return rho;
}

MatrixXc hermitian_part(const MatrixXc& m)
{
    return 0.5 * (m + m.adjoint());
}

} // namespace

Trajectory evolve(const Liouvillian& L, const DensityMatrix& rho0, double t_max, int n_steps)
{
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw DomainError("evolve: t_max must be positive");
    }
    if (n_steps < 2) {
        throw DomainError("evolve: n_steps must be >= 2");
    }
    const int n = L.levels();
    if (rho0.levels() != n) {
        throw ValidationError("evolve: initial state dimension does not match the generator");
    }

    const double dt = t_max / n_steps;
    const MatrixXc step = (L.matrix * dt).exp();

    Trajectory traj;
    traj.times.reserve(n_steps + 1);
    traj.states.reserve(n_steps + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(rho0);

    VectorXc v = rho0.vec();
    for (int k = 1; k <= n_steps; ++k) {
        v = step * v;
        const MatrixXc rho = unvec(v, n);
        if (auto why = DensityMatrix::violation(rho)) {
            std::ostringstream msg;
            msg << "evolve: " << *why << " at step " << k << " (t = " << k * dt << ", dt = " << dt
                << ")";
            throw NumericalInstabilityError(msg.str());
        }
        traj.times.push_back(k * dt);
        traj.states.emplace_back(rho);
    }
    return traj;
}

int kernel_dimension(const Liouvillian& L)
{
    Eigen::ComplexEigenSolver<MatrixXc> solver(L.matrix, false);
    const Eigen::VectorXd magnitudes = solver.eigenvalues().cwiseAbs();
    const double largest = magnitudes.maxCoeff();
    if (largest == 0.0) {
        return static_cast<int>(magnitudes.size());
    }
    return static_cast<int>((magnitudes.array() <= kKernelTolerance * largest).count());
}

SteadyState steady_state_kernel(const Liouvillian& L, const std::optional<DensityMatrix>& rho0)
{
    const int n = L.levels();
    const int dim = kernel_dimension(L);
    if (dim == 0) {
        throw SpectralToleranceError(
            "steady_state_kernel: no eigenvalue within the kernel tolerance 1e-10 * max|lambda|");
    }

    // Kernel basis from the trailing singular vectors: L = U S V^H, so the last
    // columns of V span the right kernel and those of U the left kernel.
    Eigen::JacobiSVD<MatrixXc> svd(L.matrix, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const MatrixXc right = svd.matrixV().rightCols(dim);
    const MatrixXc left = svd.matrixU().rightCols(dim);

    MatrixXc rho;
    if (dim == 1) {
        const MatrixXc r = unvec(right.col(0), n);
        const Complex tr = r.trace();
        if (std::abs(tr) < 1e-300) {
            throw SpectralToleranceError("steady_state_kernel: kernel vector is traceless");
        }
        rho = hermitian_part(r / tr);
    } else {
        if (!rho0) {
            std::ostringstream msg;
            msg << "steady_state_kernel: kernel has dimension " << dim
                << "; an initial state is required to select the steady state";
            throw MissingInitialStateError(msg.str());
        }
        if (rho0->levels() != n) {
            throw ValidationError("steady_state_kernel: initial state dimension mismatch");
        }
        // Biorthogonal projector R (L^H R)^{-1} L^H onto the kernel.
        const MatrixXc overlap = left.adjoint() * right;
        const VectorXc coeffs = overlap.fullPivLu().solve(left.adjoint() * rho0->vec());
        rho = hermitian_part(unvec(right * coeffs, n));
    }
    if (auto why = DensityMatrix::violation(rho)) {
        throw SpectralToleranceError("steady_state_kernel: kernel state invalid: " + *why);
    }
    return {DensityMatrix{rho}, dim};
}

DensityMatrix steady_two_level_closed(const RatePair& rates)
{
    const double total = rates.gamma_loss + rates.gamma_gain;
    if (!(total > 0.0)) {
        throw DegenerateKernelError("steady_two_level_closed: both rates vanish");
    }
    MatrixXc rho = MatrixXc::Zero(2, 2);
    rho(0, 0) = rates.gamma_loss / total;
    rho(1, 1) = rates.gamma_gain / total;
    return DensityMatrix{rho};
}

DensityMatrix steady_v_closed(const RateMatrices& r)
{
    const Matrix2c& gl = r.loss;
    const Matrix2c& gg = r.gain;
    const Complex a = gl(0, 0) * gl(1, 1) - gl(0, 1) * gl(1, 0);
    const Complex b = gl(0, 0) * gg(1, 1) + gl(1, 1) * gg(0, 0) - gl(0, 1) * gg(1, 0) -
                      gl(1, 0) * gg(0, 1);
    const double scale = std::max(gl.cwiseAbs().maxCoeff(), gg.cwiseAbs().maxCoeff());
    const Complex sum = a + b;
    const Complex loss_trace = gl(0, 0) + gl(1, 1);
    if (std::abs(sum) <= 1e-12 * scale * scale || !(std::abs(loss_trace) > 1e-300)) {
        std::ostringstream msg;
        msg << "steady_v_closed: A + B = " << std::abs(sum)
            << " vanishes; the kernel is degenerate, use steady_state_kernel with an initial state";
        throw DegenerateKernelError(msg.str());
    }

    MatrixXc rho = MatrixXc::Zero(3, 3);
    rho(0, 0) = (a / sum).real();
    rho(1, 1) = (((gg(0, 0) - gg(1, 1)) * a + gl(1, 1) * b) / (sum * loss_trace)).real();
    rho(2, 2) = (((gg(1, 1) - gg(0, 0)) * a + gl(0, 0) * b) / (sum * loss_trace)).real();
    rho(1, 2) = (2.0 * gg(0, 1) * a - gl(0, 1) * b) / (sum * loss_trace);
    rho(2, 1) = std::conj(rho(1, 2));
    return DensityMatrix{rho};
}

LinearFamilyMember steady_linear_family(double theta, const RatePair& rates)
{
    constexpr double pi = std::numbers::pi;
    constexpr double slack = 1e-12;
    if (!(theta >= -pi / 4 - slack && theta <= pi / 2 + slack)) {
        throw DomainError("steady_linear_family: theta must lie in [-pi/4, pi/2]");
    }
    if (!(rates.gamma_loss > 0.0)) {
        throw DomainError("steady_linear_family: Gamma_L must be positive");
    }
    const double gl = rates.gamma_loss;
    const double gg = rates.gamma_gain;
    const double ground = gl * std::sqrt(2.0) * std::cos(theta - pi / 4);
    const double denom = ground + 2.0 * gg * std::cos(theta);
    if (!(std::abs(denom) > 0.0)) {
        throw DomainError("steady_linear_family: family member is undefined at this theta");
    }

    Eigen::Matrix3cd rho = Eigen::Matrix3cd::Zero();
    rho(0, 0) = ground / denom;
    rho(1, 1) = gg * std::cos(theta) / denom;
    rho(2, 2) = rho(1, 1);
    rho(1, 2) = gg * std::sin(theta) / denom;
    rho(2, 1) = rho(1, 2);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(rho, Eigen::EigenvaluesOnly);
    return {rho, solver.eigenvalues()(0) >= -1e-12};
}

LinearFamilyFit fit_linear_family_theta(const DensityMatrix& rho, const RatePair& rates)
{
    if (rho.levels() != 3) {
        throw ValidationError("fit_linear_family_theta: V-shaped state required");
    }
    const double pop = rho(1, 1).real();
    const double coherence = rho(1, 2).real();
    if (std::abs(pop) <= 1e-12 && std::abs(rho(1, 2)) > 1e-12) {
        throw ValidationError(
            "fit_linear_family_theta: rho_e1e1 vanishes with nonzero coherence; not a family member");
    }
    const double theta = std::atan2(coherence, pop);
    constexpr double pi = std::numbers::pi;
    if (theta < -pi / 4 - 1e-12 || theta > pi / 2 + 1e-12) {
        throw ValidationError("fit_linear_family_theta: fitted theta outside [-pi/4, pi/2]");
    }
    const LinearFamilyMember member = steady_linear_family(theta, rates);
    const double residual = (rho.matrix() - MatrixXc(member.rho)).cwiseAbs().maxCoeff();
    return {theta, residual};
}

} // namespace lindgain::master
