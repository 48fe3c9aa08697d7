#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "lindgain/error.hpp"
#include "lindgain/master.hpp"

namespace lindgain::master {

namespace {

// Row-major vectorization: vec(A rho B) = (A kron B^T) vec(rho).
MatrixXc left_right(const MatrixXc& a, const MatrixXc& b)
{
    return Eigen::kroneckerProduct(a, b.transpose()).eval();
}

MatrixXc left(const MatrixXc& a)
{
    return left_right(a, MatrixXc::Identity(a.rows(), a.cols()));
}

MatrixXc right(const MatrixXc& b)
{
    return left_right(MatrixXc::Identity(b.rows(), b.cols()), b);
}

// |g><e_j| on the (g, e1, e2) levels, j = 1, 2.
MatrixXc lowering(int j)
{
    MatrixXc s = MatrixXc::Zero(3, 3);
    s(0, j) = 1.0;
    return s;
}

} // namespace

std::vector<std::pair<int, int>> row_major_basis(int levels)
{
    std::vector<std::pair<int, int>> basis;
    for (int i = 0; i < levels; ++i) {
        for (int j = 0; j < levels; ++j) {
            basis.emplace_back(i, j);
        }
    }
    return basis;
}

int Liouvillian::levels() const
{
    return static_cast<int>(std::lround(std::sqrt(double(basis.size()))));
}

double Liouvillian::trace_residual() const
{
    const int n = levels();
    VectorXc trace_row = VectorXc::Zero(n * n);
    for (int i = 0; i < n; ++i) {
        trace_row(n * i + i) = 1.0;
    }
    const double norm = matrix.norm();
    if (norm == 0.0) {
        return 0.0;
    }
    return (trace_row.adjoint() * matrix).norm() / norm;
}

double Liouvillian::max_real_eigenvalue() const
{
    const double norm = matrix.norm();
    if (norm == 0.0) {
        return 0.0;
    }
    Eigen::ComplexEigenSolver<MatrixXc> solver(matrix, false);
    return solver.eigenvalues().real().maxCoeff() / norm;
}

Liouvillian liouvillian_two_level(const RatePair& rates, double omega_a)
{
    const double gl = rates.gamma_loss;
    const double gg = rates.gamma_gain;
    const Complex i{0.0, 1.0};
    MatrixXc m = MatrixXc::Zero(4, 4);
    m(0, 0) = -gg;
    m(0, 3) = gl;
    m(1, 1) = -0.5 * (gl + gg) + i * omega_a;
    m(2, 2) = -0.5 * (gl + gg) - i * omega_a;
    m(3, 0) = gg;
    m(3, 3) = -gl;
    return {m, row_major_basis(2), omega_a};
}

Liouvillian liouvillian_v(const RateMatrices& rates, double omega_a)
{
    check_kossakowski(rates);

    MatrixXc hamiltonian = MatrixXc::Zero(3, 3);
    hamiltonian(1, 1) = omega_a;
    hamiltonian(2, 2) = omega_a;
    const Complex i{0.0, 1.0};
    MatrixXc m = -i * (left(hamiltonian) - right(hamiltonian));

    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const MatrixXc lower_a = lowering(a + 1);
            const MatrixXc lower_b = lowering(b + 1);
            const MatrixXc raise_a = lower_a.adjoint();
            const MatrixXc raise_b = lower_b.adjoint();

            // Loss: Gamma_L,ab [ s_b- rho s_a+ - {s_a+ s_b-, rho}/2 ]
            const MatrixXc loss_product = raise_a * lower_b;
            m += rates.loss(a, b) * (left_right(lower_b, raise_a) - 0.5 * left(loss_product) -
                                     0.5 * right(loss_product));

            // Gain: Gamma_G,ab [ s_a+ rho s_b- - {s_b- s_a+, rho}/2 ]
            const MatrixXc gain_product = lower_b * raise_a;
            m += rates.gain(a, b) * (left_right(raise_a, lower_b) - 0.5 * left(gain_product) -
                                     0.5 * right(gain_product));
        }
    }
    return {m, row_major_basis(3), omega_a};
}

} // namespace lindgain::master
