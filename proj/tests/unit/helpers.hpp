#pragma once

#include <random>

#include <Eigen/Dense>

#include "lindgain/hermitian.hpp"
#include "lindgain/master.hpp"

namespace testing {

inline Eigen::MatrixXcd random_complex(std::mt19937& rng, int n)
{
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m(i, j) = {g(rng), g(rng)};
        }
    }
    return m;
}

inline lindgain::Matrix3c random_hermitian3(std::mt19937& rng)
{
    const Eigen::MatrixXcd a = random_complex(rng, 3);
    return (a + a.adjoint()) / 2.0;
}

// B B^dagger scaled into (0, scale].
inline Eigen::Matrix2cd random_psd2(std::mt19937& rng, double scale = 1.0)
{
    const Eigen::MatrixXcd b = random_complex(rng, 2);
    Eigen::Matrix2cd m = b * b.adjoint();
    return m * (scale / m.cwiseAbs().maxCoeff());
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

// Dissipator applied directly to rho: sum_ab K_ab (A_b rho A_a^dagger - 1/2 {A_a^dagger A_b, rho}).
inline Eigen::MatrixXcd apply_dissipator(const Eigen::Matrix2cd& k,
                                         const std::vector<Eigen::MatrixXcd>& jumps,
                                         const Eigen::MatrixXcd& rho)
{
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const Eigen::MatrixXcd ad_b = jumps[a].adjoint() * jumps[b];
            out += k(a, b) * (jumps[b] * rho * jumps[a].adjoint() - 0.5 * (ad_b * rho + rho * ad_b));
        }
    }
    return out;
}

// Right-hand side of the V-shaped master equation evaluated without superoperators.
inline Eigen::MatrixXcd v_rhs(const lindgain::master::RateMatrices& r, double omega,
                              const Eigen::MatrixXcd& rho)
{
    std::vector<Eigen::MatrixXcd> lower(2, Eigen::MatrixXcd::Zero(3, 3));
    lower[0](0, 1) = 1.0;
    lower[1](0, 2) = 1.0;
    std::vector<Eigen::MatrixXcd> raise{lower[0].adjoint(), lower[1].adjoint()};
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(3, 3);
    h(1, 1) = omega;
    h(2, 2) = omega;
    const std::complex<double> i(0.0, 1.0);
    // gain: Gamma_G,ab [s_a+ rho s_b- - ...] is the dissipator with jumps s_a+ and matrix Gamma_G^T
    return -i * (h * rho - rho * h) + apply_dissipator(r.loss, lower, rho) +
           apply_dissipator(r.gain.transpose(), raise, rho);
}

inline Eigen::VectorXcd vec_row_major(const Eigen::MatrixXcd& m)
{
    Eigen::VectorXcd v(m.size());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            v(i * m.cols() + j) = m(i, j);
        }
    }
    return v;
}

} // namespace testing
