#pragma once

#include <complex>

#include <Eigen/Dense>

namespace lindgain {

using Complex = std::complex<double>;
using Matrix3c = Eigen::Matrix3cd;
using Vector3c = Eigen::Vector3cd;

/// Largest element-wise deviation |m - m^H|.
double hermiticity_defect(const Matrix3c& m);

/// 3x3 complex Hermitian tensor.
///
/// Construction rejects inputs whose element-wise deviation from their
/// conjugate transpose exceeds the tolerance, then stores the exactly
/// Hermitian part (m + m^H)/2.
class HermitianTensor3 {
public:
    static constexpr double kTolerance = 1e-12;

    HermitianTensor3() : m_(Matrix3c::Zero()) {}
    explicit HermitianTensor3(const Matrix3c& m, double tolerance = kTolerance);

    static HermitianTensor3 zero() { return HermitianTensor3{}; }
    static HermitianTensor3 identity() { return HermitianTensor3{Matrix3c::Identity()}; }
    static HermitianTensor3 diagonal(double xx, double yy, double zz);

    const Matrix3c& matrix() const { return m_; }
    Complex operator()(int i, int j) const { return m_(i, j); }

    /// Eigenvalues in ascending order.
    Eigen::Vector3d eigenvalues() const;
    double min_eigenvalue() const { return eigenvalues()(0); }
    double trace() const { return m_.trace().real(); }
    double max_abs() const { return m_.cwiseAbs().maxCoeff(); }

    /// Smallest eigenvalue >= -rel_tol * max(trace, max_abs).
    bool is_psd(double rel_tol = 1e-12) const;

    HermitianTensor3 operator+(const HermitianTensor3& o) const;
    HermitianTensor3 operator-(const HermitianTensor3& o) const;
    HermitianTensor3 operator*(double s) const;
    friend HermitianTensor3 operator*(double s, const HermitianTensor3& t) { return t * s; }

    /// gamma_i^H . T . gamma_j
    Complex sandwich(const Vector3c& left, const Vector3c& right) const;

private:
    struct Unchecked {};
    HermitianTensor3(const Matrix3c& m, Unchecked) : m_(m) {}

    Matrix3c m_;
};

} // namespace lindgain
