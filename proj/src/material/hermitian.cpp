#include "lindgain/hermitian.hpp"

#include <algorithm>
#include <sstream>

#include "lindgain/error.hpp"

namespace lindgain {

double hermiticity_defect(const Matrix3c& m)
{
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianTensor3::HermitianTensor3(const Matrix3c& m, double tolerance)
{
    if (!m.allFinite()) {
        throw ValidationError("HermitianTensor3: non-finite entries");
    }
    const double defect = hermiticity_defect(m);
    if (defect > tolerance) {
        std::ostringstream msg;
        msg << "HermitianTensor3: input is not Hermitian (max |m - m^H| = " << defect
            << ", tolerance " << tolerance << ")";
        throw ValidationError(msg.str());
    }
    m_ = 0.5 * (m + m.adjoint());
}

HermitianTensor3 HermitianTensor3::diagonal(double xx, double yy, double zz)
{
    Matrix3c m = Matrix3c::Zero();
    m(0, 0) = xx;
    m(1, 1) = yy;
    m(2, 2) = zz;
    return HermitianTensor3{m, Unchecked{}};
}

Eigen::Vector3d HermitianTensor3::eigenvalues() const
{
    Eigen::SelfAdjointEigenSolver<Matrix3c> solver(m_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

bool HermitianTensor3::is_psd(double rel_tol) const
{
    const double scale = std::max(std::abs(trace()), max_abs());
    return min_eigenvalue() >= -rel_tol * scale;
}

HermitianTensor3 HermitianTensor3::operator+(const HermitianTensor3& o) const
{
    return HermitianTensor3{m_ + o.m_, Unchecked{}};
}

HermitianTensor3 HermitianTensor3::operator-(const HermitianTensor3& o) const
{
    return HermitianTensor3{m_ - o.m_, Unchecked{}};
}

HermitianTensor3 HermitianTensor3::operator*(double s) const
{
    return HermitianTensor3{s * m_, Unchecked{}};
}

Complex HermitianTensor3::sandwich(const Vector3c& left, const Vector3c& right) const
{
    return left.adjoint() * m_ * right;
}

} // namespace lindgain
