#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "helpers.hpp"
#include "lindgain/error.hpp"
#include "lindgain/greens.hpp"
#include "lindgain/special_functions.hpp"

using namespace lindgain;
using namespace lindgain::greens;

namespace {

// e^x K_n(x) from the integral representation, integrated independently of the library.
double scaled_bessel_k_oracle(int n, double x)
{
    auto f = [&](double t) { return std::exp(-x * (std::cosh(t) - 1.0)) * std::cosh(n * t); };
    double upper = 1.0;
    while (x * (std::cosh(upper) - 1.0) - n * upper < 60.0) {
        upper *= 1.5;
    }
    double err = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, upper, 15, 1e-14, &err);
    return value;
}

SlabMotionParams slab(double omega_sp, double v, double z_a, double g00 = 0.0)
{
    return SlabMotionParams{material::DrudeParams{omega_sp}, v, SubstrateGeometry{z_a}, g00};
}

double rel_diff_dominant(const Matrix3c& a, const Matrix3c& b)
{
    return testing::max_abs(a - b) / testing::max_abs(b);
}

} // namespace

TEST_CASE("bessel K against the integral representation")
{
    for (int n = 0; n <= 2; ++n) {
        for (double x = 0.05; x <= 100.0; x *= 1.13) {
            const double expected = scaled_bessel_k_oracle(n, x) * std::exp(-x);
            const double got = special::bessel_k(n, x);
            CAPTURE(n);
            CAPTURE(x);
            CHECK(std::abs(got - expected) <= 1e-10 * expected);
        }
    }
    CHECK(std::abs(special::bessel_k(0, 1.0) - 0.421024438) < 1e-9);
    CHECK(std::abs(special::bessel_k(1, 1.0) - 0.601907230) < 1e-9);
    CHECK(std::abs(special::bessel_k(2, 1.0) - (special::bessel_k(0, 1.0) + 2.0 * special::bessel_k(1, 1.0))) <
          1e-12);
}

TEST_CASE("bessel K large-argument behaviour and domain")
{
    for (int n = 0; n <= 2; ++n) {
        for (double x : {20.0, 35.0, 50.0, 80.0}) {
            const double lead = std::sqrt(M_PI / (2.0 * x)) * std::exp(-x);
            const double bound = 1.5 * std::abs(4.0 * n * n - 1.0) / (8.0 * x);
            CHECK(std::abs(special::bessel_k(n, x) / lead - 1.0) <= bound);
        }
    }
    CHECK(special::bessel_k(0, 800.0) >= 0.0);
    CHECK_THROWS_AS(special::bessel_k(0, 0.0), DomainError);
    CHECK_THROWS_AS(special::bessel_k(1, -1.0), DomainError);
    CHECK_THROWS_AS(special::bessel_k(3, 1.0), DomainError);
}

TEST_CASE("isotropic gain tensors")
{
    const SubstrateGeometry geom{1.0};
    const auto split = material::ScalarPermittivitySplit({-1.0, 0.2}, 0.3, -0.1);
    const auto t = isotropic_gain_tensors(split, geom);
    CHECK(std::abs(t.loss_tensor(0, 0).real() - 0.14921) < 1e-5);
    CHECK(std::abs(t.loss_tensor(2, 2).real() - 0.29842) < 1e-5);
    CHECK(std::abs(t.gain_tensor(0, 0).real() - 0.049736) < 1e-6);
    CHECK(std::abs(t.gain_tensor(2, 2).real() - 0.099472) < 1e-6);
    // independent closed form
    const double denom = std::norm(Complex(-1.0, 0.2) + 1.0) * 16.0 * M_PI;
    CHECK(std::abs(t.loss_tensor(1, 1).real() - 0.3 / denom) < 1e-14);
    CHECK(t.loss_tensor(2, 2) == 2.0 * t.loss_tensor(0, 0));
    CHECK(t.gain_tensor(2, 2) == 2.0 * t.gain_tensor(1, 1));

    const auto passive = isotropic_gain_tensors(material::ScalarPermittivitySplit({2.0, 0.4}, 0.4, 0.0), geom);
    CHECK(passive.gain_tensor.max_abs() == 0.0);
}

TEST_CASE("green's identity across substrates")
{
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> re(-4.0, 3.0), loss(0.0, 1.0), gain(-1.0, 0.0), z(0.2, 3.0);
    for (int k = 0; k < 20; ++k) {
        const auto split = material::ScalarPermittivitySplit::from_parts(re(rng), loss(rng), gain(rng));
        const SubstrateGeometry geom{z(rng)};
        const auto t = isotropic_gain_tensors(split, geom);
        const double lhs = testing::max_abs((t.loss_tensor - t.gain_tensor).matrix());
        CHECK(greens_identity_check(split, geom) <= 1e-12 * lhs);
    }
    CHECK(greens_identity_check(material::ScalarPermittivitySplit({-1.0, 0.2}, 0.3, -0.1),
                                SubstrateGeometry{1.0}) <= 1e-14);
}

TEST_CASE("moving slab exact tensors: structure and oracle")
{
    const auto p = slab(2.0, 0.2, 1.0);
    CHECK(p.k_loss() == doctest::Approx(-5.0));
    CHECK(p.k_gain() == doctest::Approx(15.0));
    const auto exact = moving_slab_tensors_exact(p);
    for (const auto* t : {&exact.loss_tensor, &exact.gain_tensor}) {
        const Matrix3c& m = t->matrix();
        CHECK(m(0, 1) == Complex(0.0));
        CHECK(m(1, 0) == Complex(0.0));
        CHECK(m(1, 2) == Complex(0.0));
        CHECK(m(2, 1) == Complex(0.0));
        CHECK(m(0, 2) == std::conj(m(2, 0)));
        CHECK(t->min_eigenvalue() >= -1e-12 * t->trace());
    }
    QuadratureDiagnostics diag;
    const auto oracle = moving_slab_quadrature_oracle(p, &diag);
    CHECK(rel_diff_dominant(exact.loss_tensor.matrix(), oracle.loss_tensor.matrix()) <= 1e-6);
    CHECK(rel_diff_dominant(exact.gain_tensor.matrix(), oracle.gain_tensor.matrix()) <= 1e-6);
    CHECK(diag.k_cutoff > 0.0);
}

TEST_CASE("moving slab exact vs oracle over a seeded sweep")
{
    std::mt19937 rng(314);
    std::uniform_real_distribution<double> wsp(0.5, 3.0), zz(0.5, 2.0), arg(5.0, 60.0);
    for (int k = 0; k < 10; ++k) {
        double omega_sp = wsp(rng);
        if (std::abs(omega_sp - 1.0) < 0.05) {
            omega_sp += 0.1;
        }
        const double z_a = zz(rng);
        // choose v so that the smaller argument lands in [5, 60]
        const double kmin_v = std::min(std::abs(1.0 - omega_sp), 1.0 + omega_sp);
        const double v = 2.0 * kmin_v * z_a / arg(rng);
        const auto p = slab(omega_sp, v, z_a);
        const auto exact = moving_slab_tensors_exact(p);
        const auto oracle = moving_slab_quadrature_oracle(p);
        CAPTURE(omega_sp);
        CAPTURE(v);
        CHECK(rel_diff_dominant(exact.loss_tensor.matrix(), oracle.loss_tensor.matrix()) <= 1e-6);
        CHECK(rel_diff_dominant(exact.gain_tensor.matrix(), oracle.gain_tensor.matrix()) <= 1e-6);
    }
}

TEST_CASE("quadrature integrand at k_y = 0")
{
    const double kx = -0.7, z = 1.3;
    const Matrix3c m = moving_slab_integrand(kx, 0.0, z);
    Vector3c u(Complex(0.0, kx), 0.0, -std::abs(kx));
    const Matrix3c expected = u * u.adjoint() * std::exp(-2.0 * std::abs(kx) * z) / std::abs(kx);
    CHECK(testing::max_abs(m - expected) < 1e-15);
}

TEST_CASE("moving slab handedness")
{
    // omega_a < omega_sp: loss has s = -1, gain has s = +1
    const auto below = moving_slab_tensors_exact(slab(2.0, 0.2, 1.0));
    CHECK(below.loss_tensor(0, 2).imag() > 0.0);
    CHECK(below.gain_tensor(0, 2).imag() < 0.0);
    // omega_a > omega_sp: loss has s = +1
    const auto above = moving_slab_tensors_exact(slab(0.5, 0.05, 1.0));
    CHECK(above.loss_tensor(0, 2).imag() < 0.0);
    CHECK(above.gain_tensor(0, 2).imag() < 0.0);
}

TEST_CASE("moving slab asymptotic tensors")
{
    const auto p = slab(2.0, 0.2, 1.0);
    const auto asym = moving_slab_tensors_asymptotic(p);
    const Eigen::Vector3d ev = asym.gain_tensor.eigenvalues();
    CHECK(std::abs(ev(1)) <= 1e-12 * ev(2));
    Eigen::SelfAdjointEigenSolver<Matrix3c> es(asym.gain_tensor.matrix());
    const Vector3c top = es.eigenvectors().col(2);
    const Vector3c circ = Vector3c(1.0, 0.0, Complex(0.0, 1.0)) / std::sqrt(2.0);
    CHECK(std::abs(std::abs(circ.dot(top)) - 1.0) <= 1e-10);

    // 2 |k| z = 50 on the gain channel
    const auto far = slab(2.0, 2.0 * 3.0 / 50.0, 1.0);
    CHECK(far.argument(far.k_gain()) == doctest::Approx(50.0));
    const auto ex = moving_slab_tensors_exact(far).gain_tensor.matrix();
    const auto as = moving_slab_tensors_asymptotic(far).gain_tensor.matrix();
    const double scale = ex.cwiseAbs().maxCoeff();
    for (auto [i, j] : {std::pair{0, 0}, {0, 2}, {2, 2}}) {
        CHECK(std::abs(as(i, j) - ex(i, j)) <= 0.02 * std::abs(ex(i, j)));
    }
    CHECK(std::abs(ex(1, 1)) < 0.05 * scale);

    CHECK_THROWS_AS(moving_slab_tensors_asymptotic(slab(2.0, 2.0, 1.0)), ValidityError);
}

TEST_CASE("moving slab validity guards")
{
    try {
        moving_slab_tensors_exact(slab(2.0, 200.0, 1.0));
        FAIL("expected ValidityError");
    } catch (const ValidityError& e) {
        CHECK(std::string(e.what()).find("loss") != std::string::npos);
    }
    CHECK_THROWS_AS(moving_slab_tensors_exact(slab(1.0, 0.2, 1.0)), DomainError);
}

TEST_CASE("background loss")
{
    const auto pair = moving_slab_tensors_asymptotic(slab(2.0, 0.2, 1.0));
    const auto same = add_background_loss(pair, 0.0);
    CHECK(testing::max_abs(same.loss_tensor.matrix() - pair.loss_tensor.matrix()) == 0.0);
    const auto shifted = add_background_loss(pair, 0.05);
    CHECK(testing::max_abs(shifted.loss_tensor.matrix() - pair.loss_tensor.matrix() -
                           0.05 * Matrix3c::Identity()) < 1e-15);
    CHECK(testing::max_abs(shifted.gain_tensor.matrix() - pair.gain_tensor.matrix()) == 0.0);
    CHECK_THROWS_AS(add_background_loss(pair, -0.1), DomainError);
}
