#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "lindgain/correlations.hpp"
#include "lindgain/error.hpp"

using namespace lindgain;
using namespace lindgain::correlations;

TEST_CASE("passive limit of the field spectrum")
{
    const greens::SubstrateGeometry geom{0.8};
    for (double n : {0.0, 0.3, 4.0}) {
        const Complex eps(-2.5, 0.4);
        const auto split = material::ScalarPermittivitySplit(eps, 0.4, 0.0);
        const auto active = field_spectrum(split, geom, 1.0, n);
        const auto passive = passive_field_spectrum(eps, geom, n);
        CHECK(testing::max_abs(active.tensor.matrix() - passive.matrix()) <=
              1e-10 * passive.max_abs());
    }
}

TEST_CASE("field spectrum prefactor")
{
    const greens::SubstrateGeometry geom{1.0};
    const auto split = material::ScalarPermittivitySplit({-1.0, 0.2}, 0.3, -0.1);
    const auto t = greens::isotropic_gain_tensors(split, geom);
    const auto zp = field_spectrum(split, geom, 1.0, 0.0);
    const Matrix3c expected = (2.0 / M_PI) * 0.5 * (t.loss_tensor + t.gain_tensor).matrix();
    CHECK(testing::max_abs(zp.tensor.matrix() - expected) == 0.0);
    const auto doubled = field_spectrum(split, geom, 1.0, 0.5);
    CHECK(testing::max_abs(doubled.tensor.matrix() - 2.0 * zp.tensor.matrix()) < 1e-15);
    CHECK(zp.tensor.is_psd());
}

TEST_CASE("consistency triangle with the reflected green's function")
{
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> re(-3.0, 2.0), l(0.05, 1.0), g(-1.0, 0.0), n(0.0, 3.0);
    for (int k = 0; k < 20; ++k) {
        const auto split = material::ScalarPermittivitySplit::from_parts(re(rng), l(rng), g(rng));
        const greens::SubstrateGeometry geom{1.1};
        const double occ = n(rng);
        const auto full = field_spectrum(split, geom, 1.0, occ);
        const auto gain = greens::isotropic_gain_tensors(split, geom).gain_tensor;
        const Matrix3c difference = full.tensor.matrix() - (2.0 / M_PI) * (occ + 0.5) * 2.0 * gain.matrix();
        const Matrix3c gr = greens::reflected_greens_coincident(split.eps(), geom);
        const Matrix3c analytic = (2.0 / M_PI) * (occ + 0.5) * (gr - gr.adjoint()) / Complex(0.0, 2.0);
        CHECK(testing::max_abs(difference - analytic) <= 1e-10 * testing::max_abs(analytic));
    }
}

TEST_CASE("noise current spectrum")
{
    const auto none = noise_current_spectrum(material::ScalarPermittivitySplit({2.0, 0.0}, 0.0, 0.0), 1.0, 0.0);
    CHECK(none.max_abs() == 0.0);
    const auto s = noise_current_spectrum(material::ScalarPermittivitySplit({-1.0, 0.2}, 0.3, -0.1), 1.0, 0.0);
    CHECK(testing::max_abs(s.matrix() - (0.4 / M_PI) * Matrix3c::Identity()) < 1e-15);
    CHECK(s(0, 0).real() == doctest::Approx(0.12732).epsilon(1e-4));
    // gain adds to the noise even though it reduces eps''
    const auto more = noise_current_spectrum(material::ScalarPermittivitySplit({-1.0, 0.1}, 0.3, -0.2), 1.0, 0.0);
    CHECK(more(0, 0).real() > s(0, 0).real());
    CHECK_THROWS_AS(noise_current_spectrum(material::ScalarPermittivitySplit({1.0, 0.0}, 0.0, 0.0), 0.0, 0.0),
                    DomainError);
}

TEST_CASE("bose occupation")
{
    CHECK(bose_occupation(1.0, 0.7) == doctest::Approx(0.7));
    CHECK(bose_occupation(3.0, 0.0) == 0.0);
    const double beta = std::log1p(1.0 / 0.7);
    CHECK(bose_occupation(2.0, 0.7) == doctest::Approx(1.0 / std::expm1(2.0 * beta)));
}
