#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lindgain/correlations.hpp"
#include "lindgain/error.hpp"
#include "lindgain/greens.hpp"
#include "lindgain/master.hpp"
#include "lindgain/material.hpp"
#include "lindgain/special_functions.hpp"

namespace py = pybind11;
using namespace lindgain;

namespace {

using Pair = std::pair<Matrix3c, Matrix3c>;

Pair to_py(const greens::InteractionTensorPair& p)
{
    return {p.loss_tensor.matrix(), p.gain_tensor.matrix()};
}

greens::InteractionTensorPair from_py(const Matrix3c& loss, const Matrix3c& gain)
{
    return {HermitianTensor3{loss}, HermitianTensor3{gain}};
}

material::ScalarPermittivitySplit split(double eps_re, double eps_loss, double eps_gain)
{
    return material::ScalarPermittivitySplit::from_parts(eps_re, eps_loss, eps_gain);
}

greens::SlabMotionParams slab(double omega_sp, double v, double z_a, double g00)
{
    return greens::SlabMotionParams{material::DrudeParams{omega_sp}, v, greens::SubstrateGeometry{z_a}, g00};
}

master::Liouvillian generator(const Eigen::MatrixXcd& loss, const Eigen::MatrixXcd& gain, double omega_a)
{
    if (loss.rows() == 1 && loss.cols() == 1) {
        return master::liouvillian_two_level(master::RatePair{loss(0, 0).real(), gain(0, 0).real()},
                                             omega_a);
    }
    return master::liouvillian_v(master::RateMatrices{loss, gain}, omega_a);
}

} // namespace

PYBIND11_MODULE(_lindgain, m)
{
    m.doc() = "Qubit dynamics near lossy and gain media";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<ResonanceSingularityError>(m, "ResonanceSingularityError", base.ptr());
    py::register_exception<ValidityError>(m, "ValidityError", base.ptr());
    py::register_exception<CompletePositivityError>(m, "CompletePositivityError", base.ptr());
    py::register_exception<DegenerateKernelError>(m, "DegenerateKernelError", base.ptr());
    py::register_exception<MissingInitialStateError>(m, "MissingInitialStateError", base.ptr());
    py::register_exception<NumericalInstabilityError>(m, "NumericalInstabilityError", base.ptr());

    m.def(
        "spectral_split",
        [](const Matrix3c& h) {
            const auto s = material::spectral_split(h);
            return Pair{s.loss.matrix(), s.gain.matrix()};
        },
        py::arg("matrix"), "Split a Hermitian 3x3 response into (loss, gain) parts.");
    m.def("drude_permittivity",
          [](double omega, double omega_sp) {
              return material::drude_permittivity(omega, material::DrudeParams{omega_sp});
          },
          py::arg("omega"), py::arg("omega_sp"));
    m.def("quasistatic_reflection", &material::quasistatic_reflection, py::arg("eps"));
    m.def("bessel_k", &special::bessel_k, py::arg("n"), py::arg("x"));

    m.def("isotropic_gain_tensors",
          [](double eps_re, double eps_loss, double eps_gain, double z_a) {
              return to_py(greens::isotropic_gain_tensors(split(eps_re, eps_loss, eps_gain),
                                                          greens::SubstrateGeometry{z_a}));
          },
          py::arg("eps_re"), py::arg("eps_loss"), py::arg("eps_gain"), py::arg("z_a"));
    m.def("greens_identity_check",
          [](double eps_re, double eps_loss, double eps_gain, double z_a) {
              return greens::greens_identity_check(split(eps_re, eps_loss, eps_gain),
                                                   greens::SubstrateGeometry{z_a});
          },
          py::arg("eps_re"), py::arg("eps_loss"), py::arg("eps_gain"), py::arg("z_a"));
    m.def("moving_slab_tensors",
          [](double omega_sp, double v, double z_a, double g00, const std::string& mode) {
              const auto p = slab(omega_sp, v, z_a, g00);
              const auto pair = mode == "asymptotic" ? greens::moving_slab_tensors_asymptotic(p)
                                                     : greens::moving_slab_tensors_exact(p);
              return to_py(greens::add_background_loss(pair, g00));
          },
          py::arg("omega_sp"), py::arg("v"), py::arg("z_a"), py::arg("g00") = 0.0,
          py::arg("mode") = "exact");
    m.def("moving_slab_quadrature_oracle",
          [](double omega_sp, double v, double z_a) {
              return to_py(greens::moving_slab_quadrature_oracle(slab(omega_sp, v, z_a, 0.0)));
          },
          py::arg("omega_sp"), py::arg("v"), py::arg("z_a"));

    m.def("thermal_tensors",
          [](const Matrix3c& loss, const Matrix3c& gain, double n) {
              return to_py(master::thermal_tensors(from_py(loss, gain), master::ThermalOccupation{n}));
          },
          py::arg("loss"), py::arg("gain"), py::arg("occupation"));
    m.def("rate_matrices",
          [](const Matrix3c& loss, const Matrix3c& gain, const Vector3c& dipole, bool two_level) {
              const auto pair = from_py(loss, gain);
              if (two_level) {
                  const auto r = master::rates_two_level(
                      master::QubitSpec{master::QubitModel::TwoLevel, dipole}, pair);
                  return std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd>{
                      Eigen::MatrixXcd::Constant(1, 1, r.gamma_loss),
                      Eigen::MatrixXcd::Constant(1, 1, r.gamma_gain)};
              }
              const auto r = master::rate_matrices_v(master::QubitSpec{master::QubitModel::VShaped, dipole}, pair);
              return std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd>{r.loss, r.gain};
          },
          py::arg("loss"), py::arg("gain"), py::arg("dipole"), py::arg("two_level") = false,
          "Rates from interaction tensors; 1x1 matrices for a two-level qubit.");

    m.def("liouvillian",
          [](const Eigen::MatrixXcd& loss, const Eigen::MatrixXcd& gain, double omega_a) {
              return Eigen::MatrixXcd(generator(loss, gain, omega_a).matrix);
          },
          py::arg("loss"), py::arg("gain"), py::arg("omega_a") = 1.0,
          "Generator matrix; 1x1 rates give the two-level model, 2x2 the V-shaped one.");
    m.def("evolve",
          [](const Eigen::MatrixXcd& loss, const Eigen::MatrixXcd& gain, const Eigen::MatrixXcd& rho0,
             double t_max, int n_steps, double omega_a) {
              const auto traj = master::evolve(generator(loss, gain, omega_a), master::DensityMatrix{rho0},
                                               t_max, n_steps);
              std::vector<Eigen::MatrixXcd> states;
              for (const auto& s : traj.states) {
                  states.push_back(s.matrix());
              }
              return std::make_pair(traj.times, states);
          },
          py::arg("loss"), py::arg("gain"), py::arg("rho0"), py::arg("t_max"), py::arg("n_steps"),
          py::arg("omega_a") = 1.0);
    m.def("steady_state",
          [](const Eigen::MatrixXcd& loss, const Eigen::MatrixXcd& gain,
             const std::optional<Eigen::MatrixXcd>& rho0, double omega_a) {
              std::optional<master::DensityMatrix> init;
              if (rho0) {
                  init.emplace(*rho0);
              }
              const auto s = master::steady_state_kernel(generator(loss, gain, omega_a), init);
              return std::make_pair(Eigen::MatrixXcd(s.rho.matrix()), s.kernel_dim);
          },
          py::arg("loss"), py::arg("gain"), py::arg("rho0") = py::none(), py::arg("omega_a") = 1.0,
          "Kernel steady state and kernel dimension.");
    m.def("steady_v_closed",
          [](const master::Matrix2c& loss, const master::Matrix2c& gain) {
              return Eigen::MatrixXcd(master::steady_v_closed(master::RateMatrices{loss, gain}).matrix());
          },
          py::arg("loss"), py::arg("gain"));
    m.def("steady_linear_family",
          [](double theta, double gamma_loss, double gamma_gain) {
              const auto f = master::steady_linear_family(theta, master::RatePair{gamma_loss, gamma_gain});
              return std::make_pair(Matrix3c(f.rho), f.physical);
          },
          py::arg("theta"), py::arg("gamma_loss"), py::arg("gamma_gain"));

    m.def("field_spectrum",
          [](double eps_re, double eps_loss, double eps_gain, double z_a, double omega, double n) {
              return Matrix3c(correlations::field_spectrum(split(eps_re, eps_loss, eps_gain),
                                                           greens::SubstrateGeometry{z_a}, omega, n)
                                  .tensor.matrix());
          },
          py::arg("eps_re"), py::arg("eps_loss"), py::arg("eps_gain"), py::arg("z_a"), py::arg("omega"),
          py::arg("occupation"));
    m.def("noise_current_spectrum",
          [](double eps_re, double eps_loss, double eps_gain, double omega, double n) {
              return Matrix3c(
                  correlations::noise_current_spectrum(split(eps_re, eps_loss, eps_gain), omega, n).matrix());
          },
          py::arg("eps_re"), py::arg("eps_loss"), py::arg("eps_gain"), py::arg("omega"),
          py::arg("occupation"));
}
