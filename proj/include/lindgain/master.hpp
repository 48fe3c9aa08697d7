#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lindgain/greens.hpp"
#include "lindgain/hermitian.hpp"

// Thermal Lindblad rates, Liouvillian superoperators, propagation and steady
// states for two-level and V-shaped qubits. hbar = 1; rates in units of omega_a.
//
// Vectorization is row-major over the declared level ordering: rho(i, j) sits
// at index dim * i + j, so vec(A rho B) = (A kron B^T) vec(rho).
namespace lindgain::master {

using Matrix2c = Eigen::Matrix2cd;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

enum class QubitModel { TwoLevel, VShaped };

/// Level structure and transition dipole. For VShaped the |e2> -> |g> dipole
/// is conj(dipole) by time reversal and is never stored.
class QubitSpec {
public:
    QubitSpec(QubitModel model, Vector3c dipole, double omega_a = 1.0);

    QubitModel model() const { return model_; }
    double omega_a() const { return omega_a_; }
    const Vector3c& dipole() const { return dipole_; }

    /// Number of levels: 2 or 3.
    int levels() const { return model_ == QubitModel::TwoLevel ? 2 : 3; }
    /// gamma_1 = dipole, gamma_2 = conj(dipole).
    Vector3c transition_dipole(int j) const;

private:
    QubitModel model_;
    Vector3c dipole_;
    double omega_a_;
};

/// Bose occupation N at the transition frequency; n = 0 is zero temperature.
struct ThermalOccupation {
    double n;

    explicit ThermalOccupation(double n);
};

/// Two-level decay and excitation rates.
struct RatePair {
    double gamma_loss;
    double gamma_gain;

    RatePair(double gamma_loss, double gamma_gain);
};

/// Kossakowski matrices of the V-shaped qubit: loss acts on lowering, gain on raising.
struct RateMatrices {
    Matrix2c loss;
    Matrix2c gain;
};

/// Smallest eigenvalue of a Hermitian 2x2 rate matrix after symmetrisation.
double min_eigenvalue(const Matrix2c& m);

/// Throws CompletePositivityError unless both matrices are Hermitian and PSD
/// (smallest eigenvalue >= -rel_tol * max |entry|).
void check_kossakowski(const RateMatrices& rates, double rel_tol = 1e-12);

std::vector<std::string> level_labels(int levels);

/// Hermitian, unit-trace, positive semidefinite state.
class DensityMatrix {
public:
    static constexpr double kHermiticityTolerance = 1e-12;
    static constexpr double kTraceTolerance = 1e-9;
    static constexpr double kPositivityTolerance = 1e-9;

    /// Throws ValidationError if any invariant fails.
    explicit DensityMatrix(MatrixXc rho);

    /// |psi><psi| / <psi|psi>.
    static DensityMatrix pure(const VectorXc& psi);
    /// Reshape of a row-major vectorised state.
    static DensityMatrix from_vec(const VectorXc& v);

    /// Description of the first violated invariant, or nullopt.
    static std::optional<std::string> violation(const MatrixXc& rho);

    const MatrixXc& matrix() const { return rho_; }
    Complex operator()(int i, int j) const { return rho_(i, j); }
    int levels() const { return static_cast<int>(rho_.rows()); }
    std::vector<std::string> labels() const { return level_labels(levels()); }

    VectorXc vec() const;
    double trace() const { return rho_.trace().real(); }
    double min_eigenvalue() const;
    double population(int i) const { return rho_(i, i).real(); }

private:
    MatrixXc rho_;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
};

/// Generator d vec(rho)/dt = matrix * vec(rho).
struct Liouvillian {
    MatrixXc matrix;
    std::vector<std::pair<int, int>> basis; // (bra, ket) level indices per row
    double omega_a = 1.0;

    int levels() const;
    /// ||vec(I)^H L|| / ||L||; zero for a trace-preserving generator.
    double trace_residual() const;
    /// max Re(lambda) / ||L||.
    double max_real_eigenvalue() const;
};

std::vector<std::pair<int, int>> row_major_basis(int levels);

// Thermal mixing

/// loss_th = (1+n) loss + n gain, gain_th = (1+n) gain + n loss.
greens::InteractionTensorPair thermal_tensors(const greens::InteractionTensorPair& pair,
                                              const ThermalOccupation& occ);

/// Same rule applied directly to zero-temperature rate matrices.
RateMatrices thermal_rates(const RateMatrices& rates, const ThermalOccupation& occ);
RatePair thermal_rates(const RatePair& rates, const ThermalOccupation& occ);

// Rates

/// Gamma_alpha = 2 gamma_e^H G_alpha,th gamma_e.
RatePair rates_two_level(const QubitSpec& q, const greens::InteractionTensorPair& pair_th);

/// Gamma_alpha,ij = 2 gamma_i^H G_alpha,th gamma_j with gamma_1 = gamma_e, gamma_2 = conj(gamma_e).
RateMatrices rate_matrices_v(const QubitSpec& q, const greens::InteractionTensorPair& pair_th);

// Generators

/// 4x4 generator over (gg, ge, eg, ee).
Liouvillian liouvillian_two_level(const RatePair& rates, double omega_a);

/// 9x9 generator over (g,e1,e2) x (g,e1,e2), row-major. Throws
/// CompletePositivityError for non-PSD Kossakowski matrices.
Liouvillian liouvillian_v(const RateMatrices& rates, double omega_a);

// Dynamics

/// Uniform grid of n_steps + 1 states from t = 0 to t_max, each step applying
/// exp(L dt). Throws NumericalInstabilityError when a state leaves the
/// density-matrix invariants.
Trajectory evolve(const Liouvillian& L, const DensityMatrix& rho0, double t_max, int n_steps);

struct SteadyState {
    DensityMatrix rho;
    int kernel_dim;
};

inline constexpr double kKernelTolerance = 1e-10;

/// Kernel of the generator: eigenvalues with |lambda| <= 1e-10 max|lambda|.
/// A degenerate kernel is resolved by biorthogonal projection of rho0.
SteadyState steady_state_kernel(const Liouvillian& L,
                                const std::optional<DensityMatrix>& rho0 = std::nullopt);

/// Number of eigenvalues of L within the kernel tolerance.
int kernel_dimension(const Liouvillian& L);

/// diag(Gamma_L, Gamma_G) / (Gamma_L + Gamma_G).
DensityMatrix steady_two_level_closed(const RatePair& rates);

/// Closed-form V-shaped steady state in terms of
///   A = L11 L22 - L12 L21
///   B = L11 G22 + L22 G11 - L12 G21 - L21 G12.
/// Throws DegenerateKernelError when A + B vanishes.
DensityMatrix steady_v_closed(const RateMatrices& rates);

/// One member of the linear-polarisation steady-state family.
struct LinearFamilyMember {
    Eigen::Matrix3cd rho;
    bool physical; // PSD; only guaranteed for theta in [-pi/4, pi/4]
};

/// theta in [-pi/4, pi/2]; Gamma_L > 0.
LinearFamilyMember steady_linear_family(double theta, const RatePair& rates);

struct LinearFamilyFit {
    double theta;
    double residual;
};

inline constexpr double kFamilyMembershipTolerance = 1e-8;

/// theta = atan2(Re rho_e1e2, rho_e1e1) and the max deviation from the family member.
LinearFamilyFit fit_linear_family_theta(const DensityMatrix& rho, const RatePair& rates);

} // namespace lindgain::master
