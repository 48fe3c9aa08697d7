#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lindgain/cli/config.hpp"
#include "lindgain/correlations.hpp"
#include "lindgain/greens.hpp"
#include "lindgain/master.hpp"

namespace lindgain::cli {

/// Exit codes of the lindgain executable.
enum ExitCode : int {
    kExitSuccess = 0,
    kExitConfig = 2,
    kExitNeedsInitialState = 3,
    kExitNumerical = 4,
    kExitIo = 5,
};

struct RunOptions {
    std::optional<std::filesystem::path> out_dir; // overrides output.dir
    bool parallel = false;
    bool quiet = false;
    std::ostream* log = nullptr; // progress messages; nullptr or quiet silences them
};

/// Everything derived from a configuration: environment tensors (when the
/// environment is physical), thermal rates and the generator.
struct ScenarioModel {
    ScenarioConfig config;
    std::string environment_kind;
    std::string tensor_method;
    std::optional<greens::InteractionTensorPair> tensors;         // zero temperature
    std::optional<greens::InteractionTensorPair> thermal_tensors; // mixed with occupation
    bool stability_warning = false;
    master::RateMatrices rates; // thermal; two-level uses (0, 0)
    master::Liouvillian generator;

    master::RatePair rate_pair() const;
};

ScenarioModel build_model(const ScenarioConfig& cfg);

/// Scalar split at omega: the constant substrate values or the interpolated table.
material::ScalarPermittivitySplit split_at(const IsotropicSubstrateEnv& env, double omega);

/// True when the rate matrices have the linear-polarisation pattern
/// Gamma_11 = Gamma_22 = Gamma_12 (real) for both channels.
bool is_linear_polarization(const master::RateMatrices& rates, double rel_tol = 1e-10);

struct SteadyReport {
    master::SteadyState steady;
    std::string closed_form; // "two_level", "v_closed", "linear_family" or "none"
    bool closed_form_match = false;
    std::optional<double> theta;
    std::optional<double> family_residual;
};

SteadyReport analyse_steady(const ScenarioModel& model);

nlohmann::json steady_json(const ScenarioModel& model, const SteadyReport& report);
nlohmann::json rates_json(const ScenarioModel& model);

/// Spectrum grid: n points from omega_min to omega_max inclusive (just omega_min for n = 1).
std::vector<correlations::SpectralPoint> compute_spectrum(const ScenarioConfig& cfg,
                                                          double omega_min, double omega_max,
                                                          int n_points, bool parallel);
std::string spectrum_csv(const std::vector<correlations::SpectralPoint>& points);

struct ThermalSweepRow {
    double occupation;
    double rho_gg;
    double rho_e1e1;
    double rho_e2e2;
};

/// Occupation grid logarithmic from 1e-2 to 1e3.
std::vector<double> fig3b_occupations(int n_points = 64);
std::vector<ThermalSweepRow> thermal_sweep(const ScenarioConfig& base,
                                           const std::vector<double>& occupations, bool parallel);
std::string thermal_sweep_csv(const std::vector<ThermalSweepRow>& rows);

/// Commands. Each writes into the resolved output directory and returns the written files.
std::vector<std::filesystem::path> run_evolve(const ScenarioConfig& cfg, const RunOptions& opts);
std::vector<std::filesystem::path> run_steady(const ScenarioConfig& cfg, const RunOptions& opts);
std::vector<std::filesystem::path> run_rates(const ScenarioConfig& cfg, const RunOptions& opts);
std::vector<std::filesystem::path> run_spectrum(const ScenarioConfig& cfg, double omega_min,
                                                double omega_max, int n_points,
                                                const RunOptions& opts);
std::vector<std::filesystem::path> run_figure(const std::string& name, const RunOptions& opts);

/// Full command-line entry point; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lindgain::cli
