#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lindgain/error.hpp"
#include "lindgain/master.hpp"

namespace lindgain::cli {

/// Invalid or missing configuration field; `path` is the dotted JSON path.
class ConfigError : public Error {
public:
    ConfigError(std::string path, const std::string& what)
        : Error(path + ": " + what), path_(std::move(path))
    {
    }
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// Output could not be written.
class IoError : public Error {
public:
    using Error::Error;
};

/// One row of a user-declared permittivity table, interpolated linearly in omega.
struct DispersionRow {
    double omega;
    double eps_re;
    double eps_loss;
    double eps_gain;
};

struct IsotropicSubstrateEnv {
    double eps_re;
    double eps_loss;
    double eps_gain;
    double z_a;
    std::vector<DispersionRow> dispersion; // empty: eps is frequency independent
};

enum class SlabMode { Exact, Asymptotic };

struct MovingSlabEnv {
    double omega_sp;
    double v;
    double z_a;
    double g00 = 0.0;
    SlabMode mode = SlabMode::Exact;
};

/// Zero-temperature rates supplied directly. Two-level qubits use the (0, 0)
/// entries only.
struct AbstractRatesEnv {
    master::Matrix2c loss;
    master::Matrix2c gain;
};

using Environment = std::variant<IsotropicSubstrateEnv, MovingSlabEnv, AbstractRatesEnv>;

struct InitialState {
    std::string name;                     // "g", "e", "e1", "e2", "bright", "dark" or "explicit"
    std::optional<master::MatrixXc> matrix; // set for "explicit"
};

struct EvolutionConfig {
    double t_max = 500.0;
    int n_steps = 2000;
    std::optional<InitialState> initial_state;
};

enum class OutputFormat { Csv, Json };

struct OutputConfig {
    std::string dir = ".";
    OutputFormat format = OutputFormat::Csv;
    bool plot = false;
};

struct ScenarioConfig {
    std::string name = "scenario";
    master::QubitModel model = master::QubitModel::VShaped;
    double omega_a = 1.0;
    Vector3c dipole = Vector3c(1.0, 0.0, 0.0);
    Environment environment;
    double occupation = 0.0;
    EvolutionConfig evolution;
    OutputConfig output;
};

/// Parses a scenario document. Throws ConfigError naming the offending field.
ScenarioConfig parse_config(const nlohmann::json& doc);

/// Reads and parses a JSON file; unreadable files and syntax errors are ConfigErrors.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Initial density matrix for the configured level structure.
master::DensityMatrix initial_density_matrix(const ScenarioConfig& cfg);

/// Built-in figure scenarios: fig2a, fig2b, fig2c, fig3a (fig3b shares fig3a's rates).
ScenarioConfig preset_config(const std::string& name);

const std::vector<std::string>& figure_names();

} // namespace lindgain::cli
