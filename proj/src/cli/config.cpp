#include "lindgain/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace lindgain::cli {

using nlohmann::json;

namespace {

std::string join(const std::string& base, const std::string& key)
{
    return base.empty() ? key : base + "." + key;
}

std::string index_path(const std::string& base, std::size_t i)
{
    return base + "[" + std::to_string(i) + "]";
}

const json& require(const json& obj, const std::string& base, const std::string& key)
{
    if (!obj.is_object()) {
        throw ConfigError(base.empty() ? "<root>" : base, "expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        throw ConfigError(join(base, key), "required field is missing");
    }
    return *it;
}

const json* optional_field(const json& obj, const std::string& key)
{
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        return nullptr;
    }
    return &*it;
}

double as_number(const json& v, const std::string& path)
{
    if (!v.is_number()) {
        throw ConfigError(path, "expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw ConfigError(path, "expected a finite number");
    }
    return x;
}

double number_field(const json& obj, const std::string& base, const std::string& key)
{
    return as_number(require(obj, base, key), join(base, key));
}

double number_field_or(const json& obj, const std::string& base, const std::string& key,
                       double fallback)
{
    const json* v = optional_field(obj, key);
    return v ? as_number(*v, join(base, key)) : fallback;
}

double positive(double x, const std::string& path)
{
    if (!(x > 0.0)) {
        throw ConfigError(path, "must be positive");
    }
    return x;
}

double non_negative(double x, const std::string& path)
{
    if (!(x >= 0.0)) {
        throw ConfigError(path, "must be non-negative");
    }
    return x;
}

// A complex number is either a plain number or a [re, im] pair.
Complex as_complex(const json& v, const std::string& path)
{
    if (v.is_number()) {
        return {as_number(v, path), 0.0};
    }
    if (v.is_array() && v.size() == 2) {
        return {as_number(v[0], index_path(path, 0)), as_number(v[1], index_path(path, 1))};
    }
    throw ConfigError(path, "expected a number or a [re, im] pair");
}

master::MatrixXc as_complex_matrix(const json& v, const std::string& path, int n)
{
    // Either {"re": [[...]], "im": [[...]]} or rows of complex entries.
    master::MatrixXc m = master::MatrixXc::Zero(n, n);
    auto read_rows = [&](const json& rows, const std::string& p, auto&& assign) {
        if (!rows.is_array() || rows.size() != std::size_t(n)) {
            throw ConfigError(p, "expected " + std::to_string(n) + " rows");
        }
        for (int i = 0; i < n; ++i) {
            const json& row = rows[i];
            const std::string rp = index_path(p, i);
            if (!row.is_array() || row.size() != std::size_t(n)) {
                throw ConfigError(rp, "expected " + std::to_string(n) + " entries");
            }
            for (int j = 0; j < n; ++j) {
                assign(i, j, row[j], index_path(rp, j));
            }
        }
    };
    if (v.is_object()) {
        read_rows(require(v, path, "re"), join(path, "re"),
                  [&](int i, int j, const json& e, const std::string& p) {
                      m(i, j) += as_number(e, p);
                  });
        if (const json* im = optional_field(v, "im")) {
            read_rows(*im, join(path, "im"),
                      [&](int i, int j, const json& e, const std::string& p) {
                          m(i, j) += Complex{0.0, as_number(e, p)};
                      });
        }
        return m;
    }
    read_rows(v, path, [&](int i, int j, const json& e, const std::string& p) {
        m(i, j) = as_complex(e, p);
    });
    return m;
}

master::QubitModel parse_model(const json& v, const std::string& path)
{
    if (!v.is_string()) {
        throw ConfigError(path, "expected a string");
    }
    const auto s = v.get<std::string>();
    if (s == "two_level" || s == "TwoLevel") {
        return master::QubitModel::TwoLevel;
    }
    if (s == "v_shaped" || s == "VShaped") {
        return master::QubitModel::VShaped;
    }
    throw ConfigError(path, "unknown model '" + s + "' (expected two_level or v_shaped)");
}

IsotropicSubstrateEnv parse_isotropic(const json& s, const std::string& base)
{
    IsotropicSubstrateEnv env;
    env.eps_re = number_field(s, base, "eps_re");
    env.eps_loss = non_negative(number_field(s, base, "eps_loss"), join(base, "eps_loss"));
    env.eps_gain = number_field(s, base, "eps_gain");
    if (env.eps_gain > 0.0) {
        throw ConfigError(join(base, "eps_gain"), "must be <= 0");
    }
    if (const json* im = optional_field(s, "eps_im")) {
        const double eps_im = as_number(*im, join(base, "eps_im"));
        if (std::abs(eps_im - (env.eps_loss + env.eps_gain)) > 1e-12) {
            throw ConfigError(join(base, "eps_im"), "must equal eps_loss + eps_gain");
        }
    }
    env.z_a = positive(number_field(s, base, "z_a"), join(base, "z_a"));
    if (const json* table = optional_field(s, "dispersion")) {
        const std::string tp = join(base, "dispersion");
        if (!table->is_array() || table->empty()) {
            throw ConfigError(tp, "expected a non-empty array");
        }
        for (std::size_t i = 0; i < table->size(); ++i) {
            const json& row = (*table)[i];
            const std::string rp = index_path(tp, i);
            DispersionRow r{};
            r.omega = positive(number_field(row, rp, "omega"), join(rp, "omega"));
            r.eps_re = number_field(row, rp, "eps_re");
            r.eps_loss = non_negative(number_field(row, rp, "eps_loss"), join(rp, "eps_loss"));
            r.eps_gain = number_field(row, rp, "eps_gain");
            if (r.eps_gain > 0.0) {
                throw ConfigError(join(rp, "eps_gain"), "must be <= 0");
            }
            if (!env.dispersion.empty() && !(r.omega > env.dispersion.back().omega)) {
                throw ConfigError(join(rp, "omega"), "table must be strictly increasing in omega");
            }
            env.dispersion.push_back(r);
        }
    }
    return env;
}

MovingSlabEnv parse_slab(const json& s, const std::string& base)
{
    MovingSlabEnv env;
    env.omega_sp = positive(number_field(s, base, "omega_sp"), join(base, "omega_sp"));
    env.v = positive(number_field(s, base, "v"), join(base, "v"));
    env.z_a = positive(number_field(s, base, "z_a"), join(base, "z_a"));
    env.g00 = non_negative(number_field_or(s, base, "g00", 0.0), join(base, "g00"));
    if (const json* mode = optional_field(s, "mode")) {
        const std::string p = join(base, "mode");
        if (!mode->is_string()) {
            throw ConfigError(p, "expected \"exact\" or \"asymptotic\"");
        }
        const auto m = mode->get<std::string>();
        if (m == "exact") {
            env.mode = SlabMode::Exact;
        } else if (m == "asymptotic") {
            env.mode = SlabMode::Asymptotic;
        } else {
            throw ConfigError(p, "expected \"exact\" or \"asymptotic\"");
        }
    }
    return env;
}

master::Matrix2c parse_rate(const json& v, const std::string& path, master::QubitModel model)
{
    if (model == master::QubitModel::TwoLevel) {
        const double x = non_negative(as_number(v, path), path);
        master::Matrix2c m = master::Matrix2c::Zero();
        m(0, 0) = x;
        return m;
    }
    if (v.is_number()) {
        throw ConfigError(path, "V-shaped qubits need a 2x2 rate matrix");
    }
    return as_complex_matrix(v, path, 2);
}

AbstractRatesEnv parse_abstract(const json& s, const std::string& base, master::QubitModel model)
{
    AbstractRatesEnv env;
    env.loss = parse_rate(require(s, base, "gamma_l"), join(base, "gamma_l"), model);
    env.gain = parse_rate(require(s, base, "gamma_g"), join(base, "gamma_g"), model);
    if (model == master::QubitModel::VShaped) {
        try {
            master::check_kossakowski({env.loss, env.gain});
        } catch (const CompletePositivityError& e) {
            throw ConfigError(base, e.what());
        }
    }
    return env;
}

Environment parse_environment(const json& e, master::QubitModel model)
{
    const std::string base = "environment";
    if (!e.is_object()) {
        throw ConfigError(base, "expected an object");
    }
    const json* iso = optional_field(e, "isotropic_substrate");
    const json* slab = optional_field(e, "moving_slab");
    const json* rates = optional_field(e, "abstract_rates");
    const int count = int(iso != nullptr) + int(slab != nullptr) + int(rates != nullptr);
    if (count != 1) {
        throw ConfigError(base, "exactly one of isotropic_substrate, moving_slab, abstract_rates "
                                "is required");
    }
    if (iso) {
        return parse_isotropic(*iso, join(base, "isotropic_substrate"));
    }
    if (slab) {
        return parse_slab(*slab, join(base, "moving_slab"));
    }
    return parse_abstract(*rates, join(base, "abstract_rates"), model);
}

InitialState parse_initial(const json& v, const std::string& path, master::QubitModel model)
{
    const int n = model == master::QubitModel::TwoLevel ? 2 : 3;
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        const bool two = model == master::QubitModel::TwoLevel;
        const bool ok = s == "g" || (two && s == "e") ||
                        (!two && (s == "e1" || s == "e2" || s == "bright" || s == "dark"));
        if (!ok) {
            throw ConfigError(path, "unknown initial state '" + s + "' for this qubit model");
        }
        return {s, std::nullopt};
    }
    master::MatrixXc m = as_complex_matrix(v, path, n);
    const double tr = m.trace().real();
    if (!(tr > 0.0)) {
        throw ConfigError(path, "explicit initial state must have positive trace");
    }
    m /= tr;
    if (auto why = master::DensityMatrix::violation(m)) {
        throw ConfigError(path, *why);
    }
    return {"explicit", m};
}

} // namespace

ScenarioConfig parse_config(const json& doc)
{
    if (!doc.is_object()) {
        throw ConfigError("<root>", "expected a JSON object");
    }
    ScenarioConfig cfg;
    if (const json* name = optional_field(doc, "name")) {
        if (!name->is_string()) {
            throw ConfigError("name", "expected a string");
        }
        cfg.name = name->get<std::string>();
    }

    const json& qubit = require(doc, "", "qubit");
    cfg.model = parse_model(require(qubit, "qubit", "model"), "qubit.model");
    cfg.omega_a = positive(number_field_or(qubit, "qubit", "omega_a", 1.0), "qubit.omega_a");
    if (const json* dipole = optional_field(qubit, "dipole")) {
        if (!dipole->is_array() || dipole->size() != 3) {
            throw ConfigError("qubit.dipole", "expected 3 components");
        }
        for (int i = 0; i < 3; ++i) {
            cfg.dipole(i) = as_complex((*dipole)[i], index_path("qubit.dipole", i));
        }
        if (!(cfg.dipole.norm() > 0.0)) {
            throw ConfigError("qubit.dipole", "must be nonzero");
        }
    }

    cfg.environment = parse_environment(require(doc, "", "environment"), cfg.model);

    if (const json* thermal = optional_field(doc, "thermal")) {
        cfg.occupation = non_negative(number_field_or(*thermal, "thermal", "occupation", 0.0),
                                      "thermal.occupation");
    }

    if (const json* evo = optional_field(doc, "evolution")) {
        cfg.evolution.t_max =
            positive(number_field_or(*evo, "evolution", "t_max", cfg.evolution.t_max),
                     "evolution.t_max");
        const double steps = number_field_or(*evo, "evolution", "n_steps", cfg.evolution.n_steps);
        if (steps != std::floor(steps) || steps < 2 || steps > 1e8) {
            throw ConfigError("evolution.n_steps", "must be an integer >= 2");
        }
        cfg.evolution.n_steps = static_cast<int>(steps);
        if (const json* init = optional_field(*evo, "initial_state")) {
            cfg.evolution.initial_state =
                parse_initial(*init, "evolution.initial_state", cfg.model);
        }
    }

    if (const json* out = optional_field(doc, "output")) {
        if (const json* dir = optional_field(*out, "dir")) {
            if (!dir->is_string()) {
                throw ConfigError("output.dir", "expected a string");
            }
            cfg.output.dir = dir->get<std::string>();
        }
        if (const json* fmt = optional_field(*out, "format")) {
            const std::string f = fmt->is_string() ? fmt->get<std::string>() : "";
            if (f == "csv") {
                cfg.output.format = OutputFormat::Csv;
            } else if (f == "json") {
                cfg.output.format = OutputFormat::Json;
            } else {
                throw ConfigError("output.format", "expected \"csv\" or \"json\"");
            }
        }
        if (const json* plot = optional_field(*out, "plot")) {
            if (!plot->is_boolean()) {
                throw ConfigError("output.plot", "expected a boolean");
            }
            cfg.output.plot = plot->get<bool>();
        }
    }
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("<file>", "cannot open config file '" + path.string() + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("<file>", std::string("JSON syntax error: ") + e.what());
    }
    return parse_config(doc);
}

master::DensityMatrix initial_density_matrix(const ScenarioConfig& cfg)
{
    if (!cfg.evolution.initial_state) {
        throw ConfigError("evolution.initial_state", "required field is missing");
    }
    const InitialState& init = *cfg.evolution.initial_state;
    if (init.matrix) {
        return master::DensityMatrix{*init.matrix};
    }
    const int n = cfg.model == master::QubitModel::TwoLevel ? 2 : 3;
    master::VectorXc psi = master::VectorXc::Zero(n);
    if (init.name == "g") {
        psi(0) = 1.0;
    } else if (init.name == "e" || init.name == "e1") {
        psi(1) = 1.0;
    } else if (init.name == "e2") {
        psi(2) = 1.0;
    } else if (init.name == "bright") {
        psi(1) = psi(2) = 1.0;
    } else if (init.name == "dark") {
        psi(1) = 1.0;
        psi(2) = -1.0;
    } else {
        throw ConfigError("evolution.initial_state", "unknown initial state '" + init.name + "'");
    }
    return master::DensityMatrix::pure(psi);
}

const std::vector<std::string>& figure_names()
{
    static const std::vector<std::string> names{"fig2a", "fig2b", "fig2c", "fig3a", "fig3b"};
    return names;
}

ScenarioConfig preset_config(const std::string& name)
{
    ScenarioConfig cfg;
    cfg.name = name;
    cfg.model = master::QubitModel::VShaped;
    cfg.evolution.t_max = 500.0;
    cfg.evolution.n_steps = 2000;
    cfg.output.plot = true;

    if (name == "fig2a" || name == "fig2b" || name == "fig2c") {
        // Linear polarisation: every entry of each rate matrix equals the scalar rate.
        const double gamma_l = 0.1;
        const double gamma_g = 0.5 * gamma_l;
        cfg.environment = AbstractRatesEnv{master::Matrix2c::Constant(gamma_l),
                                           master::Matrix2c::Constant(gamma_g)};
        const char* init = name == "fig2a" ? "e1" : name == "fig2b" ? "bright" : "g";
        cfg.evolution.initial_state = InitialState{init, std::nullopt};
        return cfg;
    }
    if (name == "fig3a" || name == "fig3b") {
        const double loss11 = 0.1;
        const double gain11 = 0.75 * loss11;
        master::Matrix2c loss = master::Matrix2c::Zero();
        master::Matrix2c gain = master::Matrix2c::Zero();
        loss(0, 0) = loss11;
        loss(1, 1) = loss11 + gain11;
        gain(0, 0) = gain11;
        cfg.environment = AbstractRatesEnv{loss, gain};
        cfg.evolution.initial_state = InitialState{"e2", std::nullopt};
        return cfg;
    }
    throw ConfigError("figure", "unknown figure '" + name + "'");
}

} // namespace lindgain::cli
