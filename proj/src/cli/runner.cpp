#include "lindgain/cli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "lindgain/cli/output.hpp"
#include "lindgain/error.hpp"

namespace lindgain::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void log(const RunOptions& opts, const std::string& message)
{
    if (!opts.quiet && opts.log != nullptr) {
        *opts.log << message << '\n';
    }
}

fs::path resolve_out_dir(const ScenarioConfig& cfg, const RunOptions& opts)
{
    fs::path dir = opts.out_dir ? *opts.out_dir : fs::path(cfg.output.dir);
    ensure_directory(dir);
    return dir;
}

// Plots never change the outcome of a data run.
void try_write_plot(const fs::path& path, const LinePlot& plot, const RunOptions& opts,
                    std::vector<fs::path>& written)
{
    try {
        write_text_file(path, render_svg(plot));
        written.push_back(path);
    } catch (const std::exception& e) {
        log(opts, std::string("warning: plot skipped: ") + e.what());
    }
}

json matrix_json(const Eigen::MatrixXcd& m)
{
    json re = json::array();
    json im = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json re_row = json::array();
        json im_row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            re_row.push_back(m(i, j).real() == 0.0 ? 0.0 : m(i, j).real());
            im_row.push_back(m(i, j).imag() == 0.0 ? 0.0 : m(i, j).imag());
        }
        re.push_back(re_row);
        im.push_back(im_row);
    }
    return {{"re", re}, {"im", im}};
}

json pair_json(const greens::InteractionTensorPair& p)
{
    return {{"loss", matrix_json(p.loss_tensor.matrix())},
            {"gain", matrix_json(p.gain_tensor.matrix())}};
}

// Runs f(i) for i in [0, n) and returns results in index order.
template <typename T, typename F>
std::vector<T> ordered_map(std::size_t n, bool parallel, F f)
{
    std::vector<std::optional<T>> slots(n);
    if (!parallel || n < 2) {
        for (std::size_t i = 0; i < n; ++i) {
            slots[i].emplace(f(i));
        }
    } else {
        const std::size_t workers =
            std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, n);
        std::vector<std::future<void>> jobs;
        for (std::size_t w = 0; w < workers; ++w) {
            jobs.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t i = w; i < n; i += workers) {
                    slots[i].emplace(f(i));
                }
            }));
        }
        for (auto& job : jobs) {
            job.get();
        }
    }
    std::vector<T> out;
    out.reserve(n);
    for (auto& s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

} // namespace

master::RatePair ScenarioModel::rate_pair() const
{
    return master::RatePair{std::max(rates.loss(0, 0).real(), 0.0),
                            std::max(rates.gain(0, 0).real(), 0.0)};
}

material::ScalarPermittivitySplit split_at(const IsotropicSubstrateEnv& env, double omega)
{
    if (env.dispersion.empty()) {
        return material::ScalarPermittivitySplit::from_parts(env.eps_re, env.eps_loss,
                                                             env.eps_gain);
    }
    const auto& table = env.dispersion;
    if (omega < table.front().omega - 1e-12 || omega > table.back().omega + 1e-12) {
        std::ostringstream msg;
        msg << "omega = " << omega << " lies outside the dispersion table ["
            << table.front().omega << ", " << table.back().omega << "]";
        throw DomainError(msg.str());
    }
    if (table.size() == 1) {
        const auto& r = table.front();
        return material::ScalarPermittivitySplit::from_parts(r.eps_re, r.eps_loss, r.eps_gain);
    }
    auto upper = std::upper_bound(table.begin(), table.end(), omega,
                                  [](double w, const DispersionRow& r) { return w < r.omega; });
    if (upper == table.end()) {
        --upper;
    }
    if (upper == table.begin()) {
        ++upper;
    }
    const auto& hi = *upper;
    const auto& lo = *(upper - 1);
    const double t = std::clamp((omega - lo.omega) / (hi.omega - lo.omega), 0.0, 1.0);
    auto lerp = [t](double a, double b) { return a + t * (b - a); };
    return material::ScalarPermittivitySplit::from_parts(
        lerp(lo.eps_re, hi.eps_re), lerp(lo.eps_loss, hi.eps_loss), lerp(lo.eps_gain, hi.eps_gain));
}

ScenarioModel build_model(const ScenarioConfig& cfg)
{
    ScenarioModel model;
    model.config = cfg;
    const master::ThermalOccupation occ{cfg.occupation};
    const bool two_level = cfg.model == master::QubitModel::TwoLevel;

    if (const auto* env = std::get_if<AbstractRatesEnv>(&cfg.environment)) {
        model.environment_kind = "abstract_rates";
        model.tensor_method = "user_supplied";
        model.rates = master::thermal_rates(master::RateMatrices{env->loss, env->gain}, occ);
    } else {
        if (const auto* iso = std::get_if<IsotropicSubstrateEnv>(&cfg.environment)) {
            model.environment_kind = "isotropic_substrate";
            model.tensor_method = "quasi_static_closed_form";
            const auto split = split_at(*iso, cfg.omega_a);
            model.stability_warning = split.stability_warning();
            model.tensors =
                greens::isotropic_gain_tensors(split, greens::SubstrateGeometry{iso->z_a});
        } else {
            const auto& slab = std::get<MovingSlabEnv>(cfg.environment);
            model.environment_kind = "moving_slab";
            const greens::SlabMotionParams params{material::DrudeParams{slab.omega_sp}, slab.v,
                                                  greens::SubstrateGeometry{slab.z_a}, slab.g00};
            if (slab.mode == SlabMode::Exact) {
                model.tensor_method = "bessel_closed_form";
                model.tensors = greens::moving_slab_tensors_exact(params);
            } else {
                model.tensor_method = "large_argument_asymptotic";
                model.tensors = greens::moving_slab_tensors_asymptotic(params);
            }
            model.tensors = greens::add_background_loss(*model.tensors, slab.g00);
        }
        model.thermal_tensors = master::thermal_tensors(*model.tensors, occ);
        const master::QubitSpec qubit{cfg.model, cfg.dipole, cfg.omega_a};
        if (two_level) {
            const auto pair = master::rates_two_level(qubit, *model.thermal_tensors);
            model.rates.loss = master::Matrix2c::Zero();
            model.rates.gain = master::Matrix2c::Zero();
            model.rates.loss(0, 0) = pair.gamma_loss;
            model.rates.gain(0, 0) = pair.gamma_gain;
        } else {
            model.rates = master::rate_matrices_v(qubit, *model.thermal_tensors);
        }
    }

    if (two_level) {
        model.generator = master::liouvillian_two_level(model.rate_pair(), cfg.omega_a);
    } else {
        model.generator = master::liouvillian_v(model.rates, cfg.omega_a);
    }
    return model;
}

bool is_linear_polarization(const master::RateMatrices& rates, double rel_tol)
{
    auto check = [rel_tol](const master::Matrix2c& m) {
        const double scale = m.cwiseAbs().maxCoeff();
        const double tol = rel_tol * std::max(scale, 1e-300);
        return std::abs(m(0, 0) - m(1, 1)) <= tol && std::abs(m(0, 1) - m(0, 0)) <= tol &&
               std::abs(m(1, 0) - m(0, 0)) <= tol;
    };
    return check(rates.loss) && check(rates.gain) && rates.loss(0, 0).real() > 0.0;
}

SteadyReport analyse_steady(const ScenarioModel& model)
{
    const auto& cfg = model.config;
    std::optional<master::DensityMatrix> rho0;
    if (cfg.evolution.initial_state) {
        rho0 = initial_density_matrix(cfg);
    }
    SteadyReport report{master::steady_state_kernel(model.generator, rho0), "none", false, {}, {}};
    const auto& rho = report.steady.rho.matrix();

    auto matches = [&](const Eigen::MatrixXcd& closed) {
        return (closed - rho).cwiseAbs().maxCoeff() <= 1e-8;
    };

    if (cfg.model == master::QubitModel::TwoLevel) {
        const auto pair = model.rate_pair();
        if (pair.gamma_loss + pair.gamma_gain > 0.0) {
            report.closed_form = "two_level";
            report.closed_form_match = matches(master::steady_two_level_closed(pair).matrix());
        }
        return report;
    }
    try {
        const auto closed = master::steady_v_closed(model.rates);
        report.closed_form = "v_closed";
        report.closed_form_match = matches(closed.matrix());
    } catch (const DegenerateKernelError&) {
        if (is_linear_polarization(model.rates)) {
            try {
                const master::RatePair pair{model.rates.loss(0, 0).real(),
                                            model.rates.gain(0, 0).real()};
                const auto fit = master::fit_linear_family_theta(report.steady.rho, pair);
                report.closed_form = "linear_family";
                report.theta = fit.theta;
                report.family_residual = fit.residual;
                report.closed_form_match = fit.residual <= master::kFamilyMembershipTolerance;
            } catch (const Error&) {
                report.closed_form = "linear_family";
                report.closed_form_match = false;
            }
        }
    }
    return report;
}

json steady_json(const ScenarioModel& model, const SteadyReport& report)
{
    const auto& rho = report.steady.rho;
    json populations = json::object();
    const auto labels = rho.labels();
    for (int i = 0; i < rho.levels(); ++i) {
        populations["rho_" + labels[i] + labels[i]] = rho.population(i);
    }
    json doc = {
        {"scenario", model.config.name},
        {"kernel_dim", report.steady.kernel_dim},
        {"levels", labels},
        {"rho", matrix_json(rho.matrix())},
        {"populations", populations},
        {"closed_form", report.closed_form},
        {"closed_form_match", report.closed_form_match},
        {"trace", rho.trace()},
        {"min_eigenvalue", rho.min_eigenvalue()},
    };
    if (report.theta) {
        doc["theta"] = *report.theta;
        doc["family_residual"] = *report.family_residual;
    }
    return doc;
}

json rates_json(const ScenarioModel& model)
{
    json doc = {
        {"scenario", model.config.name},
        {"provenance",
         {{"environment", model.environment_kind},
          {"tensor_method", model.tensor_method},
          {"units", "hbar = eps0 = omega_a = 1; rates in units of omega_a"},
          {"thermal_rule", "loss_th = (1+n) loss + n gain; gain_th = (1+n) gain + n loss"}}},
        {"occupation", model.config.occupation},
        {"stability_warning", model.stability_warning},
    };
    if (model.tensors) {
        doc["tensors"] = pair_json(*model.tensors);
        doc["thermal_tensors"] = pair_json(*model.thermal_tensors);
    }
    if (model.config.model == master::QubitModel::TwoLevel) {
        const auto pair = model.rate_pair();
        doc["rates"] = {{"gamma_loss", pair.gamma_loss}, {"gamma_gain", pair.gamma_gain}};
    } else {
        doc["rates"] = {{"loss", matrix_json(model.rates.loss)},
                        {"gain", matrix_json(model.rates.gain)}};
    }
    doc["generator"] = {{"trace_residual", model.generator.trace_residual()},
                        {"dimension", model.generator.matrix.rows()}};
    return doc;
}

std::vector<correlations::SpectralPoint> compute_spectrum(const ScenarioConfig& cfg,
                                                          double omega_min, double omega_max,
                                                          int n_points, bool parallel)
{
    const auto* iso = std::get_if<IsotropicSubstrateEnv>(&cfg.environment);
    if (iso == nullptr) {
        throw ConfigError("environment", "spectrum requires an isotropic_substrate environment");
    }
    if (n_points < 1) {
        throw ConfigError("--n", "must be >= 1");
    }
    if (!(omega_min > 0.0) || !(omega_max > omega_min)) {
        throw ConfigError("--omega-min", "require 0 < omega_min < omega_max");
    }
    const greens::SubstrateGeometry geom{iso->z_a};
    return ordered_map<correlations::SpectralPoint>(
        std::size_t(n_points), parallel, [&](std::size_t i) {
            const double omega =
                n_points == 1 ? omega_min
                              : omega_min + (omega_max - omega_min) * double(i) / (n_points - 1);
            const double n_omega = correlations::bose_occupation(omega, cfg.occupation, cfg.omega_a);
            return correlations::field_spectrum(split_at(*iso, omega), geom, omega, n_omega);
        });
}

std::string spectrum_csv(const std::vector<correlations::SpectralPoint>& points)
{
    std::ostringstream csv;
    csv << "omega,n_omega,s_xx,s_xy,s_xz,s_yx,s_yy,s_yz,s_zx,s_zy,s_zz\n";
    for (const auto& p : points) {
        csv << format_number(p.omega) << ',' << format_number(p.occupation);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                csv << ',' << format_number(p.tensor(i, j).real());
            }
        }
        csv << '\n';
    }
    return csv.str();
}

std::vector<double> fig3b_occupations(int n_points)
{
    std::vector<double> grid;
    for (int i = 0; i < n_points; ++i) {
        const double exponent = -2.0 + 5.0 * double(i) / (n_points - 1);
        grid.push_back(std::pow(10.0, exponent));
    }
    return grid;
}

std::vector<ThermalSweepRow> thermal_sweep(const ScenarioConfig& base,
                                           const std::vector<double>& occupations, bool parallel)
{
    return ordered_map<ThermalSweepRow>(occupations.size(), parallel, [&](std::size_t i) {
        ScenarioConfig cfg = base;
        cfg.occupation = occupations[i];
        const auto model = build_model(cfg);
        std::optional<master::DensityMatrix> rho0;
        if (cfg.evolution.initial_state) {
            rho0 = initial_density_matrix(cfg);
        }
        const auto steady = master::steady_state_kernel(model.generator, rho0);
        return ThermalSweepRow{occupations[i], steady.rho.population(0), steady.rho.population(1),
                               steady.rho.population(2)};
    });
}

std::string thermal_sweep_csv(const std::vector<ThermalSweepRow>& rows)
{
    std::ostringstream csv;
    csv << "occupation,rho_gg,rho_e1e1,rho_e2e2\n";
    for (const auto& r : rows) {
        csv << format_number(r.occupation) << ',' << format_number(r.rho_gg) << ','
            << format_number(r.rho_e1e1) << ',' << format_number(r.rho_e2e2) << '\n';
    }
    return csv.str();
}

std::vector<fs::path> run_evolve(const ScenarioConfig& cfg, const RunOptions& opts)
{
    const auto model = build_model(cfg);
    const auto rho0 = initial_density_matrix(cfg);
    const auto traj = master::evolve(model.generator, rho0, cfg.evolution.t_max,
                                     cfg.evolution.n_steps);
    const fs::path dir = resolve_out_dir(cfg, opts);
    std::vector<fs::path> written;

    if (cfg.output.format == OutputFormat::Csv) {
        const fs::path path = dir / "trajectory.csv";
        write_text_file(path, trajectory_csv(traj));
        written.push_back(path);
    } else {
        const std::string csv = trajectory_csv(traj);
        std::istringstream lines(csv);
        std::string header;
        std::getline(lines, header);
        json columns = json::array();
        std::istringstream hs(header);
        for (std::string col; std::getline(hs, col, ',');) {
            columns.push_back(col);
        }
        json rows = json::array();
        for (std::string line; std::getline(lines, line);) {
            json row = json::array();
            std::istringstream ls(line);
            for (std::string cell; std::getline(ls, cell, ',');) {
                row.push_back(std::stod(cell));
            }
            rows.push_back(row);
        }
        const fs::path path = dir / "trajectory.json";
        write_text_file(path, json{{"scenario", cfg.name}, {"columns", columns}, {"rows", rows}}
                                      .dump(2) + "\n");
        written.push_back(path);
    }
    if (cfg.output.plot) {
        try_write_plot(dir / "trajectory.svg", population_plot(traj, cfg.name), opts, written);
    }
    log(opts, "evolve: wrote " + std::to_string(traj.states.size()) + " states to " + dir.string());
    return written;
}

std::vector<fs::path> run_steady(const ScenarioConfig& cfg, const RunOptions& opts)
{
    const auto model = build_model(cfg);
    const auto report = analyse_steady(model);
    const fs::path dir = resolve_out_dir(cfg, opts);
    const fs::path path = dir / "steady.json";
    write_text_file(path, steady_json(model, report).dump(2) + "\n");
    log(opts, "steady: kernel dimension " + std::to_string(report.steady.kernel_dim));
    return {path};
}

std::vector<fs::path> run_rates(const ScenarioConfig& cfg, const RunOptions& opts)
{
    const auto model = build_model(cfg);
    const fs::path dir = resolve_out_dir(cfg, opts);
    const fs::path path = dir / "rates.json";
    write_text_file(path, rates_json(model).dump(2) + "\n");
    if (model.stability_warning) {
        log(opts, "warning: |eps''_G| >= eps''_L; the medium is typically unstable");
    }
    return {path};
}

std::vector<fs::path> run_spectrum(const ScenarioConfig& cfg, double omega_min, double omega_max,
                                   int n_points, const RunOptions& opts)
{
    const auto points = compute_spectrum(cfg, omega_min, omega_max, n_points, opts.parallel);
    const fs::path dir = resolve_out_dir(cfg, opts);
    const fs::path path = dir / "spectrum.csv";
    write_text_file(path, spectrum_csv(points));
    std::vector<fs::path> written{path};
    if (cfg.output.plot) {
        LinePlot plot;
        plot.title = cfg.name + " field spectral density";
        plot.x_label = "omega (omega_a)";
        plot.y_label = "S(omega)";
        PlotSeries xx{"s_xx", {}, "#1f77b4"};
        PlotSeries zz{"s_zz", {}, "#d62728"};
        for (const auto& p : points) {
            plot.x.push_back(p.omega);
            xx.y.push_back(p.tensor(0, 0).real());
            zz.y.push_back(p.tensor(2, 2).real());
        }
        plot.series = {xx, zz};
        try_write_plot(dir / "spectrum.svg", plot, opts, written);
    }
    return written;
}

std::vector<fs::path> run_figure(const std::string& name, const RunOptions& opts)
{
    const auto& names = figure_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw ConfigError("figure", "unknown figure '" + name + "'");
    }
    ScenarioConfig cfg = preset_config(name);
    const fs::path dir = resolve_out_dir(cfg, opts);
    std::vector<fs::path> written;

    if (name == "fig3b") {
        const auto rows = thermal_sweep(cfg, fig3b_occupations(), opts.parallel);
        const fs::path path = dir / "fig3b.csv";
        write_text_file(path, thermal_sweep_csv(rows));
        written.push_back(path);

        LinePlot plot;
        plot.title = "fig3b: steady-state populations vs occupation";
        plot.x_label = "N(omega_a)";
        plot.y_label = "population";
        plot.log_x = true;
        PlotSeries gg{"rho_gg", {}, "#2ca02c"};
        PlotSeries e1{"rho_e1e1", {}, "#1f77b4"};
        PlotSeries e2{"rho_e2e2", {}, "#1f77b4", true};
        for (const auto& r : rows) {
            plot.x.push_back(r.occupation);
            gg.y.push_back(r.rho_gg);
            e1.y.push_back(r.rho_e1e1);
            e2.y.push_back(r.rho_e2e2);
        }
        plot.series = {gg, e1, e2};
        try_write_plot(dir / "fig3b.svg", plot, opts, written);
    } else {
        const auto model = build_model(cfg);
        const auto traj = master::evolve(model.generator, initial_density_matrix(cfg),
                                         cfg.evolution.t_max, cfg.evolution.n_steps);
        const fs::path path = dir / (name + ".csv");
        write_text_file(path, trajectory_csv(traj));
        written.push_back(path);
        try_write_plot(dir / (name + ".svg"), population_plot(traj, name), opts, written);
    }
    log(opts, "figure " + name + ": wrote " + std::to_string(written.size()) + " files to " +
                  dir.string());
    return written;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Open-system dynamics of qubits near lossy and gain media", "lindgain"};
    app.require_subcommand(1);

    RunOptions opts;
    bool parallel = false;
    bool quiet = false;
    app.add_flag("--parallel", parallel, "Evaluate independent sweep points concurrently");
    app.add_flag("--quiet", quiet, "Suppress progress messages");

    std::string config_path;
    std::string out_dir;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Scenario JSON file")->required();
        sub->add_option("--out", out_dir, "Output directory (overrides output.dir)");
        sub->fallthrough();
    };

    auto* evolve = app.add_subcommand("evolve", "Integrate the master equation");
    add_common(evolve);
    auto* steady = app.add_subcommand("steady", "Steady state from the generator kernel");
    add_common(steady);
    auto* rates = app.add_subcommand("rates", "Environment tensors and decay rates");
    add_common(rates);

    double omega_min = 0.0;
    double omega_max = 0.0;
    int n_points = 0;
    auto* spectrum = app.add_subcommand("spectrum", "Field spectral density over a frequency grid");
    add_common(spectrum);
    spectrum->add_option("--omega-min", omega_min, "Lowest frequency")->required();
    spectrum->add_option("--omega-max", omega_max, "Highest frequency")->required();
    spectrum->add_option("--n", n_points, "Number of grid points")->required();

    std::string figure_name;
    auto* figure = app.add_subcommand("figure", "Reproduce a built-in figure scenario");
    figure->add_option("name", figure_name, "Figure name")
        ->required()
        ->check(CLI::IsMember(figure_names()));
    figure->add_option("--out", out_dir, "Output directory");
    figure->fallthrough();

    std::vector<const char*> argv{"lindgain"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitSuccess : kExitConfig;
    }

    opts.parallel = parallel;
    opts.quiet = quiet;
    opts.log = &err;
    if (!out_dir.empty()) {
        opts.out_dir = out_dir;
    }

    try {
        std::vector<fs::path> written;
        if (figure->parsed()) {
            written = run_figure(figure_name, opts);
        } else {
            const ScenarioConfig cfg = load_config(config_path);
            if (evolve->parsed()) {
                written = run_evolve(cfg, opts);
            } else if (steady->parsed()) {
                written = run_steady(cfg, opts);
            } else if (rates->parsed()) {
                written = run_rates(cfg, opts);
            } else {
                written = run_spectrum(cfg, omega_min, omega_max, n_points, opts);
            }
        }
        if (!quiet) {
            for (const auto& path : written) {
                out << path.string() << '\n';
            }
        }
        return kExitSuccess;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const MissingInitialStateError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNeedsInitialState;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

} // namespace lindgain::cli
