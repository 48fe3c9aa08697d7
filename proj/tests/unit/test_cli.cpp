#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "lindgain/cli/config.hpp"
#include "lindgain/cli/output.hpp"
#include "lindgain/cli/runner.hpp"

using namespace lindgain;
using namespace lindgain::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json substrate_doc()
{
    return json::parse(R"({
        "name": "substrate",
        "qubit": {"model": "two_level", "dipole": [1, 0, 0]},
        "environment": {"isotropic_substrate": {"eps_re": -1.0, "eps_loss": 0.3, "eps_gain": -0.1, "z_a": 1.0}},
        "thermal": {"occupation": 0.0},
        "evolution": {"t_max": 50, "n_steps": 100, "initial_state": "g"}
    })");
}

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("lindgain_test_" + name);
    fs::remove_all(dir);
    return dir;
}

int run(const std::vector<std::string>& args, std::string* err_text = nullptr)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    if (err_text) {
        *err_text = err.str();
    }
    return code;
}

} // namespace

TEST_CASE("config parsing")
{
    const auto cfg = parse_config(substrate_doc());
    CHECK(cfg.model == master::QubitModel::TwoLevel);
    CHECK(std::holds_alternative<IsotropicSubstrateEnv>(cfg.environment));
    CHECK(cfg.evolution.n_steps == 100);

    auto missing = substrate_doc();
    missing["environment"]["isotropic_substrate"].erase("z_a");
    try {
        parse_config(missing);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.path() == "environment.isotropic_substrate.z_a");
    }

    auto two_envs = substrate_doc();
    two_envs["environment"]["moving_slab"] = {{"omega_sp", 2.0}, {"v", 0.2}, {"z_a", 1.0}};
    CHECK_THROWS_AS(parse_config(two_envs), ConfigError);

    auto bad_gain = substrate_doc();
    bad_gain["environment"]["isotropic_substrate"]["eps_gain"] = 0.1;
    CHECK_THROWS_AS(parse_config(bad_gain), ConfigError);

    auto bad_rates = json::parse(R"({
        "qubit": {"model": "v_shaped"},
        "environment": {"abstract_rates": {"gamma_l": [[1, 2], [2, 1]], "gamma_g": [[0, 0], [0, 0]]}}
    })");
    CHECK_THROWS_AS(parse_config(bad_rates), ConfigError);
}

TEST_CASE("substrate scenario rates and steady state")
{
    const auto model = build_model(parse_config(substrate_doc()));
    const auto pair = model.rate_pair();
    CHECK(std::abs(pair.gamma_loss - 0.29842) < 1e-5);
    const auto report = analyse_steady(model);
    CHECK(report.closed_form == "two_level");
    CHECK(report.closed_form_match);
    CHECK(std::abs(report.steady.rho.population(1) - 0.25) < 1e-10);
    const auto rates = rates_json(model);
    CHECK(rates["provenance"]["environment"] == "isotropic_substrate");
    CHECK(rates["stability_warning"] == false);
}

TEST_CASE("linear-polarization steady state needs an initial state")
{
    ScenarioConfig cfg = preset_config("fig2a");
    cfg.evolution.initial_state.reset();
    const auto model = build_model(cfg);
    CHECK_THROWS_AS(analyse_steady(model), MissingInitialStateError);

    const auto with_init = analyse_steady(build_model(preset_config("fig2b")));
    CHECK(with_init.closed_form == "linear_family");
    CHECK(with_init.closed_form_match);
    CHECK(*with_init.theta == doctest::Approx(M_PI / 4.0));
}

TEST_CASE("command line exit codes")
{
    const fs::path dir = scratch("cli");
    fs::create_directories(dir);
    auto missing = substrate_doc();
    missing["environment"]["isotropic_substrate"].erase("z_a");
    std::ofstream(dir / "missing.json") << missing.dump();
    std::string err;
    CHECK(run({"steady", "--config", (dir / "missing.json").string()}, &err) == kExitConfig);
    CHECK(err.find("environment.isotropic_substrate.z_a") != std::string::npos);

    auto no_init = json::parse(R"({
        "qubit": {"model": "v_shaped"},
        "environment": {"abstract_rates": {"gamma_l": [[0.1, 0.1], [0.1, 0.1]], "gamma_g": [[0.05, 0.05], [0.05, 0.05]]}}
    })");
    std::ofstream(dir / "noinit.json") << no_init.dump();
    CHECK(run({"--quiet", "steady", "--config", (dir / "noinit.json").string(), "--out",
               (dir / "out").string()}) == kExitNeedsInitialState);

    auto slab = json::parse(R"({
        "qubit": {"model": "v_shaped"},
        "environment": {"moving_slab": {"omega_sp": 2.0, "v": 200.0, "z_a": 1.0}}
    })");
    std::ofstream(dir / "slab.json") << slab.dump();
    CHECK(run({"--quiet", "rates", "--config", (dir / "slab.json").string()}) == kExitNumerical);

    std::ofstream(dir / "ok.json") << substrate_doc().dump();
    std::ofstream(dir / "blocker") << "x";
    CHECK(run({"--quiet", "rates", "--config", (dir / "ok.json").string(), "--out",
               (dir / "blocker" / "sub").string()}) == kExitIo);

    CHECK(run({"figure", "fig9"}) == kExitConfig);
    CHECK(run({"--bogus"}) == kExitConfig);
    CHECK(run({"--quiet", "rates", "--config", (dir / "ok.json").string(), "--out",
               (dir / "out").string()}) == kExitSuccess);
    CHECK(fs::exists(dir / "out" / "rates.json"));
    CHECK(run({"--quiet", "spectrum", "--config", (dir / "ok.json").string(), "--omega-min", "0.5",
               "--omega-max", "1.5", "--n", "11", "--out", (dir / "out").string()}) == kExitSuccess);
    const std::string spectrum = read_file(dir / "out" / "spectrum.csv");
    CHECK(spectrum.rfind("omega,n_omega,s_xx,s_xy,s_xz,s_yx,s_yy,s_yz,s_zx,s_zy,s_zz\n", 0) == 0);
    CHECK(std::count(spectrum.begin(), spectrum.end(), '\n') == 12);
}

TEST_CASE("dispersion table interpolation")
{
    IsotropicSubstrateEnv env{-1.0, 0.3, -0.1, 1.0,
                              {{0.5, -2.0, 0.2, -0.1}, {1.5, 0.0, 0.4, -0.3}}};
    const auto mid = split_at(env, 1.0);
    CHECK(mid.eps().real() == doctest::Approx(-1.0));
    CHECK(mid.eps_loss() == doctest::Approx(0.3));
    CHECK(mid.eps_gain() == doctest::Approx(-0.2));
    CHECK_THROWS_AS(split_at(env, 2.0), DomainError);
}

TEST_CASE("presets are deterministic and parallel sweeps match serial ones")
{
    for (const std::string name : {"fig2c", "fig3b"}) {
        const fs::path a = scratch(name + "_a"), b = scratch(name + "_b");
        RunOptions oa, ob;
        oa.out_dir = a;
        ob.out_dir = b;
        ob.parallel = true;
        run_figure(name, oa);
        run_figure(name, ob);
        CHECK(read_file(a / (name + ".csv")) == read_file(b / (name + ".csv")));
        CHECK(!read_file(a / (name + ".csv")).empty());
        CHECK(fs::exists(a / (name + ".svg")));
    }
}

TEST_CASE("number formatting")
{
    CHECK(format_number(-0.0) == "0.00000000000e+00");
    CHECK(format_number(0.25) == "2.50000000000e-01");
}
