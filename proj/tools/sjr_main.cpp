// sjr: jamming probability analysis for satellite downlinks under a
// high-altitude platform interferer.
//
// Subcommands:
//   eval             analytic (optionally Monte Carlo) value at one threshold
//   sweep-threshold  CSV curve over a threshold grid
//   sweep-elevation  CSV curves over the direct link's elevation angle
//   validate         Monte Carlo cross-check of the analytic curve
//
// Exit codes: 0 success, 1 validation failure, 2 configuration/usage error,
// 3 I/O error.

#include <clocale>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sjr/config.hpp"
#include "sjr/montecarlo.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using sjr::config::format_double;

struct CommonOpts {
    std::string config_path;
    std::optional<int> scenario;
    std::optional<std::string> beta;
    std::uint64_t seed = 1;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "Configuration file (key = value lines)");
    cmd->add_option("--scenario", opts.scenario, "Override the scenario (1 or 2)")
        ->check(CLI::IsMember({1, 2}));
    cmd->add_option("--beta", opts.beta,
                    "Override the environment constant (suburban, urban, "
                    "dense-urban, or a number)");
    cmd->add_option("--seed", opts.seed, "Random seed for Monte Carlo draws");
    cmd->add_option("--threads", opts.threads,
                    "Worker threads for Monte Carlo (0 = hardware)");
}

sjr::config::Settings resolve_settings(const CommonOpts& opts) {
    sjr::config::Settings s = opts.config_path.empty()
                                  ? sjr::config::defaults()
                                  : sjr::config::load_file(opts.config_path);
    if (opts.scenario) s.scenario = *opts.scenario;
    if (opts.beta) s.beta = sjr::config::parse_beta(*opts.beta);
    return s;
}

sjr::mc::JammerDraw parse_jammer_draw(const std::string& v) {
    if (v == "shared") return sjr::mc::JammerDraw::kSharedAcrossLinks;
    if (v == "independent") return sjr::mc::JammerDraw::kIndependentPerLink;
    throw sjr::config::ConfigError("jammer-draw", "expected shared or independent");
}

sjr::mc::BudgetMode parse_budget_mode(const std::string& v) {
    if (v == "simplified") return sjr::mc::BudgetMode::kSimplified;
    if (v == "full") return sjr::mc::BudgetMode::kFullBudget;
    throw sjr::config::ConfigError("budget-mode", "expected simplified or full");
}

void write_manifest(std::ostream& out, const char* command,
                    const std::vector<std::string>& extra,
                    const sjr::config::Settings& settings) {
    out << "# sjr " << command << " v" << kVersion << "\n";
    for (const auto& line : extra) out << "# " << line << "\n";
    std::istringstream echo(sjr::config::echo(settings));
    std::string line;
    while (std::getline(echo, line)) out << "# config: " << line << "\n";
}

// ---- eval ------------------------------------------------------------

int run_eval(const CommonOpts& common, double gamma_db, std::uint64_t mc_samples,
             const std::string& jammer_draw, const std::string& budget_mode) {
    const auto settings = resolve_settings(common);
    const auto cfg = sjr::config::to_scenario(settings);
    const double g = sjr::linkbudget::db_to_linear(gamma_db);
    const double analytic = settings.scenario == 1
                                ? sjr::analytics::jam_prob_scenario1(cfg, g)
                                : sjr::analytics::jam_prob_scenario2(cfg, g);
    std::cout << "p_jam_analytic = " << format_double(analytic) << "\n";
    if (mc_samples > 0) {
        sjr::mc::McConfig mc;
        mc.samples = mc_samples;
        mc.seed = common.seed;
        mc.jammer_draw = parse_jammer_draw(jammer_draw);
        mc.budget_mode = parse_budget_mode(budget_mode);
        const std::vector<double> grid{gamma_db};
        const auto emp = sjr::mc::mc_cdf(cfg, mc, grid, common.threads);
        const double p = emp.cdf[0];
        const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(emp.n));
        std::cout << "p_jam_mc = " << format_double(p) << " (stderr = "
                  << format_double(se) << ", n = " << emp.n << ", seed = "
                  << emp.seed << ")\n";
    }
    return 0;
}

// ---- sweep-threshold ---------------------------------------------------

int run_sweep_threshold(const CommonOpts& common, const std::string& grid_text,
                        std::uint64_t mc_samples, const std::string& out_path) {
    const auto settings = resolve_settings(common);
    const auto grid = sjr::config::parse_grid(grid_text);
    auto cfg = sjr::config::to_scenario(settings, grid.points());
    const auto curve = sjr::analytics::sjr_cdf_curve(cfg);

    std::optional<sjr::mc::EmpiricalCdf> emp;
    if (mc_samples > 0) {
        sjr::mc::McConfig mc;
        mc.samples = mc_samples;
        mc.seed = common.seed;
        emp = sjr::mc::mc_cdf(cfg, mc, curve.thresholds_db, common.threads);
    }

    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return 3;
    }
    write_manifest(out, "sweep-threshold",
                   {"grid: " + grid_text, "seed: " + std::to_string(common.seed),
                    "mc_samples: " + std::to_string(mc_samples)},
                   settings);
    out << "gamma_db,p_jam_analytic";
    if (emp) out << ",p_jam_mc,stderr_mc";
    out << "\n";
    for (std::size_t i = 0; i < curve.thresholds_db.size(); ++i) {
        out << format_double(curve.thresholds_db[i]) << ','
            << format_double(curve.p_jam[i]);
        if (emp) {
            const double p = emp->cdf[i];
            const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(emp->n));
            out << ',' << format_double(p) << ',' << format_double(se);
        }
        out << "\n";
    }
    return out.good() ? 0 : 3;
}

// ---- sweep-elevation ----------------------------------------------------

int run_sweep_elevation(const CommonOpts& common, const std::string& grid_text,
                        double gamma_db, std::vector<double> theta_rg,
                        const std::string& out_path) {
    const auto settings = resolve_settings(common);
    const auto grid = sjr::config::parse_grid(grid_text);
    if (!(grid.start > 0.0 && grid.stop <= 90.0)) {
        throw sjr::config::ConfigError("grid", "elevation grid must lie in (0, 90]");
    }
    auto s2 = settings;
    s2.scenario = 2;
    auto cfg = sjr::config::to_scenario(s2);
    const double g = sjr::linkbudget::db_to_linear(gamma_db);

    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return 3;
    }
    std::string rg_list;
    for (double t : theta_rg) rg_list += (rg_list.empty() ? "" : ",") + format_double(t);
    write_manifest(out, "sweep-elevation",
                   {"grid: " + grid_text, "gamma_db: " + format_double(gamma_db),
                    "theta_rg: " + rg_list},
                   settings);
    out << "theta_tg_deg,p_jam_scenario1";
    for (double t : theta_rg) out << ",p_jam_scenario2_rg" << format_double(t);
    out << "\n";
    for (const double theta : grid.points()) {
        cfg.tg.elevation_deg = theta;
        const double p1 = sjr::analytics::jam_prob_link(cfg.tg, cfg.hg, cfg.fading, g);
        out << format_double(theta) << ',' << format_double(p1);
        for (const double trg : theta_rg) {
            cfg.rg->elevation_deg = trg;
            const double p2 =
                p1 * sjr::analytics::jam_prob_link(*cfg.rg, cfg.hg, cfg.fading, g);
            out << ',' << format_double(p2);
        }
        out << "\n";
    }
    return out.good() ? 0 : 3;
}

// ---- validate -----------------------------------------------------------

int run_validate(const CommonOpts& common, const std::string& grid_text,
                 std::uint64_t mc_samples, double tolerance,
                 const std::string& jammer_draw, const std::string& budget_mode,
                 double perturb_d) {
    const auto settings = resolve_settings(common);
    const auto grid = sjr::config::parse_grid(grid_text);
    auto cfg = sjr::config::to_scenario(settings, grid.points());

    // Negative-control hook: scale the jammer coefficient used by the
    // analytic curve only, leaving the Monte Carlo untouched.
    auto analytic_cfg = cfg;
    if (perturb_d != 1.0) {
        analytic_cfg.hg.tx_power_db += 10.0 * std::log10(perturb_d);
    }
    const auto curve = sjr::analytics::sjr_cdf_curve(analytic_cfg);

    sjr::mc::McConfig mc;
    mc.samples = mc_samples;
    mc.seed = common.seed;
    mc.jammer_draw = parse_jammer_draw(jammer_draw);
    mc.budget_mode = parse_budget_mode(budget_mode);
    const auto emp = sjr::mc::mc_cdf(cfg, mc, curve.thresholds_db, common.threads);
    const auto report = sjr::mc::compare(curve, emp);

    double max_se = 0.0;
    for (const double se : report.stderr_per_point) max_se = std::max(max_se, se);
    const bool pass = report.max_abs_dev <= tolerance;

    std::cout << "scenario: " << settings.scenario << "\n"
              << "samples: " << mc.samples << "\n"
              << "seed: " << mc.seed << "\n"
              << "grid: " << grid_text << "\n"
              << "jammer_draw: " << jammer_draw << "\n"
              << "budget_mode: " << budget_mode << "\n"
              << "max_abs_dev: " << format_double(report.max_abs_dev)
              << " (at gamma_db = " << format_double(report.gamma_db_at_max) << ")\n"
              << "max_binomial_stderr: " << format_double(max_se) << "\n"
              << "tolerance: " << format_double(tolerance) << "\n"
              << "result: " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    CLI::App app{"Jamming probability analysis for satellite downlinks"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonOpts common;
    double gamma_db = 10.0;
    std::uint64_t mc_samples = 0;
    std::string jammer_draw = "independent";
    std::string budget_mode = "simplified";
    std::string grid_text = "-20:40:1";
    std::string out_path;
    std::vector<double> theta_rg{30.0, 60.0, 90.0};
    double tolerance = 0.015;
    double perturb_d = 1.0;
    std::uint64_t validate_samples = 1'000'000;
    std::string elev_grid = "5:90:5";

    auto* eval = app.add_subcommand("eval", "Evaluate one threshold");
    add_common(eval, common);
    eval->add_option("--gamma-db", gamma_db, "Reliability threshold in dB")->required();
    eval->add_option("--mc", mc_samples, "Add a Monte Carlo estimate with N samples");
    eval->add_option("--jammer-draw", jammer_draw, "shared | independent");
    eval->add_option("--budget-mode", budget_mode, "simplified | full");

    auto* sweep_t = app.add_subcommand("sweep-threshold", "Threshold sweep to CSV");
    add_common(sweep_t, common);
    sweep_t->add_option("--grid", grid_text, "Threshold grid start:stop:step in dB");
    sweep_t->add_option("--mc", mc_samples, "Add Monte Carlo columns with N samples");
    sweep_t->add_option("--out", out_path, "Output CSV path")->required();

    auto* sweep_e = app.add_subcommand("sweep-elevation", "Elevation sweep to CSV");
    add_common(sweep_e, common);
    sweep_e->add_option("--grid", elev_grid, "Elevation grid start:stop:step in degrees");
    sweep_e->add_option("--gamma-db", gamma_db, "Reliability threshold in dB");
    sweep_e->add_option("--theta-rg", theta_rg,
                        "Relay elevation angles (one output column each)")
        ->delimiter(',');
    sweep_e->add_option("--out", out_path, "Output CSV path")->required();

    auto* validate = app.add_subcommand("validate", "Monte Carlo validation");
    add_common(validate, common);
    validate->add_option("--grid", grid_text, "Threshold grid start:stop:step in dB");
    validate->add_option("--mc", validate_samples, "Monte Carlo sample count");
    validate->add_option("--tolerance", tolerance, "Max allowed |analytic - empirical|");
    validate->add_option("--jammer-draw", jammer_draw, "shared | independent");
    validate->add_option("--budget-mode", budget_mode, "simplified | full");
    validate->add_option("--perturb-d", perturb_d,
                         "Scale the analytic jammer coefficient (negative control)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed()) {
            return run_eval(common, gamma_db, mc_samples, jammer_draw, budget_mode);
        }
        if (sweep_t->parsed()) {
            return run_sweep_threshold(common, grid_text, mc_samples, out_path);
        }
        if (sweep_e->parsed()) {
            return run_sweep_elevation(common, elev_grid, gamma_db, theta_rg, out_path);
        }
        if (validate->parsed()) {
            return run_validate(common, grid_text, validate_samples, tolerance,
                                jammer_draw, budget_mode, perturb_d);
        }
    } catch (const sjr::config::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
