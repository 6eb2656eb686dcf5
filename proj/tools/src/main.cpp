// Entry point for the nlfront tool. Exit codes: 0 = the command completed
// (verdicts such as "undecided" or a failed verification are results, not
// errors), 1 = configuration or input validation failed, 2 = a solver gave up.
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "nlfront/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"nlfront — a numerical laboratory for nonlocal two-species "
                 "free-boundary fronts"};
    app.require_subcommand(1);

    std::string config_path, out_dir, csv_path, report_path, out_svg;
    std::string law = "auto", plot_law = "none";
    std::vector<double> alphas;
    double t_lo = 0.0, t_hi = 0.0;
    bool force_plot = false;

    CLI::App* simulate =
        app.add_subcommand("simulate", "run one simulation; emit trajectory CSV, "
                                       "snapshot CSVs and a JSON report");
    simulate->add_option("config", config_path, "JSON run configuration")->required();
    simulate->add_option("--out", out_dir, "output directory (overrides output.dir)");
    simulate->add_flag("--plot", force_plot, "also write an SVG front plot");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "one simulation per tail exponent; tabulates fitted vs predicted rates");
    sweep->add_option("config", config_path, "JSON run configuration")->required();
    sweep->add_option("--alphas", alphas,
                      "comma-separated tail exponents; each patches every power_law kernel")
        ->delimiter(',');
    sweep->add_option("--out", out_dir, "output directory");

    CLI::App* rates = app.add_subcommand(
        "rates", "fit front growth laws to a trajectory CSV and emit a report");
    rates->add_option("trajectory", csv_path, "trajectory CSV (t,g,h,... columns)")->required();
    rates->add_option("--t-lo", t_lo, "window start (default: t_end / 2)");
    rates->add_option("--t-hi", t_hi, "window end (default: t_end)");
    rates->add_option("--law", law, "power, tlnt, linear or auto (default auto)");
    rates->add_option("--report", report_path, "report path (default: print to stdout)");

    CLI::App* semiwave = app.add_subcommand(
        "semiwave", "solve the semi-wave profile and speed for compact kernels");
    semiwave->add_option("config", config_path, "JSON run configuration")->required();
    semiwave->add_option("--out", out_dir, "output directory");

    CLI::App* vsub = app.add_subcommand(
        "verify-subeig", "check the sub-eigenfunction inequality for a profile family");
    vsub->add_option("config", config_path, "JSON run configuration")->required();
    vsub->add_option("--out", out_dir, "output directory");

    CLI::App* venv = app.add_subcommand(
        "verify-envelope", "check or search envelope constants by residual sampling");
    venv->add_option("config", config_path, "JSON run configuration")->required();
    venv->add_option("--out", out_dir, "output directory");

    CLI::App* plot =
        app.add_subcommand("plot", "render a trajectory CSV to a static SVG");
    plot->add_option("trajectory", csv_path, "trajectory CSV")->required();
    plot->add_option("--law", plot_law, "overlay law: power, tlnt, linear or none");
    plot->add_option("--out", out_svg, "SVG path (default: trajectory path with .svg)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // pin usage errors to the validation exit code
    }

    try {
        if (simulate->parsed()) return nlfront::cli::cmd_simulate(config_path, out_dir, force_plot);
        if (sweep->parsed()) return nlfront::cli::cmd_sweep(config_path, alphas, out_dir);
        if (rates->parsed()) return nlfront::cli::cmd_rates(csv_path, t_lo, t_hi, law, report_path);
        if (semiwave->parsed()) return nlfront::cli::cmd_semiwave(config_path, out_dir);
        if (vsub->parsed()) return nlfront::cli::cmd_verify_subeig(config_path, out_dir);
        if (venv->parsed()) return nlfront::cli::cmd_verify_envelope(config_path, out_dir);
        if (plot->parsed()) return nlfront::cli::cmd_plot(csv_path, plot_law, out_svg);
    } catch (const nlfront::ValidationError& e) {
        std::cerr << "error:";
        for (const std::string& issue : e.issues()) std::cerr << "\n  " << issue;
        std::cerr << "\n";
        return 1;
    } catch (const nlfront::SolverAbort& e) {
        std::cerr << "solver abort: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "solver abort: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
