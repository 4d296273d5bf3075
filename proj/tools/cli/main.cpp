#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "run_config.hpp"

using namespace dropchain;
using namespace dropchain::cli;

int main(int argc, char **argv)
{
    CLI::App app{"Spectra and transparency windows of bus/drop-coupled resonator chains"};
    app.require_subcommand(1);

    const auto add_method = [](CLI::App *cmd, std::optional<Method> &target) {
        cmd->add_option_function<std::string>(
               "--method", [&target](const std::string &name) { target = parse_method(name); },
               "Evaluator: solver, closed or decoupled (default: config method)")
            ->check(CLI::IsMember({"solver", "closed", "decoupled"}));
    };

    SpectrumArgs spectrum;
    auto *spectrum_cmd = app.add_subcommand("spectrum", "Sweep |T|^2 and |D|^2 over a probe grid (CSV)");
    spectrum_cmd->add_option("--config", spectrum.config_path, "Run configuration (JSON)")->required();
    add_method(spectrum_cmd, spectrum.method);
    spectrum_cmd->add_option("--out", spectrum.out, "CSV output path (default: config output.csv or stdout)");
    spectrum_cmd->add_option("--svg", spectrum.svg, "SVG plot of |T|^2");
    spectrum_cmd->add_option("--points", spectrum.points, "Override the number of grid points");
    spectrum_cmd->add_flag("--log-y", spectrum.log_y, "Logarithmic y axis in the SVG");
    spectrum_cmd->add_option("--threads", spectrum.threads, "Sweep worker threads (0 = all cores)");

    Figure2Args figure2;
    auto *figure2_cmd = app.add_subcommand("figure2", "Coupled and decoupled spectra for N = 1..6");
    figure2_cmd->add_option("--n", figure2.n, "Number of cavities")->check(CLI::Range(1, 6));
    figure2_cmd->add_option("--out", figure2.out_dir, "Output directory");
    figure2_cmd->add_option("--svg", figure2.svg, "Overlay SVG path");
    figure2_cmd->add_option("--points", figure2.points, "Override the number of grid points");
    figure2_cmd->add_flag("--log-y", figure2.log_y, "Logarithmic y axis in the SVG");
    figure2_cmd->add_option("--threads", figure2.threads, "Sweep worker threads (0 = all cores)");

    Figure3Args figure3;
    auto *figure3_cmd = app.add_subcommand("figure3", "Window FWHM vs kappa1 (a) or peak |T|^2 vs kappa0 (b)");
    figure3_cmd->add_option("--panel", figure3.panel, "a or b")->check(CLI::IsMember({'a', 'b'}));
    figure3_cmd->add_option("--n", figure3.n, "Number of cavities")->check(CLI::PositiveNumber);
    figure3_cmd->add_option("--out", figure3.out, "CSV output path (default stdout)");
    figure3_cmd->add_option("--svg", figure3.svg, "SVG plot of the trend");

    WindowsArgs windows;
    auto *windows_cmd = app.add_subcommand("windows", "Minima, maxima and window FWHM as JSON");
    windows_cmd->add_option("--config", windows.config_path, "Run configuration (JSON)")->required();
    add_method(windows_cmd, windows.method);
    windows_cmd->add_option("--out", windows.out, "JSON output path (default stdout)");
    windows_cmd->add_option("--points", windows.points, "Override the number of grid points");
    windows_cmd->add_option("--threads", windows.threads, "Sweep worker threads (0 = all cores)");

    OracleCheckArgs oracle;
    auto *oracle_cmd = app.add_subcommand("oracle-check", "Compare the solver against time-domain integration");
    oracle_cmd->add_option("--config", oracle.config_path, "Run configuration (JSON)")->required();
    oracle_cmd->add_option("--out", oracle.out, "JSON report path (default stdout)");
    oracle_cmd->add_option("--samples", oracle.samples, "Probe frequencies (>= 16)");
    oracle_cmd->add_option("--dt", oracle.dt, "Integration time step");
    oracle_cmd->add_option("--rel-tol", oracle.rel_tol, "Convergence threshold");
    oracle_cmd->add_option("--max-time", oracle.max_time, "Integration horizon");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::Success &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return kExitConfig;
    }

    const Streams io{std::cout, std::cerr};
    if (*spectrum_cmd)
        return cmd_spectrum(spectrum, io);
    if (*figure2_cmd)
        return cmd_figure2(figure2, io);
    if (*figure3_cmd)
        return cmd_figure3(figure3, io);
    if (*windows_cmd)
        return cmd_windows(windows, io);
    if (*oracle_cmd)
        return cmd_oracle_check(oracle, io);
    return kExitConfig;
}
