#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ios>
#include <ostream>
#include <sstream>

#include "dropchain/steady_state.hpp"
#include "dropchain/time_domain.hpp"
#include "run_config.hpp"
#include "svg_plot.hpp"

namespace dropchain::cli
{
namespace
{

using nlohmann::json;

void write_file(const std::string &path, const std::string &content)
{
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file)
        throw std::ios_base::failure("cannot open " + path + " for writing");
    file << content;
    file.close();
    if (!file)
        throw std::ios_base::failure("failed writing " + path);
}

// Writes to `path` when given, otherwise to the primary stream.
void emit(const std::optional<std::string> &path, const std::string &content, Streams io)
{
    if (path)
        write_file(*path, content);
    else
        io.out << content;
}

template <typename Body>
int guarded(Streams io, Body &&body)
{
    try
    {
        return body();
    }
    catch (const ConfigError &e)
    {
        io.log << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (const std::ios_base::failure &e)
    {
        io.log << "i/o error: " << e.what() << '\n';
        return kExitIo;
    }
    catch (const Error &e)
    {
        io.log << "evaluator error: " << e.what() << '\n';
        return kExitPrecondition;
    }
}

ProbeGrid with_points(const ProbeGrid &grid, std::optional<std::size_t> points)
{
    if (!points)
        return grid;
    if (*points < 2)
        throw ConfigError("--points: expected at least 2");
    return ProbeGrid(grid.start(), grid.stop(), *points);
}

std::vector<double> powers(const Spectrum &s)
{
    std::vector<double> out;
    out.reserve(s.samples.size());
    for (const auto &x : s.samples)
        out.push_back(x.t2());
    return out;
}

std::string short_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string describe_chain(const ChainConfig &chain)
{
    std::ostringstream out;
    out << "N=" << chain.size();
    if (!chain.cavities.empty())
    {
        const auto &c = chain.cavities.front();
        out << ", cavity 1: kappa0=" << short_number(c.kappa0) << " kappa1=" << short_number(c.kappa1)
            << " kappa2=" << short_number(c.kappa2);
    }
    return out.str();
}

PlotSeries series_of(const Spectrum &s, std::string label, std::string color, bool dotted)
{
    PlotSeries series;
    series.label = std::move(label);
    series.x = s.grid.values();
    series.y = powers(s);
    series.color = std::move(color);
    series.dotted = dotted;
    return series;
}

}  // namespace

std::string format_number(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", value);
    return buf;
}

void write_spectrum_csv(std::ostream &out, const Spectrum &spectrum)
{
    out << "omega,t_re,t_im,d_re,d_im,t2,d2\n";
    for (const auto &s : spectrum.samples)
    {
        out << format_number(s.omega) << ',' << format_number(s.t.real()) << ',' << format_number(s.t.imag()) << ','
            << format_number(s.d.real()) << ',' << format_number(s.d.imag()) << ',' << format_number(s.t2()) << ','
            << format_number(s.d2()) << '\n';
    }
}

void write_trend_csv(std::ostream &out, const TrendCurve &curve)
{
    out << "param,value\n";
    for (const auto &p : curve.points)
    {
        out << format_number(p.parameter) << ',';
        if (p.value)
            out << format_number(*p.value);
        else
            out << "no-window";
        out << '\n';
    }
}

json window_report_json(const WindowReport &report)
{
    json minima = json::array();
    for (const auto &m : report.minima)
        minima.push_back({{"omega", m.omega}, {"t2", m.power}});
    json maxima = json::array();
    for (const auto &m : report.maxima)
        maxima.push_back({{"omega", m.omega}, {"t2", m.power}, {"fwhm", m.fwhm ? json(*m.fwhm) : json(nullptr)}});
    return {{"minima", std::move(minima)}, {"maxima", std::move(maxima)}};
}

std::vector<double> figure3_kappa1_range()
{
    // 0.5 .. 32 delta, four points per octave
    std::vector<double> v;
    for (int k = -4; k <= 20; ++k)
        v.push_back(std::exp2(static_cast<double>(k) / 4.0));
    return v;
}

std::vector<double> figure3_kappa0_range()
{
    // 1e-6 .. 1 delta, four points per decade
    std::vector<double> v;
    for (int k = -24; k <= 0; ++k)
        v.push_back(std::pow(10.0, static_cast<double>(k) / 4.0));
    return v;
}

ChainConfig figure2_chain(int n)
{
    constexpr double kappa1 = 2.0;
    return uniform_chain(n, 1e-3 * kappa1, kappa1, kappa1, 1.0);
}

int cmd_spectrum(const SpectrumArgs &args, Streams io)
{
    return guarded(io, [&] {
        auto config = load_run_config(args.config_path);
        const Method method = args.method.value_or(config.method);
        const auto grid = with_points(config.effective_grid(), args.points);

        const auto spectrum = sweep(config.chain, grid, method, {args.threads});

        std::ostringstream csv;
        write_spectrum_csv(csv, spectrum);
        emit(args.out ? args.out : config.output.csv, csv.str(), io);

        const auto svg_path = args.svg ? args.svg : config.output.svg;
        if (svg_path)
        {
            SvgPlot plot;
            plot.title = "Through-port power transmission";
            plot.x_label = "probe frequency omega";
            plot.y_label = "|T|^2";
            plot.log_y = args.log_y || config.output.svg_log_y;
            plot.notes = {describe_chain(config.chain) + ", method " + std::string(to_string(method))};
            plot.add(series_of(spectrum, "", "#c0392b", false));
            write_file(*svg_path, plot.render());
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_figure2(const Figure2Args &args, Streams io)
{
    return guarded(io, [&] {
        if (args.n < 1 || args.n > 6)
            throw ConfigError("--n: expected 1..6");
        const auto chain = figure2_chain(args.n);
        const double span_stop = static_cast<double>(args.n - 1) + 3.0;
        const ProbeGrid base(-3.0, span_stop,
                             static_cast<std::size_t>(std::llround(2000.0 * (span_stop + 3.0))) + 1);
        const auto grid = with_points(base, args.points);

        const auto coupled = sweep(chain, grid, Method::general_solver, {args.threads});
        const auto decoupled = sweep(chain, grid, Method::decoupled, {args.threads});

        const std::filesystem::path dir(args.out_dir);
        const std::string stem = "figure2_n" + std::to_string(args.n);
        std::ostringstream csv;
        write_spectrum_csv(csv, coupled);
        write_file((dir / (stem + "_coupled.csv")).string(), csv.str());
        csv.str("");
        write_spectrum_csv(csv, decoupled);
        write_file((dir / (stem + "_decoupled.csv")).string(), csv.str());

        if (args.svg)
        {
            SvgPlot plot;
            plot.title = "Overall power transmission, N = " + std::to_string(args.n);
            plot.x_label = "omega / delta";
            plot.y_label = "|T|^2";
            plot.log_y = args.log_y;
            plot.notes = {"kappa0/kappa1 = 1e-3, kappa1/delta = 2, kappa2 = kappa1"};
            plot.add(series_of(coupled, "side coupled", "#c0392b", false));
            plot.add(series_of(decoupled, "drop lost to free space", "#2e86c1", true));
            write_file(*args.svg, plot.render());
        }
        io.log << "wrote " << (dir / (stem + "_coupled.csv")).string() << " and "
               << (dir / (stem + "_decoupled.csv")).string() << '\n';
        return static_cast<int>(kExitOk);
    });
}

int cmd_figure3(const Figure3Args &args, Streams io)
{
    return guarded(io, [&] {
        if (args.n < 2)
            throw ConfigError("--n: trend curves need at least two cavities");
        TrendCurve curve;
        SvgPlot plot;
        if (args.panel == 'a')
        {
            const auto range = figure3_kappa1_range();
            curve = fwhm_vs_kappa1(args.n, 1e-4, range);
            plot.title = "Transparency-window FWHM vs kappa1";
            plot.x_label = "kappa1 / delta";
            plot.y_label = "FWHM / delta";
        }
        else if (args.panel == 'b')
        {
            const auto range = figure3_kappa0_range();
            curve = tmax_vs_kappa0(args.n, 2.0, range);
            plot.title = "Peak transmission vs kappa0";
            plot.x_label = "log10(kappa0 / delta)";
            plot.y_label = "max |T|^2";
        }
        else
        {
            throw ConfigError("--panel: expected a or b");
        }

        std::ostringstream csv;
        write_trend_csv(csv, curve);
        emit(args.out, csv.str(), io);

        if (args.svg)
        {
            PlotSeries series;
            for (const auto &p : curve.points)
                if (p.value)
                {
                    series.x.push_back(args.panel == 'b' ? std::log10(p.parameter) : p.parameter);
                    series.y.push_back(*p.value);
                }
            plot.log_y = args.panel == 'a';
            plot.notes = {curve.context};
            plot.add(std::move(series));
            write_file(*args.svg, plot.render());
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_windows(const WindowsArgs &args, Streams io)
{
    return guarded(io, [&] {
        auto config = load_run_config(args.config_path);
        const Method method = args.method.value_or(config.method);
        const auto grid = with_points(config.effective_grid(), args.points);
        const auto report = measure_windows(config.chain, grid, method, {args.threads});
        emit(args.out, window_report_json(report).dump(2) + "\n", io);
        return static_cast<int>(kExitOk);
    });
}

int cmd_oracle_check(const OracleCheckArgs &args, Streams io)
{
    return guarded(io, [&] {
        auto config = load_run_config(args.config_path);
        if (args.samples < 16)
            throw ConfigError("--samples: at least 16 probe frequencies are required");

        auto settings = IntegrationSettings::defaults_for(config.chain);
        if (args.dt)
            settings.dt = *args.dt;
        if (args.rel_tol)
            settings.rel_tol = *args.rel_tol;
        if (args.max_time)
            settings.max_time = *args.max_time;
        check_settings(config.chain, settings);

        const auto base = config.effective_grid();
        const ProbeGrid probes(base.start(), base.stop(), args.samples);

        double max_diff = 0.0;
        double max_residual = 0.0;
        bool all_converged = true;
        json points = json::array();
        for (std::size_t i = 0; i < probes.points(); ++i)
        {
            const double omega = probes.at(i);
            const auto solution = solve_steady_state(config.chain, omega);
            const double residual = std::abs(energy_balance(config.chain, solution).residual);
            max_residual = std::max(max_residual, residual);

            json entry = {{"omega", omega},
                          {"t_solver", {solution.t.real(), solution.t.imag()}},
                          {"balance_residual", residual}};
            try
            {
                const auto dynamic = integrate_to_steady_state(config.chain, omega, settings);
                const double diff = std::abs(dynamic.solution.t - solution.t);
                max_diff = std::max(max_diff, diff);
                entry["t_time_domain"] = {dynamic.solution.t.real(), dynamic.solution.t.imag()};
                entry["difference"] = diff;
                entry["steps"] = dynamic.steps;
            }
            catch (const NonConvergenceError &e)
            {
                all_converged = false;
                entry["converged"] = false;
                entry["derivative_norm"] = e.derivative_norm();
            }
            points.push_back(std::move(entry));
        }

        const bool pass =
            all_converged && max_diff < kOracleTransmissionTolerance && max_residual < kOracleBalanceTolerance;
        const json report = {{"samples", probes.points()},
                             {"integration", {{"dt", settings.dt}, {"rel_tol", settings.rel_tol},
                                              {"max_time", settings.max_time}}},
                             {"max_t_difference", max_diff},
                             {"max_balance_residual", max_residual},
                             {"all_converged", all_converged},
                             {"thresholds", {{"t_difference", kOracleTransmissionTolerance},
                                             {"balance_residual", kOracleBalanceTolerance}}},
                             {"pass", pass},
                             {"points", std::move(points)}};
        emit(args.out, report.dump(2) + "\n", io);
        if (!pass)
        {
            io.log << "oracle mismatch: max |dT| = " << max_diff << ", max balance residual = " << max_residual
                   << (all_converged ? "" : ", some integrations did not converge") << '\n';
            return static_cast<int>(kExitOracleMismatch);
        }
        return static_cast<int>(kExitOk);
    });
}

}  // namespace dropchain::cli
