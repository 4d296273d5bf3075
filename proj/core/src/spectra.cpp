#include "dropchain/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "dropchain/steady_state.hpp"

namespace dropchain
{

ResponseEvaluator::ResponseEvaluator(ChainConfig config, Method method)
    : config_(std::move(config)), method_(method)
{
    switch (method_)
    {
    case Method::general_solver:
    case Method::decoupled:
        require_valid(config_);
        break;
    case Method::closed_form:
        if (auto why = closed_form_violation(config_))
            throw PreconditionError(*why);
        break;
    case Method::time_domain:
        throw PreconditionError("sweeps support the general-solver, closed-form and decoupled methods only");
    }
}

SpectrumSample ResponseEvaluator::operator()(double omega) const
{
    SpectrumSample s;
    s.omega = omega;
    switch (method_)
    {
    case Method::general_solver: {
        const auto solution = solve_steady_state(config_, omega);
        s.t = solution.t;
        s.d = solution.d;
        break;
    }
    case Method::closed_form:
        // With kappa1 == kappa2 and no phases the drop port carries
        // sqrt(kappa1) * sum(a_j) = T - 1.
        s.t = closed_form_transmission(config_, omega);
        s.d = s.t - 1.0;
        break;
    case Method::decoupled:
        s.t = decoupled_transmission(config_, omega);
        s.d = decoupled_drop(config_, omega);
        break;
    case Method::time_domain:
        break;
    }
    return s;
}

PowerFunction ResponseEvaluator::power_function() const
{
    return [this](double omega) { return through_power(omega); };
}

Spectrum sweep(const ChainConfig &config, const ProbeGrid &grid, Method method, SweepOptions options)
{
    const ResponseEvaluator evaluate(config, method);

    Spectrum spectrum{grid, method, std::vector<SpectrumSample>(grid.points())};
    auto &samples = spectrum.samples;

    unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.points()));

    auto run_chunk = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            samples[i] = evaluate(grid.at(i));
    };

    if (threads <= 1)
    {
        run_chunk(0, grid.points());
        return spectrum;
    }

    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        const std::size_t chunk = (grid.points() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t)
        {
            const std::size_t begin = std::min(grid.points(), t * chunk);
            const std::size_t end = std::min(grid.points(), begin + chunk);
            workers.emplace_back([&, t, begin, end] {
                try
                {
                    run_chunk(begin, end);
                }
                catch (...)
                {
                    errors[t] = std::current_exception();
                }
            });
        }
    }
    for (const auto &e : errors)
        if (e)
            std::rethrow_exception(e);
    return spectrum;
}

double nominal_spacing(const ChainConfig &config)
{
    require_valid(config);
    if (config.size() >= 2)
    {
        const auto [lo, hi] = std::minmax_element(config.cavities.begin(), config.cavities.end(),
                                                  [](const auto &a, const auto &b) { return a.omega < b.omega; });
        const double gap = (hi->omega - lo->omega) / static_cast<double>(config.size() - 1);
        if (gap > 0.0)
            return gap;
    }
    double kmax = 0.0;
    for (const auto &c : config.cavities)
        kmax = std::max(kmax, c.total_loss());
    return kmax > 0.0 ? kmax : 1.0;
}

ProbeGrid default_grid(const ChainConfig &config, double delta)
{
    require_valid(config);
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw PreconditionError("default grid needs a positive spacing");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto &c : config.cavities)
    {
        lo = std::min(lo, c.omega);
        hi = std::max(hi, c.omega);
    }
    const double start = lo - 3.0 * delta;
    const double stop = hi + 3.0 * delta;
    const auto points = static_cast<std::size_t>(std::llround(2000.0 * (stop - start) / delta)) + 1;
    return ProbeGrid(start, stop, points);
}

ProbeGrid default_grid(const ChainConfig &config)
{
    return default_grid(config, nominal_spacing(config));
}

namespace
{

constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2

double golden_section(const PowerFunction &f, double lo, double hi, double rel_tol, bool maximize)
{
    if (hi < lo)
        std::swap(lo, hi);
    auto score = [&](double x) { return maximize ? -f(x) : f(x); };

    const double width0 = hi - lo;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = score(x1);
    double f2 = score(x2);

    for (int iter = 0; iter < 200; ++iter)
    {
        const double mid = 0.5 * (lo + hi);
        const double tol = rel_tol * std::max(std::abs(mid), width0);
        if (hi - lo <= tol)
            break;
        if (f1 <= f2)
        {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = score(x1);
        }
        else
        {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = score(x2);
        }
    }
    return f1 <= f2 ? x1 : x2;
}

enum class ExtremumKind
{
    minimum,
    maximum,
};

struct GridExtremum
{
    ExtremumKind kind;
    std::size_t index;  // leftmost sample of the plateau
    std::size_t last;   // rightmost sample of the plateau
};

std::vector<GridExtremum> grid_extrema(const Spectrum &spectrum)
{
    const auto &s = spectrum.samples;
    std::vector<GridExtremum> out;
    if (s.size() < 3)
        return out;

    std::size_t i = 1;
    while (i + 1 < s.size())
    {
        const double v = s[i].t2();
        std::size_t j = i;
        while (j + 1 < s.size() && s[j + 1].t2() == v)
            ++j;
        if (j + 1 >= s.size())
            break;  // plateau runs into the right edge
        const double left = s[i - 1].t2();
        const double right = s[j + 1].t2();
        if (left > v && right > v)
            out.push_back({ExtremumKind::minimum, i, j});
        else if (left < v && right < v)
            out.push_back({ExtremumKind::maximum, i, j});
        i = j + 1;
    }
    return out;
}

WindowReport to_report(const Spectrum &spectrum, const std::vector<GridExtremum> &extrema,
                       const PowerFunction *power)
{
    WindowReport report;
    const auto &grid = spectrum.grid;
    for (const auto &e : extrema)
    {
        double omega = grid.at(e.index);
        double value = spectrum.samples[e.index].t2();
        if (power != nullptr)
        {
            const double lo = grid.at(e.index - 1);
            const double hi = grid.at(e.last + 1);
            omega = golden_section(*power, lo, hi, kRefineRelTol, e.kind == ExtremumKind::maximum);
            value = (*power)(omega);
        }
        if (e.kind == ExtremumKind::minimum)
            report.minima.push_back({omega, value});
        else
            report.maxima.push_back({omega, value, std::nullopt});
    }
    return report;
}

double bisect_crossing(const PowerFunction &power, double inside, double outside, double level)
{
    // power(inside) >= level > power(outside)
    for (int iter = 0; iter < 200; ++iter)
    {
        const double mid = 0.5 * (inside + outside);
        if (mid == inside || mid == outside)
            break;
        if (power(mid) >= level)
            inside = mid;
        else
            outside = mid;
    }
    return 0.5 * (inside + outside);
}

}  // namespace

double golden_section_minimize(const PowerFunction &f, double lo, double hi, double rel_tol)
{
    return golden_section(f, lo, hi, rel_tol, false);
}

double golden_section_maximize(const PowerFunction &f, double lo, double hi, double rel_tol)
{
    return golden_section(f, lo, hi, rel_tol, true);
}

WindowReport find_extrema(const Spectrum &spectrum)
{
    return to_report(spectrum, grid_extrema(spectrum), nullptr);
}

WindowReport find_extrema(const Spectrum &spectrum, const PowerFunction &power)
{
    return to_report(spectrum, grid_extrema(spectrum), &power);
}

FwhmResult measure_fwhm(const PowerFunction &power, double peak_omega, double left_bound, double right_bound,
                        std::optional<double> level)
{
    if (!(left_bound < peak_omega && peak_omega < right_bound))
        throw PreconditionError("FWHM bracket must enclose the peak");

    FwhmResult result;
    result.level = level ? *level : 0.5 * power(peak_omega);

    if (!(power(left_bound) < result.level))
        throw NoCrossingError("|T|^2 stays above the report level left of the peak");
    if (!(power(right_bound) < result.level))
        throw NoCrossingError("|T|^2 stays above the report level right of the peak");

    result.left = bisect_crossing(power, peak_omega, left_bound, result.level);
    result.right = bisect_crossing(power, peak_omega, right_bound, result.level);
    result.width = result.right - result.left;
    return result;
}

WindowReport measure_windows(const ChainConfig &config, const ProbeGrid &grid, Method method, SweepOptions options)
{
    const ResponseEvaluator evaluate(config, method);
    const auto power = evaluate.power_function();
    auto report = find_extrema(sweep(config, grid, method, options), power);

    for (auto &peak : report.maxima)
    {
        double left = grid.start();
        double right = grid.stop();
        for (const auto &m : report.minima)
        {
            if (m.omega < peak.omega)
                left = std::max(left, m.omega);
            else if (m.omega > peak.omega)
                right = std::min(right, m.omega);
        }
        try
        {
            peak.fwhm = measure_fwhm(power, peak.omega, left, right).width;
        }
        catch (const NoCrossingError &)
        {
            peak.fwhm.reset();
        }
    }
    return report;
}

std::size_t central_window_index(std::size_t n)
{
    return n < 2 ? 0 : n / 2;  // ceil((n - 1) / 2)
}

WindowAnalysis analyze_window(const ChainConfig &config, std::size_t index)
{
    require_valid(config);
    if (index < 1 || index >= config.size())
        throw PreconditionError("window index out of range");

    const double lo = config.cavities[index - 1].omega;
    const double hi = config.cavities[index].omega;
    if (!(lo < hi))
        throw PreconditionError("window analysis needs cavities sorted by frequency");

    // Margins put both bounding dips strictly inside the grid; spacing is
    // gap / 2000 as in default_grid().
    const double gap = hi - lo;
    const ProbeGrid grid(lo - 0.25 * gap, hi + 0.25 * gap, 3001);

    const ResponseEvaluator evaluate(config, Method::general_solver);
    const auto power = evaluate.power_function();
    const auto report = find_extrema(sweep(config, grid, Method::general_solver, {1}), power);

    WindowAnalysis analysis;
    const Maximum *best = nullptr;
    for (const auto &m : report.maxima)
        if (m.omega > lo && m.omega < hi && (best == nullptr || m.power > best->power))
            best = &m;
    if (best == nullptr)
    {
        analysis.reason = "no interior maximum";
        return analysis;
    }

    analysis.peak_omega = best->omega;
    analysis.peak_power = best->power;
    analysis.decoupled_power = std::norm(decoupled_transmission(config, best->omega));

    if (analysis.peak_power < kMinWindowEnhancement * analysis.decoupled_power)
    {
        std::ostringstream msg;
        msg << "peak " << analysis.peak_power << " is not enhanced over the decoupled response "
            << analysis.decoupled_power;
        analysis.reason = msg.str();
        return analysis;
    }
    analysis.exists = true;

    double left = grid.start();
    double right = grid.stop();
    for (const auto &m : report.minima)
    {
        if (m.omega < best->omega)
            left = std::max(left, m.omega);
        else if (m.omega > best->omega)
            right = std::min(right, m.omega);
    }
    try
    {
        analysis.fwhm = measure_fwhm(power, best->omega, left, right);
    }
    catch (const NoCrossingError &e)
    {
        analysis.fwhm_failure = e.what();
    }
    return analysis;
}

namespace
{

std::string format_context(int n, const char *name, double value)
{
    std::ostringstream out;
    out << "N=" << n << ", " << name << "/delta=" << value << ", kappa2=kappa1, delta=1, window "
        << central_window_index(static_cast<std::size_t>(std::max(n, 0)));
    return out.str();
}

template <typename Measure>
TrendCurve trend(TrendParameter parameter, TrendQuantity quantity, std::string context,
                 std::span<const double> values, Measure measure)
{
    TrendCurve curve{parameter, quantity, std::move(context), {}};
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    for (double value : sorted)
    {
        TrendPoint point;
        point.parameter = value;
        const auto analysis = measure(value);
        if (!analysis.exists)
            point.note = "no window: " + analysis.reason;
        else if (quantity == TrendQuantity::peak_transmission)
            point.value = analysis.peak_power;
        else if (analysis.fwhm)
            point.value = analysis.fwhm->width;
        else
            point.note = "no window: " + analysis.fwhm_failure;
        curve.points.push_back(std::move(point));
    }
    return curve;
}

}  // namespace

TrendCurve fwhm_vs_kappa1(int n, double kappa0_over_delta, std::span<const double> kappa1_values)
{
    if (n < 2)
        throw PreconditionError("trend curves need at least two cavities");
    return trend(TrendParameter::kappa1, TrendQuantity::fwhm, format_context(n, "kappa0", kappa0_over_delta),
                 kappa1_values, [&](double kappa1) {
                     const auto config = uniform_chain(n, kappa0_over_delta, kappa1, kappa1, 1.0);
                     return analyze_window(config, central_window_index(config.size()));
                 });
}

TrendCurve tmax_vs_kappa0(int n, double kappa1_over_delta, std::span<const double> kappa0_values)
{
    if (n < 2)
        throw PreconditionError("trend curves need at least two cavities");
    return trend(TrendParameter::kappa0, TrendQuantity::peak_transmission,
                 format_context(n, "kappa1", kappa1_over_delta), kappa0_values, [&](double kappa0) {
                     const auto config = uniform_chain(n, kappa0, kappa1_over_delta, kappa1_over_delta, 1.0);
                     return analyze_window(config, central_window_index(config.size()));
                 });
}

}  // namespace dropchain
