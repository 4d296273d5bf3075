#ifndef DROPCHAIN_SPECTRA_HPP
#define DROPCHAIN_SPECTRA_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dropchain/model.hpp"

namespace dropchain
{

// |T|^2 as a function of probe frequency.
using PowerFunction = std::function<double(double)>;

// A configured frequency-domain evaluator. Construction checks the method's
// preconditions once (PreconditionError), so evaluation never throws for
// them.
class ResponseEvaluator
{
public:
    // Method::time_domain is rejected; sweeps only use the frequency-domain
    // evaluators.
    ResponseEvaluator(ChainConfig config, Method method);

    const ChainConfig &config() const { return config_; }
    Method method() const { return method_; }

    SpectrumSample operator()(double omega) const;
    double through_power(double omega) const { return (*this)(omega).t2(); }
    PowerFunction power_function() const;

private:
    ChainConfig config_;
    Method method_;
};

struct SweepOptions
{
    // Worker threads; 0 picks std::thread::hardware_concurrency(). Output does
    // not depend on this value.
    unsigned threads = 0;
};

Spectrum sweep(const ChainConfig &config, const ProbeGrid &grid, Method method, SweepOptions options = {});

// Representative spacing of the chain: the mean gap between adjacent cavity
// frequencies, or the total loss (or 1) for a single cavity.
double nominal_spacing(const ChainConfig &config);

// [omega_min - 3 delta, omega_max + 3 delta] sampled at delta / 2000.
ProbeGrid default_grid(const ChainConfig &config, double delta);
ProbeGrid default_grid(const ChainConfig &config);

inline constexpr double kRefineRelTol = 1e-8;

// Golden-section search for the extremum of f in [lo, hi]. Stops once the
// bracket is below rel_tol * max(|x|, hi - lo) (initial width).
double golden_section_minimize(const PowerFunction &f, double lo, double hi, double rel_tol = kRefineRelTol);
double golden_section_maximize(const PowerFunction &f, double lo, double hi, double rel_tol = kRefineRelTol);

// Strict interior extrema of |T|^2 on the grid. Equal adjacent samples form a
// plateau that is reported at its leftmost sample. Returns an empty report
// for spectra with fewer than three samples.
WindowReport find_extrema(const Spectrum &spectrum);

// As above, then each location is polished by golden-section search on
// `power` within the neighbouring grid samples.
WindowReport find_extrema(const Spectrum &spectrum, const PowerFunction &power);

class NoCrossingError : public Error
{
public:
    using Error::Error;
};

struct FwhmResult
{
    double width = 0.0;
    double left = 0.0;   // left crossing
    double right = 0.0;  // right crossing
    double level = 0.0;
};

// Full width of a peak at `level` (default: half the peak value). Each side
// is bisected between the peak and its bound; NoCrossingError when |T|^2 does
// not drop below the level before the bound.
FwhmResult measure_fwhm(const PowerFunction &power, double peak_omega, double left_bound, double right_bound,
                        std::optional<double> level = std::nullopt);

// Sweep + refined extrema + FWHM of every maximum, bracketed by the adjacent
// minima (or the grid edges). A window without a half-level crossing is
// reported with fwhm unset.
WindowReport measure_windows(const ChainConfig &config, const ProbeGrid &grid, Method method,
                             SweepOptions options = {});

// A coupled peak must beat the decoupled model at the same frequency by this
// factor to count as an interference window.
inline constexpr double kMinWindowEnhancement = 2.0;

// A window exists when |T|^2 has an interior maximum between the two
// cavity frequencies and that maximum is enhanced over the decoupled model.
// Its width is measured separately: shallow dips (large kappa0) may never
// fall to half the peak.
struct WindowAnalysis
{
    bool exists = false;
    std::string reason;  // why there is no window, when !exists
    double peak_omega = 0.0;
    double peak_power = 0.0;
    double decoupled_power = 0.0;
    std::optional<FwhmResult> fwhm;
    std::string fwhm_failure;  // set when an existing window has no FWHM
};

// Window `index` (1-based) lies between cavities index and index + 1 of a
// chain whose cavities are sorted by frequency.
WindowAnalysis analyze_window(const ChainConfig &config, std::size_t index);

// ceil((N - 1) / 2), 1-based; 0 when N < 2.
std::size_t central_window_index(std::size_t n);

enum class TrendParameter
{
    kappa1,
    kappa0,
};

enum class TrendQuantity
{
    fwhm,
    peak_transmission,
};

struct TrendPoint
{
    double parameter = 0.0;
    std::optional<double> value;  // unset: no window at this parameter
    std::string note;
};

struct TrendCurve
{
    TrendParameter parameter;
    TrendQuantity quantity;
    std::string context;
    std::vector<TrendPoint> points;  // sorted by parameter
};

// Central-window FWHM of uniform chains (delta = 1, kappa2 = kappa1).
TrendCurve fwhm_vs_kappa1(int n, double kappa0_over_delta, std::span<const double> kappa1_values);

// Central-window peak |T|^2 of uniform chains (delta = 1, kappa2 = kappa1).
TrendCurve tmax_vs_kappa0(int n, double kappa1_over_delta, std::span<const double> kappa0_values);

}  // namespace dropchain

#endif  // DROPCHAIN_SPECTRA_HPP
