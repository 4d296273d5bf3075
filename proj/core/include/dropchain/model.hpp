#ifndef DROPCHAIN_MODEL_HPP
#define DROPCHAIN_MODEL_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Domain types for a chain of N resonators side-coupled to a shared bus
// waveguide and a shared drop waveguide.
//
// Units: every frequency and rate is a plain double in one angular-frequency
// unit. The tests and the CLI figures use the nominal mode spacing delta = 1.
//
// Cavity indexing is 1-based left-to-right in the physics, 0-based in every
// container here (cavities[0] is cavity 1).

namespace dropchain
{

using cplx = std::complex<double>;

// Base for every error thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// An operation was called outside its domain (invalid config, closed form on
// a non-uniform chain, unstable time step, ...).
class PreconditionError : public Error
{
public:
    using Error::Error;
};

struct CavityParams
{
    double omega = 0.0;     // center frequency
    double kappa0 = 0.0;    // intrinsic loss rate
    double kappa1 = 0.0;    // bus coupling rate
    double kappa2 = 0.0;    // drop coupling rate
    double phi_next = 0.0;  // waveguide phase to the next cavity; unused on the last one

    double total_loss() const { return kappa0 + kappa1 + kappa2; }

    friend bool operator==(const CavityParams &, const CavityParams &) = default;
};

struct ChainConfig
{
    std::vector<CavityParams> cavities;
    cplx a_in{1.0, 0.0};

    std::size_t size() const { return cavities.size(); }

    friend bool operator==(const ChainConfig &, const ChainConfig &) = default;
};

struct Violation
{
    enum class Kind
    {
        empty_chain,
        negative_rate,
        non_finite,
        zero_input,
    };

    Kind kind;
    std::optional<std::size_t> cavity;  // 0-based, when the violation is per cavity
    std::string message;
};

std::string_view to_string(Violation::Kind kind);

struct ValidationResult
{
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool has(Violation::Kind kind) const;
    // All messages joined with "; ".
    std::string summary() const;
};

ValidationResult validate(const ChainConfig &config);

// Throws PreconditionError carrying the validation summary if the config is
// not valid.
void require_valid(const ChainConfig &config);

// N identical cavities with omega_i = (i - 1) * delta and all phases zero.
ChainConfig uniform_chain(int n, double kappa0, double kappa1, double kappa2, double delta);

// Uniform probe grid with inclusive endpoints.
class ProbeGrid
{
public:
    ProbeGrid(double start, double stop, std::size_t points);

    double start() const { return start_; }
    double stop() const { return stop_; }
    std::size_t points() const { return points_; }
    double step() const { return (stop_ - start_) / static_cast<double>(points_ - 1); }

    // Sample i; the last sample is exactly stop().
    double at(std::size_t i) const;
    std::vector<double> values() const;

    friend bool operator==(const ProbeGrid &, const ProbeGrid &) = default;

private:
    double start_;
    double stop_;
    std::size_t points_;
};

// Steady-state fields at one probe frequency.
struct FieldSolution
{
    double omega = 0.0;
    std::vector<cplx> amplitudes;  // <a_i>, i = 1..N
    cplx t;                        // through response a_out / a_in
    cplx d;                        // drop response a_1^out / a_in

    double through_power() const { return std::norm(t); }
    double drop_power() const { return std::norm(d); }
};

enum class Method
{
    general_solver,
    closed_form,
    decoupled,
    time_domain,
};

std::string_view to_string(Method method);

// Reduced per-frequency record of a spectrum.
struct SpectrumSample
{
    double omega = 0.0;
    cplx t;
    cplx d;

    double t2() const { return std::norm(t); }
    double d2() const { return std::norm(d); }
};

struct Spectrum
{
    ProbeGrid grid;
    Method method;
    std::vector<SpectrumSample> samples;  // samples[i].omega == grid.at(i)
};

struct Minimum
{
    double omega = 0.0;
    double power = 0.0;  // |T|^2
};

struct Maximum
{
    double omega = 0.0;
    double power = 0.0;
    std::optional<double> fwhm;
};

// Transparency-window characterization. Minima and maxima are each sorted by
// omega and alternate along the frequency axis.
struct WindowReport
{
    std::vector<Minimum> minima;
    std::vector<Maximum> maxima;
};

}  // namespace dropchain

#endif  // DROPCHAIN_MODEL_HPP
