#ifndef DROPCHAIN_CLI_COMMANDS_HPP
#define DROPCHAIN_CLI_COMMANDS_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dropchain/model.hpp"
#include "dropchain/spectra.hpp"

namespace dropchain::cli
{

enum ExitCode : int
{
    kExitOk = 0,
    kExitIo = 1,
    kExitConfig = 2,
    kExitPrecondition = 3,
    kExitOracleMismatch = 4,
};

// Fixed 17-significant-digit scientific notation, e.g. 1.0000000000000000e+00.
std::string format_number(double value);

// Header omega,t_re,t_im,d_re,d_im,t2,d2 and one row per sample.
void write_spectrum_csv(std::ostream &out, const Spectrum &spectrum);
// Header param,value; rows without a window carry "no-window".
void write_trend_csv(std::ostream &out, const TrendCurve &curve);

nlohmann::json window_report_json(const WindowReport &report);

// Sinks: `out` receives primary output when no file path is configured, `log`
// receives diagnostics.
struct Streams
{
    std::ostream &out;
    std::ostream &log;
};

struct SpectrumArgs
{
    std::string config_path;
    std::optional<Method> method;
    std::optional<std::string> out;
    std::optional<std::string> svg;
    std::optional<std::size_t> points;
    bool log_y = false;
    unsigned threads = 0;
};

struct Figure2Args
{
    int n = 2;
    std::string out_dir = ".";
    std::optional<std::string> svg;
    std::optional<std::size_t> points;
    bool log_y = false;
    unsigned threads = 0;
};

struct Figure3Args
{
    char panel = 'a';
    int n = 2;
    std::optional<std::string> out;
    std::optional<std::string> svg;
};

struct WindowsArgs
{
    std::string config_path;
    std::optional<Method> method;
    std::optional<std::string> out;
    std::optional<std::size_t> points;
    unsigned threads = 0;
};

inline constexpr double kOracleTransmissionTolerance = 1e-6;
inline constexpr double kOracleBalanceTolerance = 1e-9;

struct OracleCheckArgs
{
    std::string config_path;
    std::optional<std::string> out;
    std::size_t samples = 16;
    std::optional<double> dt;
    std::optional<double> rel_tol;
    std::optional<double> max_time;
};

// Default parameter ranges of the two trend panels.
std::vector<double> figure3_kappa1_range();
std::vector<double> figure3_kappa0_range();

// Caption parameters of the coupled-spectrum figure: kappa0/kappa1 = 1e-3,
// kappa1/delta = 2, kappa2 = kappa1.
ChainConfig figure2_chain(int n);

int cmd_spectrum(const SpectrumArgs &args, Streams io);
int cmd_figure2(const Figure2Args &args, Streams io);
int cmd_figure3(const Figure3Args &args, Streams io);
int cmd_windows(const WindowsArgs &args, Streams io);
int cmd_oracle_check(const OracleCheckArgs &args, Streams io);

}  // namespace dropchain::cli

#endif  // DROPCHAIN_CLI_COMMANDS_HPP
