#ifndef DROPCHAIN_CLI_RUN_CONFIG_HPP
#define DROPCHAIN_CLI_RUN_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "dropchain/model.hpp"

// Run configuration document. A JSON object with these keys (unknown keys are
// rejected):
//
//   "chain":   {"cavities": [{"omega", "kappa0", "kappa1", "kappa2", "phi_next"?}, ...],
//               "a_in"?: {"re", "im"}}
//   "uniform": {"n", "kappa0", "kappa1", "kappa2", "delta"}
//   "grid"?:   {"start", "stop", "points"}
//   "method"?: "solver" | "closed" | "decoupled"
//   "output"?: {"csv"?, "svg"?, "svg_log_y"?}
//
// Exactly one of "chain" / "uniform" must be present. The cavities array is
// 0-based: element 0 is the leftmost cavity (cavity 1).

namespace dropchain::cli
{

class ConfigError : public Error
{
public:
    using Error::Error;
};

struct UniformShorthand
{
    int n = 1;
    double kappa0 = 0.0;
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double delta = 1.0;

    friend bool operator==(const UniformShorthand &, const UniformShorthand &) = default;
};

struct OutputSpec
{
    std::optional<std::string> csv;
    std::optional<std::string> svg;
    bool svg_log_y = false;

    friend bool operator==(const OutputSpec &, const OutputSpec &) = default;
};

struct RunConfig
{
    ChainConfig chain;                       // always populated
    std::optional<UniformShorthand> uniform; // set when the document used the shorthand
    std::optional<ProbeGrid> grid;
    Method method = Method::general_solver;
    OutputSpec output;

    // The configured grid, or the default grid (delta from the shorthand, or
    // the nominal spacing of an explicit chain).
    ProbeGrid effective_grid() const;
};

std::optional<Method> parse_method(std::string_view name);
std::string_view method_flag_name(Method method);

// Throws ConfigError with a JSON-pointer or line/column diagnostic.
RunConfig parse_run_config(const nlohmann::json &doc);
RunConfig parse_run_config_text(std::string_view text);
// Throws std::ios_base::failure when the file cannot be read.
RunConfig load_run_config(const std::filesystem::path &path);

nlohmann::json to_json(const RunConfig &config);

}  // namespace dropchain::cli

#endif  // DROPCHAIN_CLI_RUN_CONFIG_HPP
