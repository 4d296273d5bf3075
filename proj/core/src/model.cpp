#include "dropchain/model.hpp"

#include <algorithm>
#include <cmath>

namespace dropchain
{

std::string_view to_string(Violation::Kind kind)
{
    switch (kind)
    {
    case Violation::Kind::empty_chain: return "empty chain";
    case Violation::Kind::negative_rate: return "negative rate";
    case Violation::Kind::non_finite: return "non-finite value";
    case Violation::Kind::zero_input: return "zero input amplitude";
    }
    return "unknown";
}

std::string_view to_string(Method method)
{
    switch (method)
    {
    case Method::general_solver: return "general-solver";
    case Method::closed_form: return "closed-form";
    case Method::decoupled: return "decoupled";
    case Method::time_domain: return "time-domain";
    }
    return "unknown";
}

bool ValidationResult::has(Violation::Kind kind) const
{
    return std::any_of(violations.begin(), violations.end(),
                       [kind](const Violation &v) { return v.kind == kind; });
}

std::string ValidationResult::summary() const
{
    std::string out;
    for (const auto &v : violations)
    {
        if (!out.empty())
            out += "; ";
        out += v.message;
    }
    return out;
}

ValidationResult validate(const ChainConfig &config)
{
    ValidationResult result;
    auto add = [&](Violation::Kind kind, std::optional<std::size_t> cavity, std::string detail) {
        std::string message(to_string(kind));
        if (cavity)
            message += " (cavity " + std::to_string(*cavity + 1) + ")";
        if (!detail.empty())
            message += ": " + detail;
        result.violations.push_back({kind, cavity, std::move(message)});
    };

    if (config.cavities.empty())
        add(Violation::Kind::empty_chain, std::nullopt, "");

    if (!std::isfinite(config.a_in.real()) || !std::isfinite(config.a_in.imag()))
        add(Violation::Kind::non_finite, std::nullopt, "a_in");
    else if (config.a_in == cplx{0.0, 0.0})
        add(Violation::Kind::zero_input, std::nullopt, "");

    for (std::size_t i = 0; i < config.cavities.size(); ++i)
    {
        const auto &c = config.cavities[i];
        const std::pair<const char *, double> rates[] = {
            {"kappa0", c.kappa0}, {"kappa1", c.kappa1}, {"kappa2", c.kappa2}};
        for (const auto &[name, value] : rates)
        {
            if (!std::isfinite(value))
                add(Violation::Kind::non_finite, i, name);
            else if (value < 0.0)
                add(Violation::Kind::negative_rate, i, name);
        }
        if (!std::isfinite(c.omega))
            add(Violation::Kind::non_finite, i, "omega");
        if (!std::isfinite(c.phi_next))
            add(Violation::Kind::non_finite, i, "phi_next");
    }
    return result;
}

void require_valid(const ChainConfig &config)
{
    const auto result = validate(config);
    if (!result.ok())
        throw PreconditionError("invalid chain config: " + result.summary());
}

ChainConfig uniform_chain(int n, double kappa0, double kappa1, double kappa2, double delta)
{
    if (n < 1)
        throw PreconditionError("uniform_chain: n must be >= 1, got " + std::to_string(n));
    if (!std::isfinite(delta))
        throw PreconditionError("uniform_chain: delta must be finite");

    ChainConfig config;
    config.cavities.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        config.cavities.push_back({static_cast<double>(i) * delta, kappa0, kappa1, kappa2, 0.0});

    require_valid(config);
    return config;
}

ProbeGrid::ProbeGrid(double start, double stop, std::size_t points)
    : start_(start), stop_(stop), points_(points)
{
    if (!std::isfinite(start) || !std::isfinite(stop))
        throw PreconditionError("probe grid endpoints must be finite");
    if (!(start < stop))
        throw PreconditionError("probe grid requires start < stop");
    if (points < 2)
        throw PreconditionError("probe grid requires at least 2 points");
}

double ProbeGrid::at(std::size_t i) const
{
    if (i + 1 == points_)
        return stop_;
    const double frac = static_cast<double>(i) / static_cast<double>(points_ - 1);
    return start_ + frac * (stop_ - start_);
}

std::vector<double> ProbeGrid::values() const
{
    std::vector<double> out(points_);
    for (std::size_t i = 0; i < points_; ++i)
        out[i] = at(i);
    return out;
}

}  // namespace dropchain
