#include "dropchain/steady_state.hpp"

#include <cmath>

namespace dropchain
{
namespace
{

// cumulative[k] = phi_0 + ... + phi_{k-1} over the first N-1 cavities, so the
// bus/drop phase between cavities j < i is cumulative[i] - cumulative[j].
std::vector<double> cumulative_phase(const ChainConfig &config)
{
    const std::size_t n = config.size();
    std::vector<double> cumulative(n, 0.0);
    for (std::size_t k = 1; k < n; ++k)
        cumulative[k] = cumulative[k - 1] + config.cavities[k - 1].phi_next;
    return cumulative;
}

cplx unit_phase(double angle)
{
    return angle == 0.0 ? cplx{1.0, 0.0} : std::polar(1.0, angle);
}

}  // namespace

WaveguideFields waveguide_fields(const ChainConfig &config, std::span<const cplx> amplitudes)
{
    const std::size_t n = config.size();
    if (amplitudes.size() != n)
        throw PreconditionError("amplitude count does not match the chain length");

    WaveguideFields fields;
    fields.bus_in.resize(n + 1);
    fields.drop_out.resize(n + 1);

    fields.bus_in[0] = config.a_in;
    for (std::size_t i = 0; i < n; ++i)
    {
        const auto &c = config.cavities[i];
        const cplx passed = fields.bus_in[i] + std::sqrt(c.kappa1) * amplitudes[i];
        fields.bus_in[i + 1] = (i + 1 < n) ? unit_phase(c.phi_next) * passed : passed;
    }

    fields.drop_out[n] = cplx{};
    for (std::size_t i = n; i-- > 0;)
    {
        const auto &c = config.cavities[i];
        fields.drop_out[i] = unit_phase(c.phi_next) * fields.drop_out[i + 1] +
                             std::sqrt(c.kappa2) * amplitudes[i];
    }
    return fields;
}

LinearSystem assemble_system(const ChainConfig &config, double omega)
{
    require_valid(config);
    const std::size_t n = config.size();
    const auto cumulative = cumulative_phase(config);

    std::vector<double> root1(n), root2(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        root1[i] = std::sqrt(config.cavities[i].kappa1);
        root2[i] = std::sqrt(config.cavities[i].kappa2);
    }

    LinearSystem system{ComplexMatrix(n), std::vector<cplx>(n)};
    for (std::size_t i = 0; i < n; ++i)
    {
        const auto &c = config.cavities[i];
        system.matrix(i, i) = cplx{-0.5 * c.total_loss(), omega - c.omega};

        // Upstream cavities reach cavity i through the bus.
        for (std::size_t j = 0; j < i; ++j)
            system.matrix(i, j) = -root1[i] * root1[j] * unit_phase(cumulative[i] - cumulative[j]);

        // Downstream cavities reach cavity i through the drop waveguide.
        for (std::size_t j = i + 1; j < n; ++j)
            system.matrix(i, j) = -root2[i] * root2[j] * unit_phase(cumulative[j] - cumulative[i]);

        system.rhs[i] = root1[i] * unit_phase(cumulative[i]) * config.a_in;
    }
    return system;
}

FieldSolution solve_steady_state(const ChainConfig &config, double omega)
{
    auto system = assemble_system(config, omega);

    FieldSolution solution;
    solution.omega = omega;
    solution.amplitudes = solve_dense(std::move(system.matrix), std::move(system.rhs));

    const auto fields = waveguide_fields(config, solution.amplitudes);
    solution.t = fields.bus_in.back() / config.a_in;
    solution.d = fields.drop_out.front() / config.a_in;
    return solution;
}

std::optional<std::string> closed_form_violation(const ChainConfig &config)
{
    const auto validation = validate(config);
    if (!validation.ok())
        return "invalid chain config: " + validation.summary();

    const auto &first = config.cavities.front();
    for (std::size_t i = 0; i < config.size(); ++i)
    {
        const auto &c = config.cavities[i];
        const std::string where = " (cavity " + std::to_string(i + 1) + ")";
        if (c.kappa1 != c.kappa2)
            return "closed form requires kappa1 == kappa2" + where;
        if (c.kappa0 != first.kappa0 || c.kappa1 != first.kappa1)
            return "closed form requires identical rates in every cavity" + where;
        if (i + 1 < config.size() && c.phi_next != 0.0)
            return "closed form requires zero phase between cavities" + where;
    }
    return std::nullopt;
}

cplx closed_form_transmission(const ChainConfig &config, double omega)
{
    if (auto why = closed_form_violation(config))
        throw PreconditionError(*why);

    const double kappa0 = config.cavities.front().kappa0;
    const double kappa1 = config.cavities.front().kappa1;
    if (kappa1 == 0.0)
        return cplx{1.0, 0.0};

    cplx c{};
    for (const auto &cavity : config.cavities)
    {
        const cplx pole{-0.5 * kappa0, omega - cavity.omega};
        if (std::norm(pole) < kClosedFormSingularity)
            return cplx{};
        c += 1.0 / pole;
    }
    return 1.0 / (1.0 - kappa1 * c);
}

namespace
{

// Single-cavity amplitude per unit bus drive, sqrt(k1) / (i*Delta - kappa/2);
// zero for an isolated cavity.
cplx single_cavity_response(const CavityParams &c, double omega)
{
    const cplx denom{-0.5 * c.total_loss(), omega - c.omega};
    if (denom == cplx{})
        return cplx{};
    return cplx{std::sqrt(c.kappa1), 0.0} / denom;
}

}  // namespace

cplx decoupled_transmission(const ChainConfig &config, double omega)
{
    require_valid(config);
    cplx t{1.0, 0.0};
    for (const auto &c : config.cavities)
        t *= 1.0 + std::sqrt(c.kappa1) * single_cavity_response(c, omega);
    return t;
}

cplx decoupled_drop(const ChainConfig &config, double omega)
{
    require_valid(config);
    const auto &first = config.cavities.front();
    return std::sqrt(first.kappa2) * single_cavity_response(first, omega);
}

BalanceReport energy_balance(const ChainConfig &config, const FieldSolution &solution)
{
    if (solution.amplitudes.size() != config.size())
        throw PreconditionError("solution does not belong to this chain");

    BalanceReport report;
    report.through_power = solution.through_power();
    report.drop_power = solution.drop_power();

    const double input = std::norm(config.a_in);
    double loss = 0.0;
    for (std::size_t i = 0; i < config.size(); ++i)
        loss += config.cavities[i].kappa0 * std::norm(solution.amplitudes[i]);
    report.intrinsic_loss = loss / input;

    report.residual = 1.0 - (report.through_power + report.drop_power + report.intrinsic_loss);
    return report;
}

}  // namespace dropchain
