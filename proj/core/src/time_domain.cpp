#include "dropchain/time_domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dropchain/steady_state.hpp"

namespace dropchain
{
namespace
{

double max_abs(std::span<const cplx> v)
{
    double m = 0.0;
    for (const auto &x : v)
        m = std::max(m, std::abs(x));
    return m;
}

// Same recurrences as waveguide_fields(), fused into one pass per direction
// so the integrator does not allocate per step. bus is scratch of length N.
void evaluate_rate(const ChainConfig &config, double omega, std::span<const cplx> state,
                   std::span<cplx> rate, std::span<cplx> bus)
{
    const std::size_t n = config.size();

    cplx bus_field = config.a_in;
    for (std::size_t i = 0; i < n; ++i)
    {
        const auto &c = config.cavities[i];
        bus[i] = bus_field;
        bus_field += std::sqrt(c.kappa1) * state[i];
        if (c.phi_next != 0.0)
            bus_field *= std::polar(1.0, c.phi_next);
    }

    cplx drop_field{};  // a_{i+1}^out
    for (std::size_t i = n; i-- > 0;)
    {
        const auto &c = config.cavities[i];
        const cplx drop_feed = c.phi_next == 0.0 ? drop_field : std::polar(1.0, c.phi_next) * drop_field;
        rate[i] = cplx{-0.5 * c.total_loss(), omega - c.omega} * state[i] -
                  std::sqrt(c.kappa1) * bus[i] - std::sqrt(c.kappa2) * drop_feed;
        drop_field = drop_feed + std::sqrt(c.kappa2) * state[i];
    }
}

struct Rk4Workspace
{
    explicit Rk4Workspace(std::size_t n) : k1(n), k2(n), k3(n), k4(n), probe(n), bus(n) {}

    void step(const ChainConfig &config, double omega, std::vector<cplx> &state, double dt)
    {
        const std::size_t n = state.size();
        evaluate_rate(config, omega, state, k1, bus);
        for (std::size_t i = 0; i < n; ++i)
            probe[i] = state[i] + 0.5 * dt * k1[i];
        evaluate_rate(config, omega, probe, k2, bus);
        for (std::size_t i = 0; i < n; ++i)
            probe[i] = state[i] + 0.5 * dt * k2[i];
        evaluate_rate(config, omega, probe, k3, bus);
        for (std::size_t i = 0; i < n; ++i)
            probe[i] = state[i] + dt * k3[i];
        evaluate_rate(config, omega, probe, k4, bus);
        for (std::size_t i = 0; i < n; ++i)
            state[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }

    std::vector<cplx> k1, k2, k3, k4, probe, bus;
};

}  // namespace

double max_total_loss(const ChainConfig &config)
{
    double m = 0.0;
    for (const auto &c : config.cavities)
        m = std::max(m, c.total_loss());
    return m;
}

double min_total_loss(const ChainConfig &config)
{
    double m = std::numeric_limits<double>::infinity();
    for (const auto &c : config.cavities)
        if (c.total_loss() > 0.0)
            m = std::min(m, c.total_loss());
    return std::isfinite(m) ? m : 0.0;
}

IntegrationSettings IntegrationSettings::defaults_for(const ChainConfig &config)
{
    const double kmax = max_total_loss(config);
    const double kmin = min_total_loss(config);
    IntegrationSettings s;
    s.dt = kmax > 0.0 ? 0.01 / kmax : 0.01;
    s.rel_tol = 1e-10;
    s.max_time = kmin > 0.0 ? 1e5 / kmin : 1e3 * s.dt;
    return s;
}

void check_settings(const ChainConfig &config, const IntegrationSettings &settings)
{
    if (!(settings.dt > 0.0) || !(settings.rel_tol > 0.0) || !(settings.max_time > 0.0))
        throw PreconditionError("integration settings must be positive");
    const double kmax = max_total_loss(config);
    if (kmax > 0.0 && !(settings.dt < 0.1 / kmax))
    {
        std::ostringstream msg;
        msg << "time step " << settings.dt << " violates dt < 0.1 / kappa_max = " << 0.1 / kmax;
        throw PreconditionError(msg.str());
    }
}

std::vector<cplx> derivative(const ChainConfig &config, double omega, std::span<const cplx> state)
{
    if (state.size() != config.size())
        throw PreconditionError("state length does not match the chain length");
    std::vector<cplx> rate(state.size());
    std::vector<cplx> bus(state.size());
    evaluate_rate(config, omega, state, rate, bus);
    return rate;
}

void rk4_step(const ChainConfig &config, double omega, std::vector<cplx> &state, double dt)
{
    if (state.size() != config.size())
        throw PreconditionError("state length does not match the chain length");
    Rk4Workspace work(state.size());
    work.step(config, omega, state, dt);
}

TimeDomainResult integrate_to_steady_state(const ChainConfig &config, double omega,
                                           const IntegrationSettings &settings)
{
    require_valid(config);
    check_settings(config, settings);

    const double kmin = min_total_loss(config);
    const double window = kmin > 0.0 ? 1.0 / kmin : settings.dt;
    const auto window_steps = static_cast<std::size_t>(std::max(1.0, std::ceil(window / settings.dt)));
    const auto max_steps = static_cast<std::size_t>(std::ceil(settings.max_time / settings.dt));

    std::vector<cplx> state(config.size());
    std::vector<cplx> snapshot = state;

    Rk4Workspace work(config.size());
    std::size_t step = 0;
    while (step < max_steps)
    {
        work.step(config, omega, state, settings.dt);
        ++step;
        if (step % window_steps != 0)
            continue;

        double worst = 0.0;
        for (std::size_t i = 0; i < state.size(); ++i)
            worst = std::max(worst, std::abs(state[i] - snapshot[i]) / (std::abs(state[i]) + 1e-30));
        if (worst < settings.rel_tol)
        {
            TimeDomainResult result;
            result.solution.omega = omega;
            result.solution.amplitudes = state;
            const auto fields = waveguide_fields(config, state);
            result.solution.t = fields.bus_in.back() / config.a_in;
            result.solution.d = fields.drop_out.front() / config.a_in;
            result.elapsed = static_cast<double>(step) * settings.dt;
            result.steps = step;
            return result;
        }
        snapshot = state;
    }

    const double residual = max_abs(derivative(config, omega, state));
    std::ostringstream msg;
    msg << "time-domain integration did not converge within t = " << settings.max_time
        << " (residual derivative norm " << residual << ")";
    throw NonConvergenceError(msg.str(), std::move(state), residual);
}

}  // namespace dropchain
