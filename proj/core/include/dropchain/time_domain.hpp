#ifndef DROPCHAIN_TIME_DOMAIN_HPP
#define DROPCHAIN_TIME_DOMAIN_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dropchain/model.hpp"

// Direct integration of the coupled-mode equations with a constant drive,
// used as an independent check on the frequency-domain solver. Integration is
// in the frame rotating at the probe frequency, so the steady state is a true
// fixed point.

namespace dropchain
{

struct IntegrationSettings
{
    double dt = 0.0;
    double rel_tol = 0.0;
    double max_time = 0.0;

    // dt = 0.01 / kappa_max, rel_tol = 1e-10, max_time = 1e5 / kappa_min.
    static IntegrationSettings defaults_for(const ChainConfig &config);
};

// Largest total loss kappa_i over the chain (0 for an all-zero chain).
double max_total_loss(const ChainConfig &config);
// Smallest non-zero total loss kappa_i (0 if every cavity is lossless and
// uncoupled).
double min_total_loss(const ChainConfig &config);

// Throws PreconditionError unless dt, rel_tol and max_time are positive and
// dt < 0.1 / kappa_max.
void check_settings(const ChainConfig &config, const IntegrationSettings &settings);

// Right-hand side of the coupled-mode equations. The waveguide fields follow
// the current state instantaneously.
std::vector<cplx> derivative(const ChainConfig &config, double omega, std::span<const cplx> state);

// One classical fourth-order Runge-Kutta step of size dt, in place.
void rk4_step(const ChainConfig &config, double omega, std::vector<cplx> &state, double dt);

class NonConvergenceError : public Error
{
public:
    NonConvergenceError(const std::string &what, std::vector<cplx> last_state, double derivative_norm)
        : Error(what), last_state_(std::move(last_state)), derivative_norm_(derivative_norm)
    {
    }

    const std::vector<cplx> &last_state() const { return last_state_; }
    double derivative_norm() const { return derivative_norm_; }

private:
    std::vector<cplx> last_state_;
    double derivative_norm_;
};

struct TimeDomainResult
{
    FieldSolution solution;
    double elapsed = 0.0;  // simulated time at convergence
    std::size_t steps = 0;
};

// Classical RK4 from the zero state. Convergence is declared when, over a
// look-back window of 1 / kappa_min, every amplitude changed by less than
// rel_tol relative to its current magnitude.
TimeDomainResult integrate_to_steady_state(const ChainConfig &config, double omega,
                                           const IntegrationSettings &settings);

}  // namespace dropchain

#endif  // DROPCHAIN_TIME_DOMAIN_HPP
