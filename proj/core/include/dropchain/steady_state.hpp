#ifndef DROPCHAIN_STEADY_STATE_HPP
#define DROPCHAIN_STEADY_STATE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dropchain/linalg.hpp"
#include "dropchain/model.hpp"

// Frequency-domain responses of the bus/drop-coupled chain.
//
// Each cavity obeys, in the frame rotating at the probe frequency,
//
//   da_i/dt = (i*Delta_i - kappa_i/2) a_i - sqrt(k1_i) a_i^in - sqrt(k2_i) e^{i phi_i} a_{i+1}^out
//
// with Delta_i = omega - omega_i and kappa_i = k0_i + k1_i + k2_i. The bus field
// travels left to right and the drop field right to left:
//
//   a_1^in     = a_in,   a_{i+1}^in = e^{i phi_i} (a_i^in + sqrt(k1_i) a_i)
//   a_{N+1}^out = 0,     a_i^out    = e^{i phi_i} a_{i+1}^out + sqrt(k2_i) a_i
//
// The through port is a_{N+1}^in (phi_N is not applied) and the drop port is
// a_1^out. Each waveguide term uses the rate of the cavity that emits into it.

namespace dropchain
{

// Bus and drop fields at the N+1 waveguide nodes for a given cavity state.
// bus_in[i] is the bus field arriving at cavity i (0-based), bus_in[N] the
// through output; drop_out[i] is the drop field leaving cavity i leftwards,
// drop_out[N] == 0.
struct WaveguideFields
{
    std::vector<cplx> bus_in;
    std::vector<cplx> drop_out;
};

WaveguideFields waveguide_fields(const ChainConfig &config, std::span<const cplx> amplitudes);

struct LinearSystem
{
    ComplexMatrix matrix;
    std::vector<cplx> rhs;
};

// matrix * a = rhs encodes the steady state of every cavity with the
// waveguide fields eliminated.
LinearSystem assemble_system(const ChainConfig &config, double omega);

// Throws SingularMatrixError for degenerate rows (a cavity with all rates
// zero probed exactly on resonance).
FieldSolution solve_steady_state(const ChainConfig &config, double omega);

// Returns a description of why the closed form does not apply, or nullopt if
// it does: identical rates in every cavity, kappa1 == kappa2, and zero phase
// between cavities.
std::optional<std::string> closed_form_violation(const ChainConfig &config);

// Squared-modulus threshold on (i*Delta_i - kappa0/2) below which the closed
// form returns its analytic limit T = 0.
inline constexpr double kClosedFormSingularity = 1e-30;

// T = 1 / (1 - kappa1 * c) with c = sum_i 1 / (i*Delta_i - kappa0/2).
cplx closed_form_transmission(const ChainConfig &config, double omega);

// Product of independent single-cavity through responses
// (i*Delta_i - kappa_i/2 + k1_i) / (i*Delta_i - kappa_i/2); every drop output
// is lost instead of feeding the previous cavity.
cplx decoupled_transmission(const ChainConfig &config, double omega);

// Drop port of the decoupled model: only cavity 1 emits into it.
cplx decoupled_drop(const ChainConfig &config, double omega);

struct BalanceReport
{
    double through_power = 0.0;
    double drop_power = 0.0;
    double intrinsic_loss = 0.0;
    double residual = 0.0;  // 1 - (through + drop + loss)
};

BalanceReport energy_balance(const ChainConfig &config, const FieldSolution &solution);

}  // namespace dropchain

#endif  // DROPCHAIN_STEADY_STATE_HPP
