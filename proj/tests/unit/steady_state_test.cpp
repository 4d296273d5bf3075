#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "dropchain/steady_state.hpp"
#include "dropchain/time_domain.hpp"
#include "oracles.hpp"

namespace dropchain
{
namespace
{

ChainConfig single(double k0, double k1, double k2)
{
    ChainConfig c;
    c.cavities.push_back({0.0, k0, k1, k2, 0.0});
    return c;
}

TEST(AssembleSystem, SingleCavityOnResonance)
{
    const auto sys = assemble_system(single(0.0, 1.0, 1.0), 0.0);
    ASSERT_EQ(sys.matrix.size(), 1u);
    EXPECT_EQ(sys.matrix(0, 0), cplx(-1.0, 0.0));
    EXPECT_EQ(sys.rhs[0], cplx(1.0, 0.0));
}

TEST(AssembleSystem, UncoupledChainIsDiagonal)
{
    const auto c = uniform_chain(4, 0.3, 0.0, 0.0, 1.0);
    const auto sys = assemble_system(c, 0.7);
    for (std::size_t r = 0; r < 4; ++r)
    {
        EXPECT_EQ(sys.rhs[r], cplx(0.0, 0.0));
        for (std::size_t col = 0; col < 4; ++col)
        {
            if (r == col)
                EXPECT_EQ(sys.matrix(r, col), cplx(-0.15, 0.7 - static_cast<double>(r)));
            else
                EXPECT_EQ(sys.matrix(r, col), cplx(0.0, 0.0));
        }
    }
}

TEST(AssembleSystem, TwoCavityOffDiagonals)
{
    const auto sys = assemble_system(uniform_chain(2, 0.002, 2.0, 2.0, 1.0), 0.5);
    EXPECT_NEAR(std::abs(sys.matrix(0, 1) - cplx(-2.0, 0.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(sys.matrix(1, 0) - cplx(-2.0, 0.0)), 0.0, 1e-15);
}

TEST(AssembleSystem, RejectsInvalidConfig)
{
    EXPECT_THROW(assemble_system(ChainConfig{}, 0.0), PreconditionError);
}

// The assembled rows must be exactly the coupled-mode right-hand side with the
// waveguide fields eliminated: M a - rhs == da/dt for any state a.
TEST(AssembleSystem, MatchesEquationsOfMotionProperty)
{
    testing::ConfigGenerator gen(21);
    for (int trial = 0; trial < 300; ++trial)
    {
        const auto c = gen.arbitrary(7);
        const double omega = gen.uniform(-4.0, 4.0);
        std::vector<cplx> a(c.size());
        for (auto &x : a)
            x = {gen.uniform(-2, 2), gen.uniform(-2, 2)};
        const auto sys = assemble_system(c, omega);
        const auto lhs = sys.matrix.multiply(a);
        const auto rate = derivative(c, omega, a);
        for (std::size_t i = 0; i < a.size(); ++i)
            ASSERT_NEAR(std::abs(lhs[i] - sys.rhs[i] - rate[i]), 0.0, 1e-12) << "trial " << trial;
    }
}

TEST(SolveSteadyState, SingleCavityCriticallyCoupled)
{
    const auto s = solve_steady_state(single(0.0, 1.0, 1.0), 0.0);
    ASSERT_EQ(s.amplitudes.size(), 1u);
    EXPECT_NEAR(std::abs(s.amplitudes[0] - cplx(-1.0, 0.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.t), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.d - cplx(-1.0, 0.0)), 0.0, 1e-15);
}

TEST(SolveSteadyState, UncoupledChainIsTransparent)
{
    const auto s = solve_steady_state(uniform_chain(3, 1.0, 0.0, 0.0, 1.0), 1.0);
    for (const auto &a : s.amplitudes)
        EXPECT_EQ(a, cplx(0.0, 0.0));
    EXPECT_EQ(s.t, cplx(1.0, 0.0));
    EXPECT_EQ(s.d, cplx(0.0, 0.0));
}

TEST(SolveSteadyState, TwoCavityMidpoint)
{
    // At the midpoint the two resonance terms are complex conjugates, so
    // c = -k0 / (k0^2/4 + 1/4) is real.
    const double k0 = 0.002;
    const double k1 = 2.0;
    const double c = -2.0 * (k0 / 2.0) / (k0 * k0 / 4.0 + 0.25);
    const double expected = 1.0 / std::pow(1.0 - k1 * c, 2);
    const auto s = solve_steady_state(uniform_chain(2, k0, k1, k1, 1.0), 0.5);
    EXPECT_NEAR(s.through_power(), expected, 1e-12);
    EXPECT_NEAR(s.through_power(), 0.96875, 1e-3);
}

TEST(SolveSteadyState, DegenerateCavityOnResonanceIsSingular)
{
    ChainConfig c;
    c.cavities.push_back({0.0, 0.0, 1.0, 1.0, 0.0});
    c.cavities.push_back({2.0, 0.0, 0.0, 0.0, 0.0});
    EXPECT_THROW(solve_steady_state(c, 2.0), SingularMatrixError);
}

TEST(ClosedForm, SingleCavityDetuned)
{
    const auto t = closed_form_transmission(single(0.0, 1.0, 1.0), 1.0);
    EXPECT_NEAR(std::norm(t), 0.5, 1e-15);
}

TEST(ClosedForm, ZeroCouplingIsTransparent)
{
    const auto c = uniform_chain(3, 0.0, 0.0, 0.0, 1.0);
    EXPECT_EQ(closed_form_transmission(c, 0.0), cplx(1.0, 0.0));
    EXPECT_EQ(closed_form_transmission(c, 0.37), cplx(1.0, 0.0));
}

TEST(ClosedForm, LosslessTwoCavityMidpointIsPerfect)
{
    EXPECT_NEAR(std::norm(closed_form_transmission(uniform_chain(2, 0.0, 2.0, 2.0, 1.0), 0.5)), 1.0, 1e-15);
}

TEST(ClosedForm, LosslessResonanceLimit)
{
    EXPECT_EQ(closed_form_transmission(uniform_chain(2, 0.0, 2.0, 2.0, 1.0), 1.0), cplx(0.0, 0.0));
}

TEST(ClosedForm, MatchesResonanceSumOracle)
{
    for (int n = 1; n <= 6; ++n)
        for (double omega = -2.0; omega < n + 1.0; omega += 0.0371)
        {
            const auto t = closed_form_transmission(uniform_chain(n, 0.002, 2.0, 2.0, 1.0), omega);
            EXPECT_NEAR(std::norm(t), testing::resonance_sum_power(n, 0.002, 2.0, 1.0, omega), 1e-12);
        }
}

TEST(ClosedForm, PreconditionViolations)
{
    auto c = uniform_chain(2, 0.002, 2.0, 2.0, 1.0);
    EXPECT_FALSE(closed_form_violation(c).has_value());

    auto phase = c;
    phase.cavities[0].phi_next = 0.5;
    EXPECT_TRUE(closed_form_violation(phase).has_value());
    EXPECT_THROW(closed_form_transmission(phase, 0.5), PreconditionError);

    // The last cavity's phase never enters the through response.
    auto last_phase = c;
    last_phase.cavities[1].phi_next = 0.5;
    EXPECT_FALSE(closed_form_violation(last_phase).has_value());

    auto asym = c;
    asym.cavities[0].kappa2 = 1.0;
    asym.cavities[1].kappa2 = 1.0;
    EXPECT_TRUE(closed_form_violation(asym).has_value());

    auto mixed = c;
    mixed.cavities[1].kappa0 = 0.01;
    EXPECT_TRUE(closed_form_violation(mixed).has_value());
}

TEST(ClosedForm, DistinctFrequenciesAllowed)
{
    ChainConfig c = uniform_chain(3, 0.01, 1.0, 1.0, 1.0);
    c.cavities[2].omega = 3.5;
    EXPECT_FALSE(closed_form_violation(c).has_value());
    EXPECT_NEAR(std::abs(closed_form_transmission(c, 0.8) - solve_steady_state(c, 0.8).t), 0.0, 1e-12);
}

TEST(Decoupled, SingleCavityMatchesSolver)
{
    const auto c = single(0.1, 1.3, 0.7);
    for (double omega = -3.0; omega <= 3.0; omega += 0.25)
    {
        const auto s = solve_steady_state(c, omega);
        EXPECT_NEAR(std::abs(decoupled_transmission(c, omega) - s.t), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(decoupled_drop(c, omega) - s.d), 0.0, 1e-14);
    }
}

TEST(Decoupled, TwoCavityMidpoint)
{
    // Each factor is (i/2 - 2 + 2) / (i/2 - 2) = i / (i - 4); squared modulus 1/17.
    const auto t = decoupled_transmission(uniform_chain(2, 0.0, 2.0, 2.0, 1.0), 0.5);
    EXPECT_NEAR(std::norm(t), 1.0 / 289.0, 1e-15);
}

TEST(Decoupled, FarDetunedLimit)
{
    const auto c = uniform_chain(3, 0.002, 2.0, 2.0, 1.0);
    EXPECT_NEAR(std::norm(decoupled_transmission(c, 1e6)), 1.0, 1e-5);
}

TEST(EnergyBalance, Examples)
{
    const auto crit = energy_balance(single(0.0, 1.0, 1.0), solve_steady_state(single(0.0, 1.0, 1.0), 0.0));
    EXPECT_NEAR(crit.through_power, 0.0, 1e-15);
    EXPECT_NEAR(crit.drop_power, 1.0, 1e-15);
    EXPECT_NEAR(crit.intrinsic_loss, 0.0, 1e-15);
    EXPECT_NEAR(crit.residual, 0.0, 1e-15);

    // kappa0 = 2, kappa1 = 2, kappa2 = 0 on resonance: a = -sqrt(2)/2,
    // T = 1 - 2/2 = 0, loss = kappa0 |a|^2 = 1.
    const auto lossy = single(2.0, 2.0, 0.0);
    const auto b = energy_balance(lossy, solve_steady_state(lossy, 0.0));
    EXPECT_NEAR(b.through_power, 0.0, 1e-15);
    EXPECT_NEAR(b.intrinsic_loss, 1.0, 1e-15);
    EXPECT_NEAR(b.residual, 0.0, 1e-15);
}

TEST(EnergyBalance, ClosesForArbitraryChainsProperty)
{
    testing::ConfigGenerator gen(31);
    for (int trial = 0; trial < 1000; ++trial)
    {
        const auto c = gen.arbitrary(8);
        const double omega = gen.uniform(-5.0, 5.0);
        const auto b = energy_balance(c, solve_steady_state(c, omega));
        ASSERT_LT(std::abs(b.residual), 1e-9) << "trial " << trial;
        EXPECT_GE(b.through_power, 0.0);
        EXPECT_GE(b.drop_power, 0.0);
        EXPECT_GE(b.intrinsic_loss, 0.0);
    }
}

TEST(SteadyStateProperties, SolverAgreesWithClosedForm)
{
    testing::ConfigGenerator gen(41);
    for (int trial = 0; trial < 500; ++trial)
    {
        const auto c = gen.uniform_symmetric(10);
        const double omega = gen.uniform(-3.0, static_cast<double>(c.size()) + 2.0);
        const auto s = solve_steady_state(c, omega);
        ASSERT_LT(std::abs(s.t - closed_form_transmission(c, omega)), 1e-10) << "trial " << trial;
    }
}

TEST(SteadyStateProperties, Passivity)
{
    testing::ConfigGenerator gen(51);
    for (int trial = 0; trial < 500; ++trial)
    {
        const auto c = gen.arbitrary(8);
        const auto s = solve_steady_state(c, gen.uniform(-5.0, 5.0));
        EXPECT_LE(s.through_power(), 1.0 + 1e-12);
        EXPECT_LE(s.drop_power(), 1.0 + 1e-12);
    }
}

TEST(SteadyStateProperties, ResponseIndependentOfInputPhaseAndAmplitude)
{
    testing::ConfigGenerator gen(61);
    for (int trial = 0; trial < 200; ++trial)
    {
        auto c = gen.arbitrary(6);
        const double omega = gen.uniform(-4.0, 4.0);
        const auto base = solve_steady_state(c, omega);
        const cplx factor = std::polar(gen.uniform(0.1, 5.0), gen.uniform(-M_PI, M_PI));
        c.a_in *= factor;
        const auto scaled = solve_steady_state(c, omega);
        EXPECT_NEAR(std::abs(scaled.t - base.t), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(scaled.d - base.d), 0.0, 1e-12);
        for (std::size_t i = 0; i < c.size(); ++i)
            EXPECT_NEAR(std::abs(scaled.amplitudes[i] - factor * base.amplitudes[i]), 0.0,
                        1e-11 * (1.0 + std::abs(scaled.amplitudes[i])));
        const auto b0 = energy_balance(c, scaled);
        c.a_in /= factor;
        const auto b1 = energy_balance(c, base);
        EXPECT_NEAR(b0.intrinsic_loss, b1.intrinsic_loss, 1e-12);
        EXPECT_NEAR(b0.residual, b1.residual, 1e-12);
    }
}

TEST(SteadyStateProperties, FarDetuningIsTransparent)
{
    testing::ConfigGenerator gen(71);
    for (int trial = 0; trial < 100; ++trial)
    {
        const auto c = gen.arbitrary(6);
        double max_rate = 0.0;
        double max_omega = 0.0;
        for (const auto &cav : c.cavities)
        {
            max_rate = std::max({max_rate, cav.kappa0, cav.kappa1, cav.kappa2});
            max_omega = std::max(max_omega, std::abs(cav.omega));
        }
        const double omega = (trial % 2 ? 1.0 : -1.0) * (max_omega + 1e6 * max_rate);
        const auto s = solve_steady_state(c, omega);
        EXPECT_NEAR(s.through_power(), 1.0, 1e-4) << "trial " << trial;
        EXPECT_LT(s.drop_power(), 1e-4) << "trial " << trial;
    }
}

TEST(SteadyStateProperties, SingleCavityMethodsAgree)
{
    testing::ConfigGenerator gen(72);
    for (int trial = 0; trial < 200; ++trial)
    {
        const double k1 = gen.uniform(0.0, 5.0);
        ChainConfig c;
        c.cavities.push_back({gen.uniform(-1, 1), gen.uniform(0.0, 1.0), k1, k1, 0.0});
        const double omega = gen.uniform(-4, 4);
        const auto s = solve_steady_state(c, omega);
        EXPECT_NEAR(std::abs(s.t - closed_form_transmission(c, omega)), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(s.t - decoupled_transmission(c, omega)), 0.0, 1e-14);
    }
}

TEST(SteadyStateProperties, DeepDipAtEachResonance)
{
    for (int n = 1; n <= 6; ++n)
    {
        const auto c = uniform_chain(n, 0.002, 2.0, 2.0, 1.0);
        for (int i = 0; i < n; ++i)
            EXPECT_LT(solve_steady_state(c, i).through_power(), 1e-3) << "n=" << n << " i=" << i;
    }
}

TEST(WaveguideFields, NodesFollowRecurrences)
{
    ChainConfig c;
    c.cavities.push_back({0.0, 0.0, 1.0, 4.0, 0.5});
    c.cavities.push_back({1.0, 0.0, 9.0, 1.0, 0.0});
    const std::vector<cplx> a{cplx(1.0, 0.0), cplx(0.0, 1.0)};
    const auto f = waveguide_fields(c, a);
    const cplx e = std::polar(1.0, 0.5);
    EXPECT_NEAR(std::abs(f.bus_in[0] - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f.bus_in[1] - e * 2.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f.bus_in[2] - (e * 2.0 + cplx(0.0, 3.0))), 0.0, 1e-15);
    EXPECT_EQ(f.drop_out[2], cplx(0.0, 0.0));
    EXPECT_NEAR(std::abs(f.drop_out[1] - cplx(0.0, 1.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f.drop_out[0] - (e * cplx(0.0, 1.0) + 2.0)), 0.0, 1e-15);
}

}  // namespace
}  // namespace dropchain
