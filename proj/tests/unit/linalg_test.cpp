#include <gtest/gtest.h>

#include <random>

#include "dropchain/linalg.hpp"

namespace dropchain
{
namespace
{

TEST(SolveDense, NeedsPivoting)
{
    // Zero leading entry forces a row swap.
    ComplexMatrix a(2);
    a(0, 0) = 0.0;
    a(0, 1) = cplx(0, 1);
    a(1, 0) = 2.0;
    a(1, 1) = 1.0;
    const auto x = solve_dense(a, {cplx(0, 3), cplx(5, 0)});
    EXPECT_NEAR(std::abs(x[0] - cplx(1, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(x[1] - cplx(3, 0)), 0.0, 1e-15);
}

TEST(SolveDense, SingularThrows)
{
    ComplexMatrix a(2);
    a(0, 0) = 1.0;
    a(0, 1) = 2.0;
    a(1, 0) = 2.0;
    a(1, 1) = 4.0;
    EXPECT_THROW(solve_dense(a, {1.0, 1.0}), SingularMatrixError);
    EXPECT_THROW(solve_dense(ComplexMatrix(3), std::vector<cplx>(3)), SingularMatrixError);
}

TEST(SolveDense, SizeMismatch)
{
    EXPECT_THROW(solve_dense(ComplexMatrix(2), std::vector<cplx>(3)), PreconditionError);
}

TEST(SolveDense, RandomResidualProperty)
{
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 100; ++trial)
    {
        const std::size_t n = 1 + trial % 12;
        ComplexMatrix a(n);
        std::vector<cplx> x_true(n);
        for (std::size_t r = 0; r < n; ++r)
        {
            x_true[r] = {normal(rng), normal(rng)};
            for (std::size_t c = 0; c < n; ++c)
                a(r, c) = {normal(rng), normal(rng)};
        }
        const auto b = a.multiply(x_true);
        const auto x = solve_dense(a, b);
        for (std::size_t r = 0; r < n; ++r)
            EXPECT_NEAR(std::abs(x[r] - x_true[r]), 0.0, 1e-9) << "n=" << n;
    }
}

}  // namespace
}  // namespace dropchain
