#include "dropchain/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace dropchain
{

std::vector<cplx> ComplexMatrix::multiply(std::span<const cplx> x) const
{
    if (x.size() != n_)
        throw PreconditionError("matrix-vector size mismatch");
    std::vector<cplx> y(n_);
    for (std::size_t r = 0; r < n_; ++r)
    {
        cplx acc{};
        for (std::size_t c = 0; c < n_; ++c)
            acc += (*this)(r, c) * x[c];
        y[r] = acc;
    }
    return y;
}

std::vector<cplx> solve_dense(ComplexMatrix a, std::vector<cplx> b)
{
    const std::size_t n = a.size();
    if (b.size() != n)
        throw PreconditionError("solve_dense: rhs size does not match matrix");

    double scale = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            scale = std::max(scale, std::abs(a(r, c)));
    const double tiny = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * scale;

    for (std::size_t k = 0; k < n; ++k)
    {
        std::size_t pivot = k;
        double best = std::abs(a(k, k));
        for (std::size_t r = k + 1; r < n; ++r)
        {
            const double mag = std::abs(a(r, k));
            if (mag > best)
            {
                best = mag;
                pivot = r;
            }
        }
        if (best <= tiny)
            throw SingularMatrixError("singular system at column " + std::to_string(k + 1));

        if (pivot != k)
        {
            for (std::size_t c = k; c < n; ++c)
                std::swap(a(k, c), a(pivot, c));
            std::swap(b[k], b[pivot]);
        }

        for (std::size_t r = k + 1; r < n; ++r)
        {
            const cplx factor = a(r, k) / a(k, k);
            if (factor == cplx{})
                continue;
            a(r, k) = cplx{};
            for (std::size_t c = k + 1; c < n; ++c)
                a(r, c) -= factor * a(k, c);
            b[r] -= factor * b[k];
        }
    }

    std::vector<cplx> x(n);
    for (std::size_t k = n; k-- > 0;)
    {
        cplx acc = b[k];
        for (std::size_t c = k + 1; c < n; ++c)
            acc -= a(k, c) * x[c];
        x[k] = acc / a(k, k);
    }
    return x;
}

}  // namespace dropchain
