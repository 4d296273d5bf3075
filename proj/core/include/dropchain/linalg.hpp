#ifndef DROPCHAIN_LINALG_HPP
#define DROPCHAIN_LINALG_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "dropchain/model.hpp"

namespace dropchain
{

class SingularMatrixError : public Error
{
public:
    using Error::Error;
};

// Dense row-major complex square matrix.
class ComplexMatrix
{
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

    std::size_t size() const { return n_; }

    cplx &operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
    const cplx &operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }

    std::vector<cplx> multiply(std::span<const cplx> x) const;

private:
    std::size_t n_ = 0;
    std::vector<cplx> data_;
};

// Gaussian elimination with partial pivoting. A pivot at or below
// n * eps * max|a_ij| is treated as singular.
std::vector<cplx> solve_dense(ComplexMatrix a, std::vector<cplx> b);

}  // namespace dropchain

#endif  // DROPCHAIN_LINALG_HPP
