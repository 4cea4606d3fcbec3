#pragma once

#include <span>
#include <vector>

#include "types.hpp"

namespace strmat {

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // dim x k, k-th column pairs with values[col_offset + k]
    bool has_vectors = false;
    std::size_t col_offset = 0;  // sorted index of the first stored column
};

// Hermitian eigensolver: Householder tridiagonalization followed by
// implicit-shift QL on the real tridiagonal form.
EigenDecomposition eigh(const HermitianMatrix& m, bool with_vectors = false);

// Same spectrum, but eigenvectors only for sorted indices [lo, hi).  The QL
// rotation sequence is recorded once and replayed in reverse onto the selected
// unit columns, which is much cheaper than accumulating the full basis.
EigenDecomposition eigh_window(const HermitianMatrix& m, std::size_t lo, std::size_t hi);

// Unitary DFT, out[p] = n^{-1/2} sum_j exp(sign * 2*pi*i*j*p/n) v[j].
// Radix-2 in-place for powers of two, direct evaluation otherwise.
std::vector<cplx> dft(std::span<const cplx> v, int sign);

// Singular values by one-sided Jacobi, descending.  Good relative accuracy on
// the small structured systems we feed it (displacement forms, constraint
// matrices), where Gram-based shortcuts would blur exact zeros.
std::vector<double> singular_values(const CMatrix& a);

inline double default_rank_tol(std::size_t rows, std::size_t cols) {
    return 1e-10 * static_cast<double>(rows > cols ? rows : cols);
}

// Count of singular values above tol * sigma_max.
std::size_t numerical_rank(const CMatrix& a, double tol);
std::size_t null_space_dim(const CMatrix& a, double tol);

}  // namespace strmat
