#include "core/displacement.hpp"

#include <cstddef>
#include <stdexcept>

namespace strmat {

namespace {

void require_square(const CMatrix& m, const char* who) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw std::invalid_argument(std::string(who) + ": square matrix required");
}

}  // namespace

CMatrix toeplitz_displacement(const CMatrix& m) {
    require_square(m, "toeplitz_displacement");
    const std::size_t n = m.rows();
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 1; j < n; ++j)
            if (m(i, j) != m(i - 1, j - 1))
                throw std::invalid_argument("toeplitz_displacement: input is not Toeplitz");

    // (Z M Z^T)_{ij} = M_{i-1,j-1} for i,j >= 1, zero on the first row/column.
    CMatrix d(n, n);
    for (std::size_t j = 0; j < n; ++j) d(0, j) = m(0, j);
    for (std::size_t i = 1; i < n; ++i) {
        d(i, 0) = m(i, 0);
        for (std::size_t j = 1; j < n; ++j) d(i, j) = m(i, j) - m(i - 1, j - 1);
    }
    return d;
}

CMatrix hankel_displacement(const CMatrix& m) {
    require_square(m, "hankel_displacement");
    const std::size_t n = m.rows();
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j + 1 < n; ++j)
            if (m(i, j) != m(i - 1, j + 1))
                throw std::invalid_argument("hankel_displacement: input is not Hankel");

    // (Z M)_{ij} = M_{i-1,j} for i >= 1; (M Z^T)_{ij} = M_{i,j-1} for j >= 1.
    CMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cplx v = 0.0;
            if (i > 0) v += m(i - 1, j);
            if (j > 0) v -= m(i, j - 1);
            d(i, j) = v;
        }
    }
    return d;
}

CMatrix th_displacement(const CMatrix& m) {
    require_square(m, "th_displacement");
    const std::size_t n = m.rows();

    // A = Z + Z^T, so (A M)_{ij} = M_{i-1,j} + M_{i+1,j} and
    // (M A)_{ij} = M_{i,j+1} + M_{i,j-1}, with out-of-range terms dropped.
    CMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cplx v = 0.0;
            if (i > 0) v += m(i - 1, j);
            if (i + 1 < n) v += m(i + 1, j);
            if (j + 1 < n) v -= m(i, j + 1);
            if (j > 0) v -= m(i, j - 1);
            d(i, j) = v;
        }
    }
    return d;
}

}  // namespace strmat
