#pragma once

#include "core/types.hpp"

namespace strmat {

// Displacement maps built by index shifting; the shift matrix Z (ones on the
// first subdiagonal) is never materialized.
//
//   toeplitz:  D = M - Z M Z^T        rank <= 2 when M is Toeplitz
//   hankel:    D = Z M - M Z^T        rank <= 2 when M is Hankel, D(0,0) = 0
//   t+h:       D = A M - M A,  A = Z + Z^T
//              rank <= 4 when M = Toeplitz + Hankel, D(0,0) = t_1 - t_{-1}
//
// The toeplitz/hankel variants require the input to actually have that
// structure (checked exactly, throws std::invalid_argument). The t+h variant
// accepts any square matrix.
CMatrix toeplitz_displacement(const CMatrix& m);
CMatrix hankel_displacement(const CMatrix& m);
CMatrix th_displacement(const CMatrix& m);

}  // namespace strmat
