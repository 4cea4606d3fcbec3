#pragma once

#include <cstdint>
#include <string>

#include "rng.hpp"
#include "types.hpp"

namespace strmat {

enum class EnsembleKind {
    ToeplitzReal,
    ToeplitzComplex,
    Hankel,
    THSpecialPlus,
    THSpecialMinus,
    THIndependentReal,
    THIndependentComplex,
    GOE,
    GUE,
};

struct EnsembleSpec {
    EnsembleKind kind;
    std::size_t dim;
    std::uint64_t seed;
    std::uint64_t realization;
};

// Draws the free parameters i.i.d. N(0,1) (complex off-diagonal Toeplitz
// coefficients get independent N(0,1) real and imaginary parts, and the
// constant-diagonal coefficient is real with variance 1) and assembles the
// structured Hermitian matrix.
HermitianMatrix generate(const EnsembleSpec& spec);

// Number of independent real parameters of the family whose members have the
// n-th spacing statistics, i.e. matrix dimension n+2 for all families except
// the Hankel one, which needs dimension 2n+2 for its almost-null modes.
std::size_t parameter_count(EnsembleKind kind, std::size_t n);

const char* ensemble_name(EnsembleKind kind);
EnsembleKind ensemble_from_name(const std::string& name);
bool is_complex_hermitian(EnsembleKind kind);  // false when members are real symmetric

}  // namespace strmat
