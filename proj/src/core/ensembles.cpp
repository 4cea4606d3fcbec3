#include <stdexcept>

#include "ensembles.hpp"

namespace strmat {

namespace {

// Parameter draw order is part of the reproducibility contract: Toeplitz
// coefficients by increasing lag (real part before imaginary), Hankel
// antidiagonals by increasing index, GOE/GUE diagonal first then upper rows.

HermitianMatrix toeplitz_real(std::size_t n, Rng& rng) {
    std::vector<double> t(n);
    for (auto& x : t) x = rng.next_gaussian();
    HermitianMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) m.set(i, j, t[i - j]);
    return m;
}

HermitianMatrix toeplitz_complex(std::size_t n, Rng& rng) {
    std::vector<cplx> t(n);
    t[0] = rng.next_gaussian();
    for (std::size_t k = 1; k < n; ++k) {
        double re = rng.next_gaussian();
        double im = rng.next_gaussian();
        t[k] = cplx(re, im);
    }
    HermitianMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) m.set(i, j, t[i - j]);
    return m;
}

// h_{j+k} over 1-based indices, so antidiagonal sums run 2..2n
HermitianMatrix hankel(std::size_t n, Rng& rng) {
    std::vector<double> h(2 * n - 1);
    for (auto& x : h) x = rng.next_gaussian();
    HermitianMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) m.set(i, j, h[i + j]);
    return m;
}

// (T + eta*H)_{ij} = t_{|i-j|} + eta * t_{i+j-1} with a single shared
// coefficient sequence t_0..t_{2n-1}
HermitianMatrix th_special(std::size_t n, double eta, Rng& rng) {
    std::vector<double> t(2 * n);
    for (auto& x : t) x = rng.next_gaussian();
    HermitianMatrix m(n);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= i; ++j)
            m.set(i - 1, j - 1, t[i - j] + eta * t[i + j - 1]);
    return m;
}

HermitianMatrix th_independent(std::size_t n, bool complex_t, Rng& rng) {
    std::vector<cplx> t(n);
    if (complex_t) {
        t[0] = rng.next_gaussian();
        for (std::size_t k = 1; k < n; ++k) {
            double re = rng.next_gaussian();
            double im = rng.next_gaussian();
            t[k] = cplx(re, im);
        }
    } else {
        for (auto& x : t) x = rng.next_gaussian();
    }
    std::vector<double> h(2 * n - 1);
    for (auto& x : h) x = rng.next_gaussian();
    HermitianMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) m.set(i, j, t[i - j] + h[i + j]);
    return m;
}

HermitianMatrix gaussian_invariant(std::size_t n, bool complex_offdiag, Rng& rng) {
    HermitianMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, rng.next_gaussian());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (complex_offdiag) {
                double re = rng.next_gaussian();
                double im = rng.next_gaussian();
                m.set(j, i, cplx(re, im));
            } else {
                m.set(j, i, rng.next_gaussian());
            }
        }
    return m;
}

}  // namespace

HermitianMatrix generate(const EnsembleSpec& spec) {
    if (spec.dim < 2) throw std::invalid_argument("generate: dim must be >= 2");
    Rng rng(spec.seed, spec.realization);
    switch (spec.kind) {
        case EnsembleKind::ToeplitzReal: return toeplitz_real(spec.dim, rng);
        case EnsembleKind::ToeplitzComplex: return toeplitz_complex(spec.dim, rng);
        case EnsembleKind::Hankel: return hankel(spec.dim, rng);
        case EnsembleKind::THSpecialPlus: return th_special(spec.dim, 1.0, rng);
        case EnsembleKind::THSpecialMinus: return th_special(spec.dim, -1.0, rng);
        case EnsembleKind::THIndependentReal: return th_independent(spec.dim, false, rng);
        case EnsembleKind::THIndependentComplex: return th_independent(spec.dim, true, rng);
        case EnsembleKind::GOE: return gaussian_invariant(spec.dim, false, rng);
        case EnsembleKind::GUE: return gaussian_invariant(spec.dim, true, rng);
    }
    throw std::invalid_argument("generate: unknown ensemble kind");
}

std::size_t parameter_count(EnsembleKind kind, std::size_t n) {
    const std::size_t m = n + 2;  // family dimension for the n-th spacing
    switch (kind) {
        case EnsembleKind::ToeplitzReal: return m;
        case EnsembleKind::ToeplitzComplex: return 2 * m - 1;
        case EnsembleKind::Hankel: return 2 * (2 * n + 2) - 1;
        case EnsembleKind::THSpecialPlus:
        case EnsembleKind::THSpecialMinus: return 2 * m;
        case EnsembleKind::THIndependentReal: return m + (2 * m - 1);
        case EnsembleKind::THIndependentComplex: return (2 * m - 1) + (2 * m - 1);
        case EnsembleKind::GOE: return m + m * (m - 1) / 2;
        case EnsembleKind::GUE: return m + m * (m - 1);
    }
    throw std::invalid_argument("parameter_count: unknown ensemble kind");
}

const char* ensemble_name(EnsembleKind kind) {
    switch (kind) {
        case EnsembleKind::ToeplitzReal: return "toeplitz-real";
        case EnsembleKind::ToeplitzComplex: return "toeplitz-complex";
        case EnsembleKind::Hankel: return "hankel";
        case EnsembleKind::THSpecialPlus: return "th-special-plus";
        case EnsembleKind::THSpecialMinus: return "th-special-minus";
        case EnsembleKind::THIndependentReal: return "th-independent-real";
        case EnsembleKind::THIndependentComplex: return "th-independent-complex";
        case EnsembleKind::GOE: return "goe";
        case EnsembleKind::GUE: return "gue";
    }
    return "unknown";
}

EnsembleKind ensemble_from_name(const std::string& name) {
    for (EnsembleKind k :
         {EnsembleKind::ToeplitzReal, EnsembleKind::ToeplitzComplex, EnsembleKind::Hankel,
          EnsembleKind::THSpecialPlus, EnsembleKind::THSpecialMinus,
          EnsembleKind::THIndependentReal, EnsembleKind::THIndependentComplex, EnsembleKind::GOE,
          EnsembleKind::GUE}) {
        if (name == ensemble_name(k)) return k;
    }
    throw std::invalid_argument("unknown ensemble name: " + name);
}

bool is_complex_hermitian(EnsembleKind kind) {
    switch (kind) {
        case EnsembleKind::ToeplitzComplex:
        case EnsembleKind::THIndependentComplex:
        case EnsembleKind::GUE: return true;
        default: return false;
    }
}

}  // namespace strmat
