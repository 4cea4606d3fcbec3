#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "linalg.hpp"
#include "theory.hpp"

namespace strmat {

namespace {

constexpr double pi = std::numbers::pi;

std::size_t beta_index(EnsembleKind kind) { return kind == EnsembleKind::GUE ? 2 : 1; }

}  // namespace

double gamma_exponent(EnsembleKind kind, std::size_t n) {
    const double nn = static_cast<double>(n);
    switch (kind) {
        case EnsembleKind::ToeplitzReal: return nn;
        case EnsembleKind::ToeplitzComplex:
        case EnsembleKind::THSpecialPlus:
        case EnsembleKind::THSpecialMinus: return 2 * nn + 1;
        case EnsembleKind::Hankel:
        case EnsembleKind::THIndependentReal: return 3 * nn + 1;
        case EnsembleKind::THIndependentComplex: return 4 * nn + 2;
        case EnsembleKind::GOE:
        case EnsembleKind::GUE: {
            double beta = static_cast<double>(beta_index(kind));
            return beta * (nn + 2) * (nn + 1) / 2 + nn;
        }
    }
    throw std::invalid_argument("gamma_exponent: unknown ensemble kind");
}

ExponentLaw exponent_law(EnsembleKind kind) {
    switch (kind) {
        case EnsembleKind::ToeplitzReal: return {1, 0};
        case EnsembleKind::ToeplitzComplex:
        case EnsembleKind::THSpecialPlus:
        case EnsembleKind::THSpecialMinus: return {2, 1};
        case EnsembleKind::Hankel:
        case EnsembleKind::THIndependentReal: return {3, 1};
        case EnsembleKind::THIndependentComplex: return {4, 2};
        default:
            throw std::invalid_argument(
                "exponent_law: family exponent is not linear in n for this kind");
    }
}

double gamma_log_pdf(double gamma, std::size_t n, double s) {
    if (s <= 0.0) throw std::invalid_argument("gamma_log_pdf: s must be positive");
    const double b = (gamma + 1.0) / (static_cast<double>(n) + 1.0);
    const double log_a = (gamma + 1.0) * std::log(b) - std::lgamma(gamma + 1.0);
    return log_a + gamma * std::log(s) - b * s;
}

double gamma_pdf(double gamma, std::size_t n, double s) {
    if (s < 0.0) throw std::invalid_argument("gamma_pdf: s must be nonnegative");
    if (s == 0.0) {
        if (gamma > 0.0) return 0.0;
        if (gamma == 0.0) return (gamma + 1.0) / (static_cast<double>(n) + 1.0);
        throw std::invalid_argument("gamma_pdf: divergent at s=0 for gamma<0");
    }
    return std::exp(gamma_log_pdf(gamma, n, s));
}

double wigner_dyson_pdf(int beta, std::size_t n, double s) {
    if (beta < 1) throw std::invalid_argument("wigner_dyson_pdf: beta must be >= 1");
    if (s < 0.0) throw std::invalid_argument("wigner_dyson_pdf: s must be nonnegative");
    const double nn = static_cast<double>(n);
    const double gamma = beta * (nn + 2) * (nn + 1) / 2 + nn;
    // from int P = 1 and int s P = n+1
    const double lg1 = std::lgamma((gamma + 1.0) / 2.0);
    const double lg2 = std::lgamma((gamma + 2.0) / 2.0);
    const double b = std::exp(2.0 * (lg2 - lg1)) / ((nn + 1) * (nn + 1));
    const double log_a = std::numbers::ln2 + 0.5 * (gamma + 1.0) * std::log(b) - lg1;
    if (s == 0.0) return gamma > 0 ? 0.0 : std::exp(log_a);
    return std::exp(log_a + gamma * std::log(s) - b * s * s);
}

double theoretical_form_factor(ExponentLaw law, double tau) {
    const int p = law.p, k = law.k;
    if (p < 1 || k < 0) throw std::invalid_argument("theoretical_form_factor: bad law");
    if (tau < 0.0) throw std::invalid_argument("theoretical_form_factor: tau must be nonnegative");
    if (tau == 0.0) return 1.0 / p;  // K(0) = chi = 1/p

    const cplx t(0.0, 2.0 * pi * tau);
    const double pd = p, kd = k;

    const cplx w = 1.0 + t / pd;
    assert(w.real() > 0.0);  // principal power stays on one branch
    const cplx efac = std::exp(-t * (pd - kd - 1.0) / (pd + t));
    const cplx tail = std::pow(w, pd - kd - 1.0) / (std::pow(w, pd) - 1.0) * efac;

    // difference series: each term pairs the exact surmise transform with its
    // large-n asymptotic, so the sum converges geometrically
    cplx f(0.0);
    const cplx wp_inv = std::pow(w, -pd);
    cplx wn = std::pow(w, -(kd + 1.0));  // w^{-(p*n+k+1)} tracked iteratively
    int below = 0;
    const int cap = 100000;
    for (int n = 0; n < cap; ++n) {
        const double q = pd * n + kd + 1.0;
        const cplx base = 1.0 + (n + 1.0) * t / q;
        assert(base.real() > 0.0);
        const cplx term = std::pow(base, -q) - wn * efac;
        f += term;
        wn *= wp_inv;
        if (std::abs(term) < 1e-12) {
            if (++below >= 2) break;
        } else {
            below = 0;
        }
    }

    const cplx g = f + tail;
    return 1.0 + 2.0 * g.real();
}

double compressibility(ExponentLaw law) {
    if (law.p < 1) throw std::invalid_argument("compressibility: requires p >= 1");
    return 1.0 / static_cast<double>(law.p);
}

double plasma_pn(int model, std::size_t n, double s) {
    if (s < 0.0) throw std::invalid_argument("plasma_pn: s must be nonnegative");
    if (n > 2) throw std::invalid_argument("plasma_pn: only n = 0, 1, 2 available");
    const double r6 = std::sqrt(6.0);
    const double r3 = std::sqrt(3.0);
    if (model == 1) {
        switch (n) {
            case 0: {
                double poly = 1.0 + 0.5 * r6 * s;
                return 4.5 * (3.0 - r6) * s * std::exp(-3.0 * s) * poly * poly;
            }
            case 1: {
                double c = 81.0 / 8.0 * (5.0 * r6 - 12.0);
                double poly = 1.0 + 0.5 * r6 * s + 0.3 * s * s;
                return c * std::pow(s, 4) * std::exp(-3.0 * s) * poly;
            }
            case 2: {
                double c = 6561.0 / (7.0 * 5.0 * 32.0) * (27.0 - 11.0 * r6);
                double poly = 1.0 + (11.0 / 36.0) * r6 * s + s * s / 8.0;
                return c * std::pow(s, 7) * std::exp(-3.0 * s) * poly;
            }
        }
    } else if (model == 2) {
        switch (n) {
            case 0: {
                double poly = 1.0 + (2.0 * r3 / 3.0) * s;
                return 32.0 * (2.0 - r3) * s * s * std::exp(-4.0 * s) * poly * poly;
            }
            case 1: {
                double c = 2048.0 / 45.0 * (7.0 * r3 - 12.0);
                double poly = 1.0 + (2.0 * r3 / 3.0) * s + (2.0 / 7.0) * s * s;
                return c * std::pow(s, 6) * std::exp(-4.0 * s) * poly;
            }
            case 2: {
                double c = 16384.0 * 13.0 / (7.0 * 25.0 * 81.0) * (26.0 - 15.0 * r3);
                double poly = 1.0 + (60.0 * r3 / 143.0) * s + (4.0 / 33.0) * s * s;
                return c * std::pow(s, 10) * std::exp(-4.0 * s) * poly;
            }
        }
    }
    throw std::invalid_argument("plasma_pn: model must be 1 or 2");
}

double plasma_form_factor(int model, double tau) {
    if (tau < 0.0) throw std::invalid_argument("plasma_form_factor: tau must be nonnegative");
    if (model != 1 && model != 2)
        throw std::invalid_argument("plasma_form_factor: model must be 1 or 2");
    if (tau == 0.0) return model == 1 ? 1.0 / 3.0 : 0.25;

    const cplx t(0.0, 2.0 * pi * tau);
    cplx g2;
    if (model == 1) {
        const double u = 5.0 - 2.0 * std::sqrt(6.0);
        const cplx a = 3.0 + t;
        const cplx a3 = a * a * a;
        g2 = 9.0 / (4.0 * a) *
             ((6.0 + t) * (6.0 + t) / (a3 - 27.0) + t * t * u / (a3 + 27.0 * u));
    } else {
        const double u = 7.0 - 4.0 * std::sqrt(3.0);
        const cplx a = 4.0 + t;
        const cplx a4 = a * a * a * a;
        g2 = 16.0 / a *
             ((8.0 + t) * (8.0 + t) / (a4 - 256.0) + t * t * u / (a4 + 256.0 * u));
    }
    return 1.0 + 2.0 * g2.real();
}

namespace {

// Basis matrices dM/dparam of a structured family at dimension m; together
// with the lambda column they define the linear system "member = lambda*I"
// whose null space counts the zero modes.
std::vector<CMatrix> family_basis(EnsembleKind kind, std::size_t m) {
    std::vector<CMatrix> out;
    auto zero = [&] { return CMatrix(m, m); };
    auto toeplitz_real = [&] {
        for (std::size_t d = 0; d < m; ++d) {
            CMatrix b = zero();
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    if ((i > j ? i - j : j - i) == d) b(i, j) = 1.0;
            out.push_back(std::move(b));
        }
    };
    auto toeplitz_complex = [&] {
        CMatrix b0 = zero();
        for (std::size_t i = 0; i < m; ++i) b0(i, i) = 1.0;
        out.push_back(std::move(b0));
        for (std::size_t d = 1; d < m; ++d) {
            CMatrix br = zero(), bi = zero();
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    if (i >= j && i - j == d) {
                        br(i, j) = 1.0;
                        bi(i, j) = cplx(0, 1);
                    } else if (j > i && j - i == d) {
                        br(i, j) = 1.0;
                        bi(i, j) = cplx(0, -1);
                    }
                }
            out.push_back(std::move(br));
            out.push_back(std::move(bi));
        }
    };
    auto hankel_basis = [&] {
        for (std::size_t s = 2; s <= 2 * m; ++s) {
            CMatrix b = zero();
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    if (i + j + 2 == s) b(i, j) = 1.0;
            out.push_back(std::move(b));
        }
    };

    switch (kind) {
        case EnsembleKind::ToeplitzReal: toeplitz_real(); break;
        case EnsembleKind::ToeplitzComplex: toeplitz_complex(); break;
        case EnsembleKind::THSpecialPlus:
        case EnsembleKind::THSpecialMinus: {
            const double eta = kind == EnsembleKind::THSpecialPlus ? 1.0 : -1.0;
            for (std::size_t d = 0; d < 2 * m; ++d) {
                CMatrix b = zero();
                for (std::size_t i = 1; i <= m; ++i)
                    for (std::size_t j = 1; j <= m; ++j) {
                        double v = 0;
                        if ((i > j ? i - j : j - i) == d) v += 1.0;
                        if (i + j - 1 == d) v += eta;
                        b(i - 1, j - 1) = v;
                    }
                out.push_back(std::move(b));
            }
            break;
        }
        case EnsembleKind::THIndependentReal:
            toeplitz_real();
            hankel_basis();
            break;
        case EnsembleKind::THIndependentComplex:
            toeplitz_complex();
            hankel_basis();
            break;
        case EnsembleKind::GOE:
        case EnsembleKind::GUE: {
            const bool complex_offdiag = kind == EnsembleKind::GUE;
            for (std::size_t i = 0; i < m; ++i) {
                CMatrix b = zero();
                b(i, i) = 1.0;
                out.push_back(std::move(b));
            }
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = i + 1; j < m; ++j) {
                    CMatrix br = zero();
                    br(i, j) = 1.0;
                    br(j, i) = 1.0;
                    out.push_back(std::move(br));
                    if (complex_offdiag) {
                        CMatrix bi = zero();
                        bi(i, j) = cplx(0, 1);
                        bi(j, i) = cplx(0, -1);
                        out.push_back(std::move(bi));
                    }
                }
            break;
        }
        case EnsembleKind::Hankel:
            throw std::logic_error("family_basis: Hankel uses the anticommutator system");
    }
    return out;
}

// Hankel almost-zero modes: members of the form lambda*d(N) + eps*h stay
// closed under the flow when d(N) h + h d(N) = 0, with d(N) the mod-N
// antidiagonal permutation.  lambda rides along as an unconstrained unknown.
std::size_t hankel_zero_modes(std::size_t big_n) {
    const std::size_t np = 2 * big_n - 1;  // h_2 .. h_{2N}
    auto sigma = [&](std::size_t a) {       // 1-based index with (a + sigma(a)) % N == 0
        return a == big_n ? big_n : big_n - a;
    };
    const std::size_t rows = big_n * (big_n + 1) / 2;
    CMatrix sys(rows, np + 1);  // trailing column is lambda (absent from the condition)
    std::size_t r = 0;
    for (std::size_t i = 1; i <= big_n; ++i)
        for (std::size_t j = i; j <= big_n; ++j, ++r) {
            for (std::size_t s = 2; s <= 2 * big_n; ++s) {
                double v = 0;
                if (sigma(i) + j == s) v += 1.0;
                if (i + sigma(j) == s) v += 1.0;
                sys(r, s - 2) = v;
            }
        }
    return null_space_dim(sys, default_rank_tol(rows, np + 1));
}

}  // namespace

std::size_t count_zero_modes(EnsembleKind kind, std::size_t n) {
    if (kind == EnsembleKind::Hankel) return hankel_zero_modes(2 * n + 2);

    const std::size_t m = n + 2;
    std::vector<CMatrix> basis = family_basis(kind, m);
    const std::size_t np = basis.size();
    const std::size_t rows = m * (m + 1);  // re+im per upper-triangle entry
    CMatrix sys(rows, np + 1);
    std::size_t r = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            for (std::size_t p = 0; p < np; ++p) {
                sys(r, p) = basis[p](i, j).real();
                sys(r + 1, p) = basis[p](i, j).imag();
            }
            if (i == j) sys(r, np) = -1.0;  // lambda column
            r += 2;
        }
    return null_space_dim(sys, default_rank_tol(rows, np + 1));
}

double digamma(double x) {
    if (x <= 0.0) throw std::invalid_argument("digamma: x must be positive");
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double x2 = 1.0 / (x * x);
    return acc + std::log(x) - 0.5 / x -
           x2 * (1.0 / 12 -
                 x2 * (1.0 / 120 - x2 * (1.0 / 252 - x2 * (1.0 / 240 - x2 * (1.0 / 132)))));
}

double trigamma(double x) {
    if (x <= 0.0) throw std::invalid_argument("trigamma: x must be positive");
    double acc = 0.0;
    while (x < 10.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    const double x2 = 1.0 / (x * x);
    return acc + 1.0 / x + 0.5 * x2 +
           x2 / x * (1.0 / 6 - x2 * (1.0 / 30 - x2 * (1.0 / 42 - x2 * (1.0 / 30 - x2 * 5.0 / 66))));
}

}  // namespace strmat
