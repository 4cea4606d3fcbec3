#pragma once

#include "ensembles.hpp"
#include "types.hpp"

namespace strmat {

// Exponent law gamma_n = p*n + k of a matrix family; the same pair (p, k)
// fixes the spacing surmises and the spectral form factor below.
struct ExponentLaw {
    int p;
    int k;
};

// gamma_n for the n-th nearest-neighbor spacing of the given family.
double gamma_exponent(EnsembleKind kind, std::size_t n);

// Law (p, k) for the families whose gamma_n is linear in n.  GOE/GUE grow
// quadratically and have no such law; ToeplitzReal maps to (1, 0) (Poisson).
ExponentLaw exponent_law(EnsembleKind kind);

// Gamma-distribution surmise P_n(s) = a_n s^gamma exp(-b_n s) with unit
// normalization and mean n+1.
double gamma_pdf(double gamma, std::size_t n, double s);
double gamma_log_pdf(double gamma, std::size_t n, double s);

// Wigner-Dyson-type surmise P_n(s) = a_n s^gamma exp(-b_n s^2) for the
// invariant ensembles, gamma = beta*(n+2)*(n+1)/2 + n.
double wigner_dyson_pdf(int beta, std::size_t n, double s);

// Spectral form factor K(tau) = 1 + 2 Re g(2*pi*i*tau) of the gamma-surmise
// ladder with law (p, k); evaluated from the convergent difference series
// plus its closed-form tail.
double theoretical_form_factor(ExponentLaw law, double tau);

// Level compressibility K(0) = 1/p.
double compressibility(ExponentLaw law);

// Short-range plasma models: model 1 has gamma_n = 3n+1, model 2 has
// gamma_n = 4n+2.  P_n available for n = 0, 1, 2.
double plasma_pn(int model, std::size_t n, double s);

// Form factor of the plasma model; tau = 0 returns the exact limits 1/3 and
// 1/4.
double plasma_form_factor(int model, double tau);

// Dimension of the solution space of the stationarity constraints
// ("family member = lambda * identity", or the anticommutator condition for
// the Hankel family), lambda included among the unknowns.
std::size_t count_zero_modes(EnsembleKind kind, std::size_t n);

// digamma / trigamma, needed by the gamma-surmise maximum likelihood fit
double digamma(double x);
double trigamma(double x);

}  // namespace strmat
