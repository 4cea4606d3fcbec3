#pragma once

#include <span>
#include <vector>

namespace strmat {

struct GammaFit {
    double gamma = 0.0;
    double stderr_gamma = 0.0;  // from observed Fisher information
    double log_likelihood = 0.0;
    bool at_bound = false;      // optimizer stopped on the search bracket edge
    std::size_t samples = 0;
};

// Maximum-likelihood fit of the one-parameter spacing surmise
// P(s) = a(g) s^g exp(-b(g) s), b = (g+1)/(n+1), to the observed n-th
// spacings.  gamma_init centers the search bracket (g_init-3, g_init+3)
// clipped below at -0.9; pass NaN to start from a moment estimate.
GammaFit fit_gamma(std::span<const double> spacings, std::size_t n, double gamma_init);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double stderr_intercept = 0.0;
};

// Ordinary least squares y = slope*x + intercept.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

}  // namespace strmat
