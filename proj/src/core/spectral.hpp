#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ensembles.hpp"

namespace strmat {

// Sorted eigenvalue rows of M realizations plus the batch scale
// sigma^2 = <Tr M^2>/N used to map raw eigenvalues to eps = E/sigma.
struct SpectraBatch {
    EnsembleKind kind = EnsembleKind::ToeplitzReal;
    std::size_t dim = 0;
    std::size_t count = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<double>> rows;
    double sigma = 0.0;

    static double compute_sigma(const std::vector<std::vector<double>>& rows, std::size_t dim);
};

struct DensityHistogram {
    std::vector<double> centers;  // in eps = E/sigma units
    std::vector<double> density;  // integrates to 1
    double bin_width = 0.0;
};

// Histogram of eps over all rows; at least 500 rows recommended so the
// second moment pins near 1.
DensityHistogram mean_density(const SpectraBatch& batch, std::size_t bins);

// Gaussian smoothing (bandwidth in bins) used for mode finding on densities.
std::vector<double> smooth_density(const std::vector<double>& density, double bandwidth_bins);

// Unfolded spectra: e_j = Nbar(E_j) where Nbar is the pooled empirical
// cumulative count divided by the number of rows.
struct UnfoldedSpectrum {
    std::vector<std::vector<double>> rows;  // ascending, e in [0, N]
    std::size_t window_lo = 0;              // index window [lo, hi)
    std::size_t window_hi = 0;
    // retained for Hankel window placement
    std::vector<double> pooled;  // sorted pooled eigenvalues (raw units)
    double sigma = 0.0;
    std::size_t count = 0;
};

UnfoldedSpectrum unfold(const SpectraBatch& batch);

// Central-quarter index window [3N/8, 5N/8); the Hankel family instead gets
// N/4 indices centered on the unfolded position of its positive density peak.
void select_window(UnfoldedSpectrum& u, EnsembleKind kind);

struct SpacingHistogram {
    std::size_t n = 0;
    std::vector<double> centers;
    std::vector<double> density;   // normalized to unit mass over the range
    double bin_width = 0.0;
    std::size_t samples = 0;
    double mean = 0.0;
    std::vector<double> raw;       // the gap samples themselves
};

// n-th nearest-neighbor spacings s = e_{j+n+1} - e_j for all in-window j.
std::vector<SpacingHistogram> spacing_distributions(const UnfoldedSpectrum& u, std::size_t n_max,
                                                    double bin_width = 0.05);

struct NumberVarianceCurve {
    std::vector<double> L;
    std::vector<double> sigma2;
    std::vector<double> mean_count;
};

// Variance of the level count in [x, x+L) over rows and random in-window
// placements (50 per row per L, deterministic placement streams).
NumberVarianceCurve number_variance(const UnfoldedSpectrum& u, const std::vector<double>& L_grid);

struct FormFactorCurve {
    std::vector<double> tau;
    std::vector<double> K;
    std::size_t realizations = 0;
    std::size_t levels_per_row = 0;
};

// K(tau) = <|sum_j exp(2*pi*i*e_j*tau)|^2>/N averaged over rows.  By default
// every unfolded level of each row enters the sum; window_only restricts to
// the selected window (then N is the window size).  connected isolates the
// level correlations from the coherent artifacts of finite sharp-edged
// spectra: it takes the residual row variance of the spectral sum after
// regressing out the row mean (the sin^2(pi N tau)/(N pi^2 tau^2) edge
// kernel, which masks the small-tau limit at moderate N) and the realized
// center and width of each row (whose realization-to-realization fluctuations
// leave flat kernels across the plateau).  Needs at least 4 rows.
FormFactorCurve empirical_form_factor(const UnfoldedSpectrum& u, const std::vector<double>& tau_grid,
                                      bool window_only = false, bool connected = false);

struct CompressibilityEstimate {
    double chi = 0.0;
    double stderr_mean = 0.0;  // standard error of the plateau mean
    double spread = 0.0;       // half interquartile range over the plateau
    bool ok = false;
    std::string note;
    double tau_lo = 0.0, tau_hi = 0.0;
};

// Average of K over the near-origin band [6/N, 0.06]: chi is the tau -> 0
// limit, the floor keeps out the region the connected estimator distorts, and
// past the cap the targeted K(tau) curves have visibly left their limit.
// A leftmost run deviating from the local median by 3 MADs is cropped first.
CompressibilityEstimate estimate_compressibility(const FormFactorCurve& k);

}  // namespace strmat
