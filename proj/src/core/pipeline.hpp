#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "core/ensembles.hpp"
#include "core/multifractal.hpp"
#include "core/spectral.hpp"

namespace strmat {

// Column-named numeric table, the common currency between the analysis
// passes, the C API and the CSV writer.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t col(const std::string& column) const;  // throws if missing
    void push(std::initializer_list<double> row);
};

struct GenerateOptions {
    EnsembleKind kind = EnsembleKind::ToeplitzComplex;
    std::size_t dim = 0;
    std::size_t count = 0;
    std::uint64_t seed = 1;
    std::size_t workers = 0;  // 0: STRMAT_WORKERS env or hardware count
};

// Sorted spectra of `count` realizations; parallel over realizations, merged
// in realization order so the result is worker-count independent.
SpectraBatch generate_batch(const GenerateOptions& opt);

// Same, but also hands each realization's full eigenvector matrix to sink in
// realization order (chunked, so memory stays bounded).
SpectraBatch generate_batch_with_vectors(
    const GenerateOptions& opt,
    const std::function<void(std::size_t realization, const CMatrix& vectors)>& sink);

Table density_table(const SpectraBatch& b, std::size_t bins);

// Spacing histograms with the surmise overlays; bins with too few samples are
// still emitted (density 0 rows are meaningful for plotting).
Table nn_dist_table(const SpectraBatch& b, std::size_t n_max, double bin_width = 0.05);

Table fit_gamma_table(const SpectraBatch& b, std::size_t n_max);

Table form_factor_table(const SpectraBatch& b, double tau_min, double tau_max, double tau_step,
                        bool window_only = false);

Table number_variance_table(const SpectraBatch& b, double l_max);

struct FractalOptions {
    EnsembleKind kind = EnsembleKind::ToeplitzComplex;
    std::uint64_t seed = 1;
    std::vector<std::size_t> dims = {128, 256, 512, 1024};
    std::vector<std::size_t> counts = {2000, 800, 300, 100};
    std::vector<double> q_grid;   // empty: default_q_grid()
    std::size_t workers = 0;
    std::size_t capture_dim = 512;  // rung whose eigenvalues are kept
};

struct FractalResult {
    Table table;            // q, tau_q, D_q, Delta_q, stderr
    ScalingExponents se;
    std::vector<MomentTable> moments;
    SpectraBatch captured;  // eigenvalues of the capture_dim rung (free by-product)
};

// Dimension ladder: per rung, eigenvectors of the analysis window are
// Fourier-transformed and fed to the moment accumulator; scaling exponents
// come from the ln-ln regression across rungs.
FractalResult fractal_scaling(const FractalOptions& opt);

Table theory_law_table(int p, int k, double s_max = 5.0, double step = 0.01);
Table theory_plasma_table(int model, double s_max = 5.0, double step = 0.01);

// n, dim, parameters, zero modes, q_n = parameters - zero modes,
// gamma = q_n - 1, and the closed-form gamma_n for comparison.
Table zero_modes_table(EnsembleKind kind, std::size_t n_max);

struct DisplacementCheckResult {
    std::size_t max_rank = 0;
    std::size_t trials = 0;
};

// Applies the family's displacement map to random members and reports the
// largest numerical rank seen.
DisplacementCheckResult displacement_check(EnsembleKind kind, std::size_t dim, std::size_t trials,
                                           std::uint64_t seed);

}  // namespace strmat
