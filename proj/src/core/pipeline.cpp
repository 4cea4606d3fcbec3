#include "core/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "core/displacement.hpp"
#include "core/fitting.hpp"
#include "core/linalg.hpp"
#include "core/parallel.hpp"
#include "core/theory.hpp"

namespace strmat {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

UnfoldedSpectrum analyzed(const SpectraBatch& b) {
    UnfoldedSpectrum u = unfold(b);
    select_window(u, b.kind);
    return u;
}

double surmise_pdf(EnsembleKind kind, std::size_t n, double gamma, double s) {
    if (kind == EnsembleKind::GOE) return wigner_dyson_pdf(1, n, s);
    if (kind == EnsembleKind::GUE) return wigner_dyson_pdf(2, n, s);
    return gamma_pdf(gamma, n, s);
}

}  // namespace

std::size_t Table::col(const std::string& column) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == column) return i;
    throw std::invalid_argument("table '" + name + "' has no column '" + column + "'");
}

void Table::push(std::initializer_list<double> row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("table '" + name + "': row width mismatch");
    rows.emplace_back(row);
}

SpectraBatch generate_batch(const GenerateOptions& opt) {
    if (opt.count == 0) throw std::invalid_argument("generate_batch: count must be positive");
    SpectraBatch b;
    b.kind = opt.kind;
    b.dim = opt.dim;
    b.count = opt.count;
    b.seed = opt.seed;
    b.rows.resize(opt.count);

    parallel_for_index(opt.count, static_cast<int>(opt.workers), [&](std::size_t i) {
        HermitianMatrix m = generate({opt.kind, opt.dim, opt.seed, i});
        b.rows[i] = eigh(m).values;
    });
    b.sigma = SpectraBatch::compute_sigma(b.rows, b.dim);
    return b;
}

SpectraBatch generate_batch_with_vectors(
    const GenerateOptions& opt,
    const std::function<void(std::size_t, const CMatrix&)>& sink) {
    if (opt.count == 0) throw std::invalid_argument("generate_batch: count must be positive");
    SpectraBatch b;
    b.kind = opt.kind;
    b.dim = opt.dim;
    b.count = opt.count;
    b.seed = opt.seed;
    b.rows.resize(opt.count);

    const int workers = resolve_workers(static_cast<int>(opt.workers));
    const std::size_t chunk = std::max<std::size_t>(4, 2 * static_cast<std::size_t>(workers));
    std::vector<EigenDecomposition> slots(chunk);
    for (std::size_t c0 = 0; c0 < opt.count; c0 += chunk) {
        const std::size_t c1 = std::min(opt.count, c0 + chunk);
        parallel_for_index(c1 - c0, workers, [&](std::size_t off) {
            HermitianMatrix m = generate({opt.kind, opt.dim, opt.seed, c0 + off});
            slots[off] = eigh(m, true);
        });
        for (std::size_t i = c0; i < c1; ++i) {
            sink(i, slots[i - c0].vectors);
            b.rows[i] = std::move(slots[i - c0].values);
        }
    }
    b.sigma = SpectraBatch::compute_sigma(b.rows, b.dim);
    return b;
}

Table density_table(const SpectraBatch& b, std::size_t bins) {
    DensityHistogram h = mean_density(b, bins);
    Table t;
    t.name = "density";
    t.columns = {"eps_center", "density"};
    for (std::size_t i = 0; i < h.centers.size(); ++i) t.push({h.centers[i], h.density[i]});
    return t;
}

Table nn_dist_table(const SpectraBatch& b, std::size_t n_max, double bin_width) {
    UnfoldedSpectrum u = analyzed(b);
    auto hists = spacing_distributions(u, n_max, bin_width);

    Table t;
    t.name = "nn-dist";
    t.columns = {"n", "s_center", "density", "theory_gamma", "theory_fitted"};
    for (const auto& h : hists) {
        const double g_law = gamma_exponent(b.kind, h.n);
        GammaFit fit = fit_gamma(h.raw, h.n, g_law);
        for (std::size_t i = 0; i < h.centers.size(); ++i) {
            const double s = h.centers[i];
            t.push({static_cast<double>(h.n), s, h.density[i],
                    surmise_pdf(b.kind, h.n, g_law, s), gamma_pdf(fit.gamma, h.n, s)});
        }
    }
    return t;
}

Table fit_gamma_table(const SpectraBatch& b, std::size_t n_max) {
    UnfoldedSpectrum u = analyzed(b);
    auto hists = spacing_distributions(u, n_max, 0.05);

    Table t;
    t.name = "fit-gamma";
    t.columns = {"n", "gamma_hat", "stderr", "gamma_table"};
    for (const auto& h : hists) {
        const double g_law = gamma_exponent(b.kind, h.n);
        GammaFit fit = fit_gamma(h.raw, h.n, g_law);
        t.push({static_cast<double>(h.n), fit.gamma, fit.stderr_gamma, g_law});
    }
    return t;
}

Table form_factor_table(const SpectraBatch& b, double tau_min, double tau_max, double tau_step,
                        bool window_only) {
    if (!(tau_step > 0.0) || tau_max < tau_min || tau_min < 0.0)
        throw std::invalid_argument("form_factor_table: bad tau grid");
    std::vector<double> grid;
    for (double tau = tau_min; tau <= tau_max + 1e-12 * tau_step; tau += tau_step)
        grid.push_back(tau);

    UnfoldedSpectrum u = analyzed(b);
    FormFactorCurve k = empirical_form_factor(u, grid, window_only);

    const bool invariant = b.kind == EnsembleKind::GOE || b.kind == EnsembleKind::GUE;
    ExponentLaw law{0, 0};
    int plasma = 0;
    if (!invariant) {
        law = exponent_law(b.kind);
        if (law.p == 3 && law.k == 1) plasma = 1;
        if (law.p == 4 && law.k == 2) plasma = 2;
    }

    Table t;
    t.name = "form-factor";
    t.columns = {"tau", "K_empirical", "K_theory"};
    if (plasma) t.columns.push_back("K_plasma");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double theory = invariant ? kNaN : theoretical_form_factor(law, grid[i]);
        if (plasma)
            t.push({grid[i], k.K[i], theory, plasma_form_factor(plasma, grid[i])});
        else
            t.push({grid[i], k.K[i], theory});
    }
    return t;
}

Table number_variance_table(const SpectraBatch& b, double l_max) {
    if (!(l_max > 0.0)) throw std::invalid_argument("number_variance_table: l_max must be positive");
    UnfoldedSpectrum u = analyzed(b);

    constexpr std::size_t points = 40;
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = l_max * static_cast<double>(i + 1) / static_cast<double>(points);

    NumberVarianceCurve nv = number_variance(u, grid);

    Table t;
    t.name = "number-variance";
    t.columns = {"L", "sigma2", "chi_slope_running"};
    for (std::size_t i = 0; i < nv.L.size(); ++i) {
        // slope over the trailing octave [L_i/2, L_i]
        std::vector<double> x, y;
        for (std::size_t j = 0; j <= i; ++j) {
            if (nv.L[j] >= 0.5 * nv.L[i] - 1e-12) {
                x.push_back(nv.L[j]);
                y.push_back(nv.sigma2[j]);
            }
        }
        double slope = kNaN;
        if (x.size() >= 3) slope = linear_fit(x, y).slope;
        t.push({nv.L[i], nv.sigma2[i], slope});
    }
    return t;
}

namespace {

// index window for the eigenvector rung; Hankel needs a short values-only
// pilot to center the window on its right spectral peak
std::pair<std::size_t, std::size_t> rung_window(const FractalOptions& opt, std::size_t dim,
                                                std::size_t count) {
    if (opt.kind != EnsembleKind::Hankel) return {3 * dim / 8, 5 * dim / 8};

    GenerateOptions pilot;
    pilot.kind = opt.kind;
    pilot.dim = dim;
    pilot.count = std::min<std::size_t>(100, count);
    pilot.seed = opt.seed;
    pilot.workers = opt.workers;
    SpectraBatch pb = generate_batch(pilot);
    UnfoldedSpectrum u = analyzed(pb);
    return {u.window_lo, u.window_hi};
}

}  // namespace

FractalResult fractal_scaling(const FractalOptions& opt) {
    if (opt.dims.size() != opt.counts.size() || opt.dims.size() < 3)
        throw std::invalid_argument("fractal_scaling: need >= 3 (dim, count) rungs");
    const std::vector<double> q = opt.q_grid.empty() ? default_q_grid() : opt.q_grid;

    FractalResult res;
    const int workers = resolve_workers(static_cast<int>(opt.workers));

    for (std::size_t r = 0; r < opt.dims.size(); ++r) {
        const std::size_t dim = opt.dims[r];
        const std::size_t count = opt.counts[r];
        const auto [lo, hi] = rung_window(opt, dim, count);
        const bool capture = dim == opt.capture_dim;

        std::vector<MomentAccumulator> parts(count, MomentAccumulator(q));
        std::vector<std::vector<double>> captured_rows(capture ? count : 0);

        parallel_for_index(count, workers, [&](std::size_t i) {
            HermitianMatrix m = generate({opt.kind, dim, opt.seed, i});
            EigenDecomposition eig = eigh_window(m, lo, hi);
            CMatrix psi_hat = fourier_eigenvectors(eig.vectors);
            std::vector<cplx> column(dim);
            for (std::size_t c = 0; c < psi_hat.cols(); ++c) {
                for (std::size_t p = 0; p < dim; ++p) column[p] = psi_hat(p, c);
                parts[i].add_vector(column);
            }
            if (capture) captured_rows[i] = std::move(eig.values);
        });

        MomentAccumulator acc(q);
        for (const auto& part : parts) acc.merge(part);
        res.moments.push_back(finalize_moments(acc, dim));

        if (capture) {
            res.captured.kind = opt.kind;
            res.captured.dim = dim;
            res.captured.count = count;
            res.captured.seed = opt.seed;
            res.captured.rows = std::move(captured_rows);
            res.captured.sigma = SpectraBatch::compute_sigma(res.captured.rows, dim);
        }
    }

    res.se = scaling_exponents(res.moments);

    Table t;
    t.name = "fractal";
    t.columns = {"q", "tau_q", "D_q", "Delta_q", "stderr"};
    for (std::size_t k = 0; k < res.se.q.size(); ++k)
        t.push({res.se.q[k], res.se.tau[k], res.se.dq[k], res.se.delta[k], res.se.dq_se[k]});
    res.table = t;
    return res;
}

Table theory_law_table(int p, int k, double s_max, double step) {
    if (!(step > 0.0) || !(s_max > 0.0)) throw std::invalid_argument("theory table: bad grid");
    ExponentLaw law{p, k};
    Table t;
    t.name = "theory-law";
    t.columns = {"s", "P_0", "P_1", "P_2", "tau", "K"};
    for (double s = 0.0; s <= s_max + 1e-12 * step; s += step) {
        t.push({s, gamma_pdf(p * 0.0 + k, 0, s), gamma_pdf(p * 1.0 + k, 1, s),
                gamma_pdf(p * 2.0 + k, 2, s), s, theoretical_form_factor(law, s)});
    }
    return t;
}

Table theory_plasma_table(int model, double s_max, double step) {
    if (!(step > 0.0) || !(s_max > 0.0)) throw std::invalid_argument("theory table: bad grid");
    Table t;
    t.name = "theory-plasma";
    t.columns = {"s", "P_0", "P_1", "P_2", "tau", "K"};
    for (double s = 0.0; s <= s_max + 1e-12 * step; s += step) {
        t.push({s, plasma_pn(model, 0, s), plasma_pn(model, 1, s), plasma_pn(model, 2, s), s,
                plasma_form_factor(model, s)});
    }
    return t;
}

Table zero_modes_table(EnsembleKind kind, std::size_t n_max) {
    Table t;
    t.name = "zero-modes";
    t.columns = {"n", "dim", "parameters", "zero_modes", "q_n", "gamma", "gamma_closed_form"};
    for (std::size_t n = 0; n <= n_max; ++n) {
        const std::size_t dim = kind == EnsembleKind::Hankel ? 2 * n + 2 : n + 2;
        const auto params = static_cast<double>(parameter_count(kind, n));
        const auto zm = static_cast<double>(count_zero_modes(kind, n));
        t.push({static_cast<double>(n), static_cast<double>(dim), params, zm, params - zm,
                params - zm - 1.0, gamma_exponent(kind, n)});
    }
    return t;
}

DisplacementCheckResult displacement_check(EnsembleKind kind, std::size_t dim, std::size_t trials,
                                           std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("displacement_check: trials must be positive");
    DisplacementCheckResult res;
    res.trials = trials;
    const double tol = default_rank_tol(dim, dim);
    for (std::size_t i = 0; i < trials; ++i) {
        HermitianMatrix m = generate({kind, dim, seed, i});
        CMatrix d;
        switch (kind) {
            case EnsembleKind::ToeplitzReal:
            case EnsembleKind::ToeplitzComplex:
                d = toeplitz_displacement(m.matrix());
                break;
            case EnsembleKind::Hankel:
                d = hankel_displacement(m.matrix());
                break;
            default:
                d = th_displacement(m.matrix());
                break;
        }
        res.max_rank = std::max(res.max_rank, numerical_rank(d, tol));
    }
    return res;
}

}  // namespace strmat
