#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rng.hpp"
#include "spectral.hpp"

namespace strmat {

double SpectraBatch::compute_sigma(const std::vector<std::vector<double>>& rows,
                                   std::size_t dim) {
    if (rows.empty() || dim == 0) throw std::invalid_argument("compute_sigma: empty batch");
    double acc = 0.0;
    for (const auto& r : rows) {
        double tr2 = 0.0;
        for (double e : r) tr2 += e * e;
        acc += tr2 / static_cast<double>(dim);
    }
    return std::sqrt(acc / static_cast<double>(rows.size()));
}

DensityHistogram mean_density(const SpectraBatch& batch, std::size_t bins) {
    if (bins == 0) throw std::invalid_argument("mean_density: bins must be positive");
    if (batch.rows.empty()) throw std::invalid_argument("mean_density: empty batch");
    const double sigma = batch.sigma;
    if (!(sigma > 0.0)) throw std::invalid_argument("mean_density: batch sigma not positive");

    double lo = batch.rows[0][0], hi = lo;
    for (const auto& r : batch.rows) {
        lo = std::min(lo, r.front());
        hi = std::max(hi, r.back());
    }
    lo /= sigma;
    hi /= sigma;
    if (!(hi > lo)) throw std::invalid_argument("mean_density: degenerate spectrum");

    const double width = (hi - lo) / static_cast<double>(bins);
    DensityHistogram out;
    out.bin_width = width;
    out.centers.resize(bins);
    out.density.assign(bins, 0.0);
    for (std::size_t b = 0; b < bins; ++b) out.centers[b] = lo + (b + 0.5) * width;

    std::size_t total = 0;
    for (const auto& r : batch.rows) {
        for (double e : r) {
            double x = e / sigma;
            auto b = static_cast<std::size_t>(
                std::min<double>(static_cast<double>(bins) - 1.0,
                                 std::max(0.0, (x - lo) / width)));
            out.density[b] += 1.0;
            ++total;
        }
    }
    const double norm = 1.0 / (static_cast<double>(total) * width);
    for (auto& d : out.density) d *= norm;
    return out;
}

std::vector<double> smooth_density(const std::vector<double>& density, double bandwidth_bins) {
    const std::size_t n = density.size();
    std::vector<double> out(n, 0.0);
    const int reach = static_cast<int>(std::ceil(4.0 * bandwidth_bins));
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0, wsum = 0.0;
        for (int d = -reach; d <= reach; ++d) {
            auto j = static_cast<long>(i) + d;
            if (j < 0 || j >= static_cast<long>(n)) continue;
            double w = std::exp(-0.5 * (d / bandwidth_bins) * (d / bandwidth_bins));
            acc += w * density[static_cast<std::size_t>(j)];
            wsum += w;
        }
        out[i] = acc / wsum;
    }
    return out;
}

UnfoldedSpectrum unfold(const SpectraBatch& batch) {
    if (batch.rows.empty()) throw std::invalid_argument("unfold: empty batch");
    const std::size_t n = batch.dim;
    const std::size_t m = batch.rows.size();

    UnfoldedSpectrum u;
    u.pooled.reserve(n * m);
    for (const auto& r : batch.rows) u.pooled.insert(u.pooled.end(), r.begin(), r.end());
    std::sort(u.pooled.begin(), u.pooled.end());
    if (u.pooled.front() == u.pooled.back())
        throw std::invalid_argument("unfold: degenerate batch, all eigenvalues equal");

    u.rows.resize(m);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t r = 0; r < m; ++r) {
        u.rows[r].resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            auto it = std::upper_bound(u.pooled.begin(), u.pooled.end(), batch.rows[r][j]);
            u.rows[r][j] = static_cast<double>(it - u.pooled.begin()) * inv_m;
        }
    }
    u.window_lo = 0;
    u.window_hi = n;
    u.sigma = batch.sigma;
    u.count = m;
    return u;
}

namespace {

// Unfolded position of the positive-side mode of the smoothed density; used
// to center the Hankel window on its right spectral peak.
double hankel_peak_position(const UnfoldedSpectrum& u) {
    const std::size_t bins = 201;
    const double lo = u.pooled.front(), hi = u.pooled.back();
    const double width = (hi - lo) / static_cast<double>(bins);
    std::vector<double> hist(bins, 0.0);
    for (double e : u.pooled) {
        auto b = static_cast<std::size_t>(std::min<double>(
            static_cast<double>(bins) - 1.0, std::max(0.0, (e - lo) / width)));
        hist[b] += 1.0;
    }
    std::vector<double> sm = smooth_density(hist, 3.0);
    std::size_t best = 0;
    double best_v = -1.0;
    for (std::size_t b = 0; b < bins; ++b) {
        double center = lo + (static_cast<double>(b) + 0.5) * width;
        if (center <= 0.0) continue;
        if (sm[b] > best_v) {
            best_v = sm[b];
            best = b;
        }
    }
    const double e_star = lo + (static_cast<double>(best) + 0.5) * width;
    auto it = std::upper_bound(u.pooled.begin(), u.pooled.end(), e_star);
    return static_cast<double>(it - u.pooled.begin()) / static_cast<double>(u.count);
}

}  // namespace

void select_window(UnfoldedSpectrum& u, EnsembleKind kind) {
    if (u.rows.empty()) throw std::invalid_argument("select_window: empty spectrum");
    const std::size_t n = u.rows[0].size();
    if (n < 8) throw std::invalid_argument("select_window: spectrum too short");
    if (kind == EnsembleKind::Hankel) {
        const double c = hankel_peak_position(u);
        const std::size_t half = n / 8;
        auto lo = static_cast<long>(std::llround(c)) - static_cast<long>(half);
        lo = std::max(0L, std::min(lo, static_cast<long>(n - 2 * half)));
        u.window_lo = static_cast<std::size_t>(lo);
        u.window_hi = u.window_lo + 2 * half;
    } else {
        u.window_lo = 3 * n / 8;
        u.window_hi = 5 * n / 8;
    }
}

std::vector<SpacingHistogram> spacing_distributions(const UnfoldedSpectrum& u, std::size_t n_max,
                                                    double bin_width) {
    if (bin_width <= 0.0) throw std::invalid_argument("spacing_distributions: bad bin width");
    const std::size_t lo = u.window_lo, hi = u.window_hi;
    if (hi <= lo + n_max + 1)
        throw std::invalid_argument("spacing_distributions: window smaller than n_max + 2 levels");

    const double s_max = 4.0 * (static_cast<double>(n_max) + 1.0);
    const auto bins = static_cast<std::size_t>(std::ceil(s_max / bin_width));

    std::vector<SpacingHistogram> out(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) {
        auto& h = out[n];
        h.n = n;
        h.bin_width = bin_width;
        h.centers.resize(bins);
        h.density.assign(bins, 0.0);
        for (std::size_t b = 0; b < bins; ++b)
            h.centers[b] = (static_cast<double>(b) + 0.5) * bin_width;

        double acc = 0.0;
        for (const auto& row : u.rows) {
            for (std::size_t j = lo; j + n + 1 < hi; ++j) {
                const double s = row[j + n + 1] - row[j];
                h.raw.push_back(s);
                acc += s;
                if (s < s_max) {
                    auto b = static_cast<std::size_t>(s / bin_width);
                    h.density[std::min(b, bins - 1)] += 1.0;
                }
            }
        }
        h.samples = h.raw.size();
        h.mean = h.samples ? acc / static_cast<double>(h.samples) : 0.0;
        double in_range = 0.0;
        for (double d : h.density) in_range += d;
        if (in_range > 0.0) {
            const double norm = 1.0 / (in_range * bin_width);
            for (auto& d : h.density) d *= norm;
        }
    }
    return out;
}

NumberVarianceCurve number_variance(const UnfoldedSpectrum& u,
                                    const std::vector<double>& L_grid) {
    const std::size_t lo = u.window_lo, hi = u.window_hi;
    const double win = static_cast<double>(hi) - static_cast<double>(lo);
    NumberVarianceCurve out;
    constexpr std::size_t placements = 50;

    for (std::size_t li = 0; li < L_grid.size(); ++li) {
        const double L = L_grid[li];
        if (L <= 0.0 || L > win / 4.0)
            throw std::invalid_argument("number_variance: L must lie in (0, window/4]");
        double s1 = 0.0, s2 = 0.0;
        std::size_t nsamp = 0;
        for (std::size_t r = 0; r < u.rows.size(); ++r) {
            const auto& row = u.rows[r];
            // placement stream fixed by (row, L index): reproducible and
            // independent of evaluation order
            Rng rng(0xA5EBA11, (static_cast<std::uint64_t>(r) << 20) + li);
            for (std::size_t t = 0; t < placements; ++t) {
                const double x =
                    static_cast<double>(lo) + rng.next_double() * (win - L);
                const auto a = std::lower_bound(row.begin(), row.end(), x);
                const auto b = std::lower_bound(a, row.end(), x + L);
                const double cnt = static_cast<double>(b - a);
                s1 += cnt;
                s2 += cnt * cnt;
                ++nsamp;
            }
        }
        const double mean = s1 / static_cast<double>(nsamp);
        out.L.push_back(L);
        out.mean_count.push_back(mean);
        out.sigma2.push_back(s2 / static_cast<double>(nsamp) - mean * mean);
    }
    return out;
}

FormFactorCurve empirical_form_factor(const UnfoldedSpectrum& u,
                                      const std::vector<double>& tau_grid, bool window_only,
                                      bool connected) {
    if (u.rows.empty()) throw std::invalid_argument("empirical_form_factor: empty spectrum");
    if (connected && u.rows.size() < 4)
        throw std::invalid_argument("empirical_form_factor: connected part needs >= 4 rows");
    const std::size_t lo = window_only ? u.window_lo : 0;
    const std::size_t hi = window_only ? u.window_hi : u.rows[0].size();
    const std::size_t nlev = hi - lo;
    if (nlev == 0) throw std::invalid_argument("empirical_form_factor: empty window");

    FormFactorCurve out;
    out.tau = tau_grid;
    out.K.assign(tau_grid.size(), 0.0);
    out.realizations = u.rows.size();
    out.levels_per_row = nlev;

    // Covariates for the connected part: center and width of each row.  A row
    // whose spectrum came out bodily shifted or a little wider than the
    // ensemble average carries that deviation coherently, and with hard
    // spectral edges the two modes leave flat kernels ~ N var(mode) across
    // the whole plateau: O(1) for the structured families at any N, since
    // their width fluctuates as 1/sqrt(N).  Regressing the spectral sums on
    // the realized center and width removes those kernels where they are real
    // and costs only a degree of freedom where they are not.
    const std::size_t nrows = u.rows.size();
    std::vector<double> z1, z2;
    bool use1 = false, use2 = false;
    double rho = 0.0;
    if (connected) {
        z1.resize(nrows);
        z2.resize(nrows);
        for (std::size_t r = 0; r < nrows; ++r) {
            double mu = 0.0, var = 0.0;
            for (std::size_t j = lo; j < hi; ++j) mu += u.rows[r][j];
            mu /= static_cast<double>(nlev);
            for (std::size_t j = lo; j < hi; ++j) {
                const double d = u.rows[r][j] - mu;
                var += d * d;
            }
            z1[r] = mu;
            z2[r] = std::sqrt(var / static_cast<double>(nlev));
        }
        auto standardize = [&](std::vector<double>& z) {
            double mu = 0.0, var = 0.0;
            for (double v : z) mu += v;
            mu /= static_cast<double>(nrows);
            for (double& v : z) {
                v -= mu;
                var += v * v;
            }
            const double sd = std::sqrt(var / static_cast<double>(nrows));
            if (!(sd > 1e-12)) return false;
            for (double& v : z) v /= sd;
            return true;
        };
        use1 = standardize(z1);
        use2 = standardize(z2);
        if (use1 && use2) {
            for (std::size_t r = 0; r < nrows; ++r) rho += z1[r] * z2[r];
            rho /= static_cast<double>(nrows);
            if (std::abs(rho) > 0.999) use2 = false;  // collinear, one is enough
        }
    }

    std::vector<double> mean_re(tau_grid.size(), 0.0), mean_im(tau_grid.size(), 0.0);
    std::vector<double> c1_re(tau_grid.size(), 0.0), c1_im(tau_grid.size(), 0.0);
    std::vector<double> c2_re(tau_grid.size(), 0.0), c2_im(tau_grid.size(), 0.0);
    // accumulate per row in index order so the reduction is deterministic
    for (std::size_t r = 0; r < nrows; ++r) {
        const auto& row = u.rows[r];
        for (std::size_t ti = 0; ti < tau_grid.size(); ++ti) {
            const double w = 2.0 * std::numbers::pi * tau_grid[ti];
            double re = 0.0, im = 0.0;
            for (std::size_t j = lo; j < hi; ++j) {
                re += std::cos(w * row[j]);
                im += std::sin(w * row[j]);
            }
            out.K[ti] += re * re + im * im;
            mean_re[ti] += re;
            mean_im[ti] += im;
            if (use1) {
                c1_re[ti] += z1[r] * re;
                c1_im[ti] += z1[r] * im;
            }
            if (use2) {
                c2_re[ti] += z2[r] * re;
                c2_im[ti] += z2[r] * im;
            }
        }
    }
    const auto m = static_cast<double>(nrows);
    const double norm = 1.0 / (static_cast<double>(nlev) * m);
    if (connected) {
        // residual row variance of the spectral sum after the regression; the
        // subtracted row mean alone is the edge (Dirichlet) kernel of the
        // sharp window boundaries
        const double df = m - 1.0 - (use1 ? 1.0 : 0.0) - (use2 ? 1.0 : 0.0);
        for (std::size_t ti = 0; ti < tau_grid.size(); ++ti) {
            const double mu2 =
                (mean_re[ti] * mean_re[ti] + mean_im[ti] * mean_im[ti]) / (m * m);
            double centered = out.K[ti] / m - mu2;
            const double a1 = (c1_re[ti] * c1_re[ti] + c1_im[ti] * c1_im[ti]) / (m * m);
            const double a2 = (c2_re[ti] * c2_re[ti] + c2_im[ti] * c2_im[ti]) / (m * m);
            if (use1 && use2) {
                const double cross =
                    (c1_re[ti] * c2_re[ti] + c1_im[ti] * c2_im[ti]) / (m * m);
                centered -= (a1 + a2 - 2.0 * rho * cross) / (1.0 - rho * rho);
            } else if (use1) {
                centered -= a1;
            } else if (use2) {
                centered -= a2;
            }
            out.K[ti] = centered * m / df / static_cast<double>(nlev);
        }
    } else {
        for (auto& k : out.K) k *= norm;
    }
    return out;
}

namespace {

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

CompressibilityEstimate estimate_compressibility(const FormFactorCurve& k) {
    CompressibilityEstimate est;
    // chi is the tau -> 0 limit of K, so read the curve as close to the origin
    // as the estimator allows. Below ~6/N the connected estimator is not
    // trustworthy (that is where it regresses out the soft modes), and above
    // ~0.06 the K(tau) curves of the spacing laws this tool targets have
    // already started their rise toward 1: their curvature coefficients are of
    // order a few, so averaging out to 0.06 costs at most ~0.005 in definition
    // bias while leaving a couple dozen grid points to beat down noise.
    const double tau_floor = 6.0 / static_cast<double>(k.levels_per_row);
    const double tau_cap = 0.06;
    if (k.tau.empty() || k.tau.back() < tau_cap) {
        est.note = "tau grid must reach 0.06";
        return est;
    }

    std::vector<std::size_t> band;
    for (std::size_t i = 0; i < k.tau.size(); ++i)
        if (k.tau[i] >= tau_floor && k.tau[i] <= tau_cap) band.push_back(i);
    if (band.size() < 4) {
        est.note = "no plateau points between 6/N and 0.06";
        return est;
    }

    // crop a leftmost run that has not settled yet: residual blow-up pushes K
    // up, the soft-mode regression pushes it down, so flag both directions
    const std::size_t half = 12;
    std::vector<bool> flagged(band.size(), false);
    for (std::size_t bi = 0; bi < band.size(); ++bi) {
        const std::size_t a = bi > half ? bi - half : 0;
        const std::size_t b = std::min(band.size(), bi + half + 1);
        std::vector<double> local;
        for (std::size_t t = a; t < b; ++t) local.push_back(k.K[band[t]]);
        const double med = median_of(local);
        for (auto& x : local) x = std::abs(x - med);
        const double mad = median_of(local);
        flagged[bi] = std::abs(k.K[band[bi]] - med) > 3.0 * mad;
    }
    std::size_t start = 0;
    while (start < band.size() && flagged[start]) ++start;
    if (band.size() - start < 4) {
        est.note = "unsettled region covers the whole candidate plateau";
        return est;
    }

    std::vector<double> vals;
    for (std::size_t bi = start; bi < band.size(); ++bi) vals.push_back(k.K[band[bi]]);
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= static_cast<double>(vals.size());
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var /= static_cast<double>(vals.size() > 1 ? vals.size() - 1 : 1);

    std::vector<double> sorted = vals;
    std::sort(sorted.begin(), sorted.end());
    const double q1 = sorted[sorted.size() / 4];
    const double q3 = sorted[(3 * sorted.size()) / 4];

    est.chi = mean;
    est.stderr_mean = std::sqrt(var / static_cast<double>(vals.size()));
    est.spread = 0.5 * (q3 - q1);
    est.tau_lo = k.tau[band[start]];
    est.tau_hi = k.tau[band.back()];
    est.ok = true;
    return est;
}

}  // namespace strmat
