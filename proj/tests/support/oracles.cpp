#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "core/rng.hpp"

namespace strmat::testing {

namespace {

// det(A - xI) via LU with partial pivoting; real for Hermitian A and real x
double shifted_det(const CMatrix& a, double x) {
    const std::size_t n = a.rows();
    CMatrix u = a;
    for (std::size_t i = 0; i < n; ++i) u(i, i) -= x;

    double sign = 1.0;
    cplx det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(u(i, k)) > std::abs(u(piv, k))) piv = i;
        if (u(piv, k) == cplx(0.0)) return 0.0;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(u(k, j), u(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = u(i, k) / u(k, k);
            for (std::size_t j = k; j < n; ++j) u(i, j) -= f * u(k, j);
        }
        det *= u(k, k);
    }
    return sign * det.real();
}

}  // namespace

std::vector<double> det_bisection_eigenvalues(const CMatrix& a, double tol) {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw std::invalid_argument("det_bisection: square matrix required");
    const std::size_t n = a.rows();

    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) radius += std::abs(a(i, j));
        lo = std::min(lo, a(i, i).real() - radius);
        hi = std::max(hi, a(i, i).real() + radius);
    }
    lo -= 1e-8;
    hi += 1e-8;
    const double scale = std::max(1.0, std::max(std::abs(lo), std::abs(hi)));

    for (std::size_t steps = 1024 * n; steps <= 1024 * n * 64; steps *= 4) {
        std::vector<double> roots;
        double x0 = lo, f0 = shifted_det(a, lo);
        for (std::size_t s = 1; s <= steps; ++s) {
            const double x1 = lo + (hi - lo) * static_cast<double>(s) / static_cast<double>(steps);
            const double f1 = shifted_det(a, x1);
            if ((f0 < 0.0) != (f1 < 0.0) || f1 == 0.0) {
                double b0 = x0, b1 = x1, g0 = f0;
                for (int it = 0; it < 200 && b1 - b0 > tol * scale; ++it) {
                    const double mid = 0.5 * (b0 + b1);
                    const double fm = shifted_det(a, mid);
                    if ((g0 < 0.0) != (fm < 0.0)) {
                        b1 = mid;
                    } else {
                        b0 = mid;
                        g0 = fm;
                    }
                }
                roots.push_back(0.5 * (b0 + b1));
            }
            x0 = x1;
            f0 = f1;
        }
        if (roots.size() == n) return roots;
        // degenerate or clustered spectrum: retry with a finer scan
    }
    throw std::runtime_error("det_bisection: could not isolate all eigenvalues");
}

namespace {

// 15-point Kronrod nodes/weights and the embedded 7-point Gauss weights
constexpr double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                            0.741531185599394, 0.586087235467691, 0.405845151377397,
                            0.207784955007898, 0.0};
constexpr double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                            0.140653259715525, 0.169004726639267, 0.190350578064785,
                            0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                           0.417959183673469};

void gk15(const std::function<double(double)>& f, double a, double b, double& result,
          double& err) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double resg = kWg[3] * f(c), resk = kWgk[7] * f(c);
    for (int i = 0; i < 7; ++i) {
        const double fv = f(c - h * kXgk[i]) + f(c + h * kXgk[i]);
        resk += kWgk[i] * fv;
        if (i % 2 == 1) resg += kWg[i / 2] * fv;
    }
    result = resk * h;
    err = std::abs((resk - resg) * h);
}

double integrate_rec(const std::function<double(double)>& f, double a, double b, double tol,
                     int depth) {
    double result, err;
    gk15(f, a, b, result, err);
    if (err <= tol || depth >= 48) return result;
    const double mid = 0.5 * (a + b);
    return integrate_rec(f, a, mid, 0.5 * tol, depth + 1) +
           integrate_rec(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(b >= a)) throw std::invalid_argument("integrate: bad interval");
    return integrate_rec(f, a, b, tol, 0);
}

// Rows are conditioned on their span: n sorted uniforms on [0, n] rather than a
// running sum of exponentials. A free right edge would let the total length
// wander by ~sqrt(n) per row, and that global dilation shows up as an O(1)
// excess in the connected form factor at small tau. Matrix spectra do not have
// that freedom (n levels in a self-averaging band), so the surrogate must not
// either. Local spacing statistics differ from the ideal process only at O(1/n).
std::vector<std::vector<double>> poisson_rows(std::size_t n, std::size_t m, std::uint64_t seed) {
    std::vector<std::vector<double>> rows(m);
    for (std::size_t r = 0; r < m; ++r) {
        Rng rng(seed, r);
        rows[r].resize(n);
        for (std::size_t j = 0; j < n; ++j) rows[r][j] = static_cast<double>(n) * rng.next_double();
        std::sort(rows[r].begin(), rows[r].end());
    }
    return rows;
}

std::vector<std::vector<double>> daisy_rows(std::size_t n, std::size_t m, std::uint64_t seed) {
    std::vector<std::vector<double>> rows(m);
    std::vector<double> base(2 * n);
    for (std::size_t r = 0; r < m; ++r) {
        Rng rng(seed, r);
        for (std::size_t j = 0; j < 2 * n; ++j)
            base[j] = static_cast<double>(2 * n) * rng.next_double();
        std::sort(base.begin(), base.end());
        rows[r].resize(n);
        // keep every second point, halve to restore unit mean spacing
        for (std::size_t j = 0; j < n; ++j) rows[r][j] = 0.5 * base[2 * j + 1];
    }
    return rows;
}

std::vector<std::vector<double>> picket_rows(std::size_t n, std::size_t m, std::uint64_t seed) {
    std::vector<std::vector<double>> rows(m);
    for (std::size_t r = 0; r < m; ++r) {
        Rng rng(seed, r);
        const double offset = rng.next_double();
        rows[r].resize(n);
        for (std::size_t j = 0; j < n; ++j) rows[r][j] = offset + static_cast<double>(j);
    }
    return rows;
}

SpectraBatch synthetic_batch(std::vector<std::vector<double>> rows, EnsembleKind kind) {
    SpectraBatch b;
    b.kind = kind;
    b.count = rows.size();
    b.dim = rows.empty() ? 0 : rows[0].size();
    b.seed = 0;
    b.rows = std::move(rows);
    b.sigma = SpectraBatch::compute_sigma(b.rows, b.dim);
    return b;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_distance: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double F = cdf(samples[i]);
        d = std::max(d, std::abs(F - static_cast<double>(i) / n));
        d = std::max(d, std::abs(F - static_cast<double>(i + 1) / n));
    }
    return d;
}

double poisson_p0_cdf(double s) { return s <= 0.0 ? 0.0 : 1.0 - std::exp(-s); }

double semi_poisson_p0_cdf(double s) {
    return s <= 0.0 ? 0.0 : 1.0 - std::exp(-2.0 * s) * (1.0 + 2.0 * s);
}

double wigner_gue_p0_cdf(double s) {
    if (s <= 0.0) return 0.0;
    const double u = 4.0 / std::numbers::pi;
    return std::erf(2.0 * s / std::sqrt(std::numbers::pi)) - u * s * std::exp(-u * s * s);
}

std::vector<double> sample_gamma_surmise(double gamma, std::size_t n, std::size_t count,
                                         std::uint64_t seed) {
    // spacing ~ Gamma(shape = gamma+1, rate = (gamma+1)/(n+1))
    const double shape = gamma + 1.0;
    const double rate = shape / (static_cast<double>(n) + 1.0);
    if (shape < 1.0) throw std::invalid_argument("sample_gamma_surmise: gamma must be >= 0");

    Rng rng(seed, 0);
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    std::vector<double> out;
    out.reserve(count);
    while (out.size() < count) {
        const double x = rng.next_gaussian();
        const double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        const double v = t * t * t;
        const double u = rng.next_double();
        if (u < 1.0 - 0.0331 * x * x * x * x ||
            std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            out.push_back(d * v / rate);
    }
    return out;
}

CMatrix dense_hankel_fourier(std::span<const double> h, std::size_t n) {
    if (h.size() != 2 * n - 1) throw std::invalid_argument("dense_hankel_fourier: need 2N-1 values");
    const double nd = static_cast<double>(n);
    CMatrix f(n, n), hm(n, n);
    for (std::size_t m = 1; m <= n; ++m)
        for (std::size_t j = 1; j <= n; ++j) {
            f(m - 1, j - 1) = std::polar(1.0 / std::sqrt(nd),
                                         2.0 * std::numbers::pi * static_cast<double>(m * j) / nd);
            hm(m - 1, j - 1) = h[m + j - 2];  // H_{mj} = h_{m+j}, h_2 first
        }

    CMatrix fh(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += f(i, k) * hm(k, j);
            fh(i, j) = acc;
        }
    CMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += fh(i, k) * std::conj(f(j, k));
            out(i, j) = acc;
        }
    return out;
}

}  // namespace strmat::testing
