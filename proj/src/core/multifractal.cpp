#include <cmath>
#include <numbers>
#include <stdexcept>

#include "linalg.hpp"
#include "multifractal.hpp"

namespace strmat {

CMatrix fourier_eigenvectors(const CMatrix& vectors) {
    const std::size_t n = vectors.rows();
    const std::size_t c = vectors.cols();
    CMatrix out(n, c);
    std::vector<cplx> col(n);
    for (std::size_t j = 0; j < c; ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = vectors(i, j);
        std::vector<cplx> f = dft(col, +1);
        for (std::size_t i = 0; i < n; ++i) out(i, j) = f[i];
    }
    return out;
}

MomentAccumulator::MomentAccumulator(std::vector<double> q_grid) : q(std::move(q_grid)) {
    sum.assign(q.size(), 0.0);
    sum_sq.assign(q.size(), 0.0);
}

void MomentAccumulator::add_vector(std::span<const cplx> psi_hat) {
    const std::size_t n = psi_hat.size();
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = std::norm(psi_hat[i]);

    double ent = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (w[i] > 0.0) ent += w[i] * std::log(w[i]);
    entropy_sum += ent;
    entropy_sum_sq += ent * ent;

    for (std::size_t k = 0; k < q.size(); ++k) {
        const double qq = q[k];
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (qq < 0.0 && w[i] < drop_tol) {
                if (k == 0) ++excluded;  // count once per component
                continue;
            }
            acc += std::pow(w[i], qq);
        }
        sum[k] += acc;
        sum_sq[k] += acc * acc;
    }
    component_count += n;
    ++samples;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
    if (other.q != q) throw std::invalid_argument("merge: inconsistent q grids");
    for (std::size_t k = 0; k < q.size(); ++k) {
        sum[k] += other.sum[k];
        sum_sq[k] += other.sum_sq[k];
    }
    entropy_sum += other.entropy_sum;
    entropy_sum_sq += other.entropy_sum_sq;
    samples += other.samples;
    excluded += other.excluded;
    component_count += other.component_count;
}

MomentTable finalize_moments(const MomentAccumulator& acc, std::size_t dim) {
    if (acc.samples == 0) throw std::invalid_argument("finalize_moments: no samples");
    MomentTable t;
    t.dim = dim;
    t.q = acc.q;
    const double m = static_cast<double>(acc.samples);
    t.moment.resize(acc.q.size());
    t.moment_se.resize(acc.q.size());
    for (std::size_t k = 0; k < acc.q.size(); ++k) {
        const double mean = acc.sum[k] / m;
        const double var = std::max(0.0, acc.sum_sq[k] / m - mean * mean);
        t.moment[k] = mean;
        t.moment_se[k] = std::sqrt(var / m);
    }
    const double emean = acc.entropy_sum / m;
    const double evar = std::max(0.0, acc.entropy_sum_sq / m - emean * emean);
    t.entropy = emean;
    t.entropy_se = std::sqrt(evar / m);
    t.samples = acc.samples;
    t.excluded_fraction =
        acc.component_count ? static_cast<double>(acc.excluded) / acc.component_count : 0.0;
    return t;
}

std::vector<double> default_q_grid() {
    std::vector<double> q;
    for (int i = -8; i <= 16; ++i) q.push_back(i * 0.25);
    return q;
}

ScalingExponents scaling_exponents(const std::vector<MomentTable>& tables) {
    if (tables.size() < 3)
        throw std::invalid_argument("scaling_exponents: need at least 3 ladder points");
    const auto& q = tables[0].q;
    for (const auto& t : tables)
        if (t.q != q) throw std::invalid_argument("scaling_exponents: inconsistent q grids");

    std::vector<double> lnN;
    for (const auto& t : tables) lnN.push_back(std::log(static_cast<double>(t.dim)));

    ScalingExponents se;
    se.q = q;
    se.tau.resize(q.size());
    se.tau_se.resize(q.size());
    se.dq.resize(q.size());
    se.dq_se.resize(q.size());
    se.delta.resize(q.size());

    std::vector<double> y(tables.size());
    for (std::size_t k = 0; k < q.size(); ++k) {
        for (std::size_t t = 0; t < tables.size(); ++t) {
            const double m = tables[t].moment[k];
            if (!(m > 0.0))
                throw std::invalid_argument("scaling_exponents: nonpositive moment");
            y[t] = std::log(m);
        }
        LinearFit fit = linear_fit(lnN, y);
        se.tau[k] = -fit.slope;
        se.tau_se[k] = fit.stderr_slope;
        if (std::abs(q[k] - 1.0) > 1e-12) {
            se.dq[k] = se.tau[k] / (q[k] - 1.0);
            se.dq_se[k] = se.tau_se[k] / std::abs(q[k] - 1.0);
        }
        se.delta[k] = se.tau[k] - (q[k] - 1.0);
    }

    // information dimension from S(N) = <sum w ln w> ~ -D_1 ln N
    for (std::size_t t = 0; t < tables.size(); ++t) y[t] = tables[t].entropy;
    LinearFit efit = linear_fit(lnN, y);
    se.d1 = -efit.slope;
    se.d1_se = efit.stderr_slope;
    for (std::size_t k = 0; k < q.size(); ++k) {
        if (std::abs(q[k] - 1.0) <= 1e-12) {
            se.dq[k] = se.d1;
            se.dq_se[k] = se.d1_se;
            se.delta[k] = 0.0;
        }
    }
    return se;
}

std::vector<SymmetryRow> symmetry_check(const ScalingExponents& se) {
    std::vector<SymmetryRow> rows;
    for (std::size_t k = 0; k < se.q.size(); ++k) {
        const double target = 1.0 - se.q[k];
        for (std::size_t j = 0; j < se.q.size(); ++j) {
            if (std::abs(se.q[j] - target) < 1e-9) {
                rows.push_back({se.q[k], se.delta[k], se.delta[j], se.delta[k] - se.delta[j]});
                break;
            }
        }
    }
    return rows;
}

HermitianMatrix hankel_fourier_matrix(std::span<const double> h, std::size_t n) {
    if (n < 2) throw std::invalid_argument("hankel_fourier_matrix: dimension must be >= 2");
    if (h.size() != 2 * n - 1)
        throw std::invalid_argument("hankel_fourier_matrix: h must hold 2N-1 antidiagonal sums");
    const double nd = static_cast<double>(n);
    auto hs = [&](std::size_t s) { return h[s - 2]; };  // h_2 .. h_{2N}

    // xi_m and eta_m for m = 1..N; both are DFT-like sums over the first and
    // second halves of the antidiagonal coefficients
    std::vector<cplx> xi(n + 1), eta(n + 1);
    for (std::size_t m = 1; m <= n; ++m) {
        cplx sxi(0), seta(0);
        for (std::size_t r = 1; r <= n; ++r) {
            const double ang = -2.0 * std::numbers::pi * static_cast<double>(r * m) / nd;
            const cplx ph = std::polar(1.0, ang);
            if (r >= 2) {
                const double diff = hs(r) - hs(r + n);
                sxi += diff * static_cast<double>(r - 1) / nd * ph;
                seta += diff / nd * ph;
            }
            sxi += hs(r + n) * ph;
        }
        xi[m] = sxi;
        eta[m] = seta;
    }

    HermitianMatrix out(n);
    for (std::size_t m = 1; m <= n; ++m) {
        for (std::size_t l = m; l <= n; ++l) {
            if ((m + l) % n == 0) {
                out.set(m - 1, l - 1, xi[l]);
            } else {
                const double ang = 2.0 * std::numbers::pi * static_cast<double>(m + l) / nd;
                const cplx om = std::polar(1.0, -ang);       // e^{-2 pi i (m+l)/N}
                const cplx val = -(eta[l] / (1.0 - om) + std::conj(eta[m]) / (1.0 - 1.0 / om));
                out.set(m - 1, l - 1, val);
            }
        }
    }
    return out;
}

}  // namespace strmat
