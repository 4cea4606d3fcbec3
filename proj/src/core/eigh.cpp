#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "errors.hpp"
#include "linalg.hpp"

namespace strmat {

namespace {

// Householder reduction to real tridiagonal form, working on the lower
// triangle in place.  On return column k of `a` (rows k+1..) holds the
// reflector v_k, `beta` its scale, `alpha` the complex subdiagonal, and the
// diagonal of `a` the real tridiagonal diagonal.
void tridiagonalize(CMatrix& a, std::vector<cplx>& alpha, std::vector<double>& beta,
                    std::vector<cplx>& v, std::vector<cplx>& p, std::vector<cplx>& w) {
    const std::size_t n = a.rows();
    alpha.assign(n > 0 ? n - 1 : 0, cplx(0));
    beta.assign(n > 0 ? n - 1 : 0, 0.0);
    if (n < 3) {
        if (n == 2) alpha[0] = a(1, 0);
        return;
    }
    v.resize(n);
    p.resize(n);
    w.resize(n);

    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t base = k + 1;
        const std::size_t m = n - base;

        double xnorm2 = 0;
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = a(base + i, k);
            xnorm2 += std::norm(v[i]);
        }
        double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) {
            for (std::size_t i = 0; i < m; ++i) a(base + i, k) = cplx(0);
            continue;
        }

        cplx phase = v[0] != cplx(0) ? v[0] / std::abs(v[0]) : cplx(1);
        cplx al = -phase * xnorm;
        v[0] -= al;
        double vnorm2 = 0;
        for (std::size_t i = 0; i < m; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0) {
            alpha[k] = al;
            for (std::size_t i = 0; i < m; ++i) a(base + i, k) = cplx(0);
            continue;
        }
        double bet = 2.0 / vnorm2;
        alpha[k] = al;
        beta[k] = bet;

        // p = beta * A_sub * v using the lower triangle only; both passes walk
        // rows contiguously.
        for (std::size_t i = 0; i < m; ++i) p[i] = cplx(0);
        for (std::size_t i = 0; i < m; ++i) {
            const cplx* arow = a.row(base + i) + base;
            const cplx vi = v[i];
            cplx acc = arow[i].real() * vi;
            for (std::size_t j = 0; j < i; ++j) {
                acc += arow[j] * v[j];
                p[j] += std::conj(arow[j]) * vi;
            }
            p[i] += acc;
        }
        double vtp = 0;
        for (std::size_t i = 0; i < m; ++i) {
            p[i] *= bet;
            vtp += (std::conj(v[i]) * p[i]).real();
        }
        const double kk = 0.5 * bet * vtp;
        for (std::size_t i = 0; i < m; ++i) w[i] = p[i] - kk * v[i];

        // A_sub -= v w^H + w v^H (lower triangle)
        for (std::size_t i = 0; i < m; ++i) {
            cplx* arow = a.row(base + i) + base;
            const cplx vi = v[i];
            const cplx wi = w[i];
            for (std::size_t j = 0; j < i; ++j)
                arow[j] -= vi * std::conj(w[j]) + wi * std::conj(v[j]);
            arow[i] = cplx(arow[i].real() - 2.0 * (vi * std::conj(wi)).real(), 0.0);
        }

        // stash the reflector in the dead part of column k
        for (std::size_t i = 0; i < m; ++i) a(base + i, k) = v[i];
    }
    alpha[n - 2] = a(n - 1, n - 2);
}

struct Rotation {
    std::uint32_t i;
    double c, s;
};

// Implicit-shift QL on the real tridiagonal (d, e); e[i] couples d[i] and
// d[i+1].  Eigenvalues land in d unsorted.  Every plane rotation applied is
// appended to rec so eigenvectors can be reconstructed later for any column
// subset.  e must have n entries: e[n-1] is scratch the sweep writes through
// when the unreduced block reaches the bottom.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, std::vector<Rotation>* rec) {
    const std::size_t n = d.size();
    if (n == 0) return;
    const double eps = std::numeric_limits<double>::epsilon();
    const long cap = 30 * static_cast<long>(n);

    for (std::size_t l = 0; l < n; ++l) {
        long iter = 0;
        for (;;) {
            std::size_t m = l;
            while (m + 1 < n) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
                ++m;
            }
            if (m == l) break;
            if (iter++ == cap)
                throw NumericError("eigh: QL failed to converge at eigenvalue index " +
                                         std::to_string(l));
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (std::size_t ii = m; ii-- > l;) {
                double f = s * e[ii];
                double b = c * e[ii];
                r = std::hypot(f, g);
                e[ii + 1] = r;
                if (r == 0.0) {
                    d[ii + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[ii + 1] - p;
                r = (d[ii] - g) * s + 2.0 * c * b;
                p = s * r;
                d[ii + 1] = g + p;
                g = c * r - b;
                if (rec) rec->push_back({static_cast<std::uint32_t>(ii), c, s});
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

// Replays the recorded QL rotations in reverse onto an n x c block whose
// columns start as unit vectors; the result is the requested set of columns
// of the tridiagonal eigenvector matrix.
void replay_columns(const std::vector<Rotation>& rec, std::vector<double>& block,
                    std::size_t n, std::size_t c) {
    (void)n;
    for (std::size_t t = rec.size(); t-- > 0;) {
        const Rotation& rot = rec[t];
        double* r0 = block.data() + static_cast<std::size_t>(rot.i) * c;
        double* r1 = r0 + c;
        const double cc = rot.c, ss = rot.s;
        for (std::size_t j = 0; j < c; ++j) {
            double x = r0[j], y = r1[j];
            r0[j] = cc * x + ss * y;
            r1[j] = -ss * x + cc * y;
        }
    }
}

EigenDecomposition solve(const HermitianMatrix& h, bool with_vectors, std::size_t lo,
                         std::size_t hi) {
    const std::size_t n = h.dim();
    if (n == 0) throw std::invalid_argument("eigh: dimension 0");

    CMatrix a = h.matrix();
    std::vector<cplx> alpha, vbuf, pbuf, wbuf;
    std::vector<double> beta;
    tridiagonalize(a, alpha, beta, vbuf, pbuf, wbuf);

    std::vector<double> d(n), e(n > 1 ? n - 1 : 0);
    std::vector<cplx> u(n, cplx(1));
    for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i).real();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double mag = std::abs(alpha[k]);
        e[k] = mag;
        u[k + 1] = mag == 0.0 ? u[k] : u[k] * (alpha[k] / mag);
    }

    std::vector<Rotation> rec;
    std::vector<double> evals = d;
    {
        std::vector<double> ework(n, 0.0);
        std::copy(e.begin(), e.end(), ework.begin());
        if (with_vectors) rec.reserve(n * n / 2);
        ql_implicit(evals, ework, with_vectors ? &rec : nullptr);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return evals[x] < evals[y]; });

    EigenDecomposition out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = evals[order[i]];
    if (!with_vectors) return out;

    const std::size_t c = hi - lo;
    std::vector<double> block(n * c, 0.0);
    for (std::size_t j = 0; j < c; ++j) block[order[lo + j] * c + j] = 1.0;
    replay_columns(rec, block, n, c);

    // phases from the real-tridiagonal similarity, then the Householder
    // back-transform, newest reflector first
    CMatrix vec(n, c);
    for (std::size_t i = 0; i < n; ++i) {
        const double* src = block.data() + i * c;
        cplx* dst = vec.row(i);
        for (std::size_t j = 0; j < c; ++j) dst[j] = u[i] * src[j];
    }
    if (n >= 3) {
        std::vector<cplx> t(c);
        for (std::size_t k = n - 2; k-- > 0;) {
            if (beta[k] == 0.0) continue;
            const std::size_t base = k + 1;
            const std::size_t m = n - base;
            std::fill(t.begin(), t.end(), cplx(0));
            for (std::size_t i = 0; i < m; ++i) {
                const cplx vi = std::conj(a(base + i, k));
                const cplx* row = vec.row(base + i);
                for (std::size_t j = 0; j < c; ++j) t[j] += vi * row[j];
            }
            for (std::size_t j = 0; j < c; ++j) t[j] *= beta[k];
            for (std::size_t i = 0; i < m; ++i) {
                const cplx vi = a(base + i, k);
                cplx* row = vec.row(base + i);
                for (std::size_t j = 0; j < c; ++j) row[j] -= vi * t[j];
            }
        }
    }
    out.vectors = std::move(vec);
    out.has_vectors = true;
    out.col_offset = lo;
    return out;
}

}  // namespace

EigenDecomposition eigh(const HermitianMatrix& m, bool with_vectors) {
    return solve(m, with_vectors, 0, with_vectors ? m.dim() : 0);
}

EigenDecomposition eigh_window(const HermitianMatrix& m, std::size_t lo, std::size_t hi) {
    if (lo >= hi || hi > m.dim()) throw std::invalid_argument("eigh_window: bad column range");
    return solve(m, true, lo, hi);
}

}  // namespace strmat
