#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "linalg.hpp"

namespace strmat {

namespace {

// One-sided Jacobi: rotate column pairs until all are mutually orthogonal;
// singular values are then the column norms.
std::vector<double> jacobi_column_norms(CMatrix b) {
    const std::size_t m = b.rows(), n = b.cols();
    const double tol = 1e-14;
    const int max_sweeps = 60;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0, aqq = 0;
                cplx apq(0);
                for (std::size_t i = 0; i < m; ++i) {
                    const cplx bp = b(i, p), bq = b(i, q);
                    app += std::norm(bp);
                    aqq += std::norm(bq);
                    apq += std::conj(bp) * bq;
                }
                const double mag = std::abs(apq);
                if (app == 0.0 || aqq == 0.0 || mag <= tol * std::sqrt(app * aqq)) continue;
                rotated = true;
                // absorb the phase into column q, then a real Jacobi rotation
                const cplx ph = apq / mag;
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = std::copysign(1.0, tau) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t i = 0; i < m; ++i) {
                    const cplx bp = b(i, p);
                    const cplx bq = b(i, q) * std::conj(ph);
                    b(i, p) = c * bp - s * bq;
                    b(i, q) = s * bp + c * bq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sv(n);
    for (std::size_t q = 0; q < n; ++q) {
        double s = 0;
        for (std::size_t i = 0; i < m; ++i) s += std::norm(b(i, q));
        sv[q] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

}  // namespace

std::vector<double> singular_values(const CMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("singular_values: empty");
    if (a.rows() >= a.cols()) return jacobi_column_norms(a);
    CMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
    return jacobi_column_norms(std::move(t));
}

std::size_t numerical_rank(const CMatrix& a, double tol) {
    std::vector<double> sv = singular_values(a);
    if (sv.empty() || sv[0] == 0.0) return 0;
    const double cut = tol * sv[0];
    std::size_t r = 0;
    while (r < sv.size() && sv[r] > cut) ++r;
    return r;
}

std::size_t null_space_dim(const CMatrix& a, double tol) {
    return a.cols() - numerical_rank(a, tol);
}

}  // namespace strmat
