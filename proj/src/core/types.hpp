#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace strmat {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Kept deliberately small: storage plus the
// few helpers the solvers need.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    cplx* row(std::size_t i) { return a_.data() + i * cols_; }
    const cplx* row(std::size_t i) const { return a_.data() + i * cols_; }

    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

// Hermitian matrix with the invariant enforced structurally: writes go through
// set(), which mirrors the conjugate entry and keeps the diagonal real.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(std::size_t n) : m_(n, n) {}

    // Symmetrizes arbitrary square input: (A + A^dagger)/2.
    static HermitianMatrix symmetrized(const CMatrix& a) {
        if (a.rows() != a.cols())
            throw std::invalid_argument("HermitianMatrix: input not square");
        HermitianMatrix h(a.rows());
        for (std::size_t i = 0; i < a.rows(); ++i) {
            h.m_(i, i) = 0.5 * (a(i, i) + std::conj(a(i, i)));
            for (std::size_t j = 0; j < i; ++j) {
                cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
                h.m_(i, j) = v;
                h.m_(j, i) = std::conj(v);
            }
        }
        return h;
    }

    std::size_t dim() const { return m_.rows(); }

    const cplx& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    void set(std::size_t i, std::size_t j, cplx v) {
        if (i == j) {
            m_(i, i) = cplx(v.real(), 0.0);
        } else {
            m_(i, j) = v;
            m_(j, i) = std::conj(v);
        }
    }

    void add(std::size_t i, std::size_t j, cplx v) { set(i, j, m_(i, j) + v); }

    const CMatrix& matrix() const { return m_; }
    CMatrix& mutable_matrix() { return m_; }  // solvers work in place on a copy

    double trace() const {
        double t = 0;
        for (std::size_t i = 0; i < dim(); ++i) t += m_(i, i).real();
        return t;
    }

    double frobenius_norm() const {
        double s = 0;
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j) s += std::norm(m_(i, j));
        return std::sqrt(s);
    }

private:
    CMatrix m_;
};

}  // namespace strmat
