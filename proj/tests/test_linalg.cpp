#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "core/ensembles.hpp"
#include "core/linalg.hpp"
#include "core/rng.hpp"
#include "oracles.hpp"

using namespace strmat;
using namespace strmat::testing;

namespace {

HermitianMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
    return generate({EnsembleKind::GUE, n, seed, 0});
}

double residual_norm(const HermitianMatrix& m, const EigenDecomposition& eig) {
    const std::size_t n = m.dim();
    double worst = 0.0;
    for (std::size_t c = 0; c < eig.vectors.cols(); ++c) {
        const double lambda = eig.values[eig.col_offset + c];
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cplx r = -lambda * eig.vectors(i, c);
            for (std::size_t j = 0; j < n; ++j) r += m(i, j) * eig.vectors(j, c);
            acc += std::norm(r);
        }
        worst = std::max(worst, std::sqrt(acc));
    }
    return worst;
}

}  // namespace

TEST_CASE("eigenvalues match the determinant-bisection oracle") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        HermitianMatrix m = random_hermitian(6, seed);
        auto got = eigh(m).values;
        auto expected = det_bisection_eigenvalues(m.matrix(), 1e-13);
        REQUIRE(got.size() == expected.size());
        for (std::size_t i = 0; i < got.size(); ++i)
            CHECK(std::abs(got[i] - expected[i]) < 1e-8);
    }
}

TEST_CASE("diagonal and degenerate spectra") {
    HermitianMatrix d(4);
    d.set(0, 0, 3.0);
    d.set(1, 1, -1.0);
    d.set(2, 2, 3.0);
    d.set(3, 3, 0.5);
    auto v = eigh(d).values;
    CHECK(v[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(v[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(v[2] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(v[3] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("partial antidiagonal permutation has spectrum (-1, 1, 1, 1)") {
    // sigma swaps 1 and 3 (1-based), fixes 2 and 4
    HermitianMatrix p(4);
    p.set(0, 2, 1.0);
    p.set(1, 1, 1.0);
    p.set(3, 3, 1.0);
    auto v = eigh(p).values;
    CHECK(v[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(v[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v[3] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eigenvectors: residuals and orthonormality") {
    HermitianMatrix m = random_hermitian(24, 42);
    EigenDecomposition eig = eigh(m, true);
    REQUIRE(eig.has_vectors);
    REQUIRE(eig.vectors.cols() == 24);

    CHECK(residual_norm(m, eig) < 1e-8 * m.frobenius_norm());

    for (std::size_t a = 0; a < 24; ++a)
        for (std::size_t b = 0; b <= a; ++b) {
            cplx dot = 0.0;
            for (std::size_t i = 0; i < 24; ++i)
                dot += std::conj(eig.vectors(i, a)) * eig.vectors(i, b);
            CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-10);
        }
}

TEST_CASE("windowed eigenvectors agree with the full decomposition") {
    HermitianMatrix m = random_hermitian(32, 7);
    EigenDecomposition full = eigh(m, true);
    EigenDecomposition win = eigh_window(m, 12, 20);
    REQUIRE(win.vectors.cols() == 8);
    REQUIRE(win.col_offset == 12);

    for (std::size_t i = 0; i < full.values.size(); ++i)
        CHECK(win.values[i] == doctest::Approx(full.values[i]).epsilon(1e-12));

    CHECK(residual_norm(m, win) < 1e-8 * m.frobenius_norm());

    // same eigenspaces up to phase
    for (std::size_t c = 0; c < 8; ++c) {
        cplx dot = 0.0;
        for (std::size_t i = 0; i < 32; ++i)
            dot += std::conj(full.vectors(i, 12 + c)) * win.vectors(i, c);
        CHECK(std::abs(dot) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("eigh input validation") {
    CHECK_THROWS_AS(eigh(HermitianMatrix(0)), std::invalid_argument);
    HermitianMatrix m = random_hermitian(8, 1);
    CHECK_THROWS_AS(eigh_window(m, 5, 3), std::invalid_argument);
    CHECK_THROWS_AS(eigh_window(m, 0, 9), std::invalid_argument);
}

TEST_CASE("dft is unitary and inverts") {
    for (std::size_t n : {8u, 12u}) {  // radix-2 path and the direct path
        Rng rng(3, n);
        std::vector<cplx> v(n);
        for (auto& x : v) x = cplx(rng.next_gaussian(), rng.next_gaussian());

        auto f = dft(v, +1);
        double n_in = 0.0, n_out = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            n_in += std::norm(v[i]);
            n_out += std::norm(f[i]);
        }
        CHECK(n_out == doctest::Approx(n_in).epsilon(1e-12));

        auto back = dft(f, -1);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(back[i] - v[i]) < 1e-12);
    }
}

TEST_CASE("dft of a delta is flat; single mode maps to a delta") {
    const std::size_t n = 16;
    std::vector<cplx> delta(n, 0.0);
    delta[0] = 1.0;
    auto f = dft(delta, +1);
    for (std::size_t p = 0; p < n; ++p)
        CHECK(std::abs(f[p] - 1.0 / std::sqrt(16.0)) < 1e-12);

    // v_j = exp(-2 pi i 3 j / n) / sqrt(n) concentrates on p = 3 under sign +1
    std::vector<cplx> mode(n);
    for (std::size_t j = 0; j < n; ++j)
        mode[j] = std::polar(1.0 / std::sqrt(16.0),
                             -2.0 * std::numbers::pi * 3.0 * static_cast<double>(j) / 16.0);
    auto g = dft(mode, +1);
    CHECK(std::abs(g[3] - 1.0) < 1e-12);
    for (std::size_t p = 0; p < n; ++p)
        if (p != 3) CHECK(std::abs(g[p]) < 1e-12);
}

TEST_CASE("singular values and rank") {
    CMatrix a(2, 2);
    a(0, 0) = 3.0;
    a(1, 1) = 4.0;
    auto sv = singular_values(a);
    CHECK(sv[0] == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(sv[1] == doctest::Approx(3.0).epsilon(1e-14));

    CMatrix zero(3, 3);
    CHECK(numerical_rank(zero, default_rank_tol(3, 3)) == 0);
    CHECK(null_space_dim(zero, default_rank_tol(3, 3)) == 3);

    // rank-1 outer product
    Rng rng(9, 0);
    CMatrix outer(5, 4);
    std::vector<cplx> u(5), w(4);
    for (auto& x : u) x = cplx(rng.next_gaussian(), rng.next_gaussian());
    for (auto& x : w) x = cplx(rng.next_gaussian(), rng.next_gaussian());
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 4; ++j) outer(i, j) = u[i] * w[j];
    CHECK(numerical_rank(outer, default_rank_tol(5, 4)) == 1);

    // cross-check against sqrt(eig(A^dagger A)) on a random complex matrix
    CMatrix r(5, 5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) r(i, j) = cplx(rng.next_gaussian(), rng.next_gaussian());
    CMatrix gram(5, 5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < 5; ++k) acc += std::conj(r(k, i)) * r(k, j);
            gram(i, j) = acc;
        }
    auto ev = eigh(HermitianMatrix::symmetrized(gram)).values;
    auto sv2 = singular_values(r);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(sv2[i] == doctest::Approx(std::sqrt(std::max(0.0, ev[4 - i]))).epsilon(1e-10));
}

TEST_CASE("first Toeplitz displacement column space has rank 2") {
    // D = T - Z T Z^T built by hand for a random Hermitian Toeplitz input
    HermitianMatrix t = generate({EnsembleKind::ToeplitzComplex, 8, 11, 0});
    CMatrix d(8, 8);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            d(i, j) = t(i, j) - ((i > 0 && j > 0) ? t(i - 1, j - 1) : cplx(0.0));
    CHECK(numerical_rank(d, default_rank_tol(8, 8)) == 2);
}
