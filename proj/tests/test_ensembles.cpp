#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "core/ensembles.hpp"

using namespace strmat;

namespace {

constexpr EnsembleKind kAll[] = {
    EnsembleKind::ToeplitzReal,     EnsembleKind::ToeplitzComplex,
    EnsembleKind::Hankel,           EnsembleKind::THSpecialPlus,
    EnsembleKind::THSpecialMinus,   EnsembleKind::THIndependentReal,
    EnsembleKind::THIndependentComplex, EnsembleKind::GOE,
    EnsembleKind::GUE,
};

double mean_tr2_over_n(EnsembleKind kind, std::size_t n, std::size_t m) {
    double acc = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
        HermitianMatrix mat = generate({kind, n, 99, r});
        double tr2 = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) tr2 += std::norm(mat(i, j));
        acc += tr2 / static_cast<double>(n);
    }
    return acc / static_cast<double>(m);
}

}  // namespace

TEST_CASE("members are exactly Hermitian") {
    for (EnsembleKind kind : kAll) {
        HermitianMatrix m = generate({kind, 16, 5, 3});
        for (std::size_t i = 0; i < 16; ++i) {
            CHECK(m(i, i).imag() == 0.0);
            for (std::size_t j = 0; j < i; ++j) CHECK(m(i, j) == std::conj(m(j, i)));
        }
    }
}

TEST_CASE("structure: constant diagonals / antidiagonals") {
    HermitianMatrix t = generate({EnsembleKind::ToeplitzComplex, 12, 1, 0});
    for (std::size_t i = 1; i < 12; ++i)
        for (std::size_t j = 1; j < 12; ++j) CHECK(t(i, j) == t(i - 1, j - 1));

    HermitianMatrix h = generate({EnsembleKind::Hankel, 12, 1, 0});
    for (std::size_t i = 1; i < 12; ++i)
        for (std::size_t j = 0; j + 1 < 12; ++j) CHECK(h(i, j) == h(i - 1, j + 1));

    // T+H obeys the mixed difference identity: the Toeplitz part cancels
    // along diagonals, the Hankel part along antidiagonals
    HermitianMatrix th = generate({EnsembleKind::THIndependentComplex, 12, 1, 0});
    for (std::size_t i = 2; i < 12; ++i)
        for (std::size_t j = 1; j + 1 < 12; ++j)
            CHECK(std::abs(th(i, j) - th(i - 1, j - 1) - th(i - 1, j + 1) + th(i - 2, j)) <
                  1e-12);
}

TEST_CASE("real families are real") {
    for (EnsembleKind kind : {EnsembleKind::ToeplitzReal, EnsembleKind::Hankel,
                              EnsembleKind::THSpecialPlus, EnsembleKind::THSpecialMinus,
                              EnsembleKind::THIndependentReal, EnsembleKind::GOE}) {
        CHECK(!is_complex_hermitian(kind));
        HermitianMatrix m = generate({kind, 10, 2, 1});
        for (std::size_t i = 0; i < 10; ++i)
            for (std::size_t j = 0; j < 10; ++j) CHECK(m(i, j).imag() == 0.0);
    }
    for (EnsembleKind kind : {EnsembleKind::ToeplitzComplex, EnsembleKind::THIndependentComplex,
                              EnsembleKind::GUE})
        CHECK(is_complex_hermitian(kind));
}

TEST_CASE("second spectral moment tracks the family variance") {
    const std::size_t n = 32, m = 600;
    // <Tr M^2>/N in units of N
    CHECK(mean_tr2_over_n(EnsembleKind::ToeplitzReal, n, m) ==
          doctest::Approx(1.0 * n).epsilon(0.08));
    CHECK(mean_tr2_over_n(EnsembleKind::ToeplitzComplex, n, m) ==
          doctest::Approx(2.0 * n).epsilon(0.08));
    CHECK(mean_tr2_over_n(EnsembleKind::Hankel, n, m) == doctest::Approx(1.0 * n).epsilon(0.08));
    CHECK(mean_tr2_over_n(EnsembleKind::THIndependentReal, n, m) ==
          doctest::Approx(2.0 * n).epsilon(0.08));
    CHECK(mean_tr2_over_n(EnsembleKind::THIndependentComplex, n, m) ==
          doctest::Approx(3.0 * n).epsilon(0.08));
}

TEST_CASE("element moments of the complex Toeplitz coefficients") {
    const std::size_t m = 4000;
    double mean_re = 0.0, mean_im = 0.0, var_re = 0.0, var_im = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
        HermitianMatrix mat = generate({EnsembleKind::ToeplitzComplex, 6, 17, r});
        const cplx t2 = mat(2, 0);
        mean_re += t2.real();
        mean_im += t2.imag();
        var_re += t2.real() * t2.real();
        var_im += t2.imag() * t2.imag();
    }
    const double md = static_cast<double>(m);
    CHECK(std::abs(mean_re / md) < 0.07);
    CHECK(std::abs(mean_im / md) < 0.07);
    CHECK(var_re / md == doctest::Approx(1.0).epsilon(0.10));
    CHECK(var_im / md == doctest::Approx(1.0).epsilon(0.10));
}

TEST_CASE("determinism and stream independence") {
    HermitianMatrix a = generate({EnsembleKind::GUE, 8, 123, 4});
    HermitianMatrix b = generate({EnsembleKind::GUE, 8, 123, 4});
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) CHECK(a(i, j) == b(i, j));

    HermitianMatrix c = generate({EnsembleKind::GUE, 8, 123, 5});
    bool differs = false;
    for (std::size_t i = 0; i < 8 && !differs; ++i)
        for (std::size_t j = 0; j < 8 && !differs; ++j) differs = a(i, j) != c(i, j);
    CHECK(differs);

    HermitianMatrix d = generate({EnsembleKind::GUE, 8, 124, 4});
    differs = false;
    for (std::size_t i = 0; i < 8 && !differs; ++i)
        for (std::size_t j = 0; j < 8 && !differs; ++j) differs = a(i, j) != d(i, j);
    CHECK(differs);
}

TEST_CASE("parameter counts per family") {
    CHECK(parameter_count(EnsembleKind::ToeplitzReal, 1) == 3);
    CHECK(parameter_count(EnsembleKind::ToeplitzComplex, 1) == 5);
    CHECK(parameter_count(EnsembleKind::Hankel, 1) == 7);
    CHECK(parameter_count(EnsembleKind::THSpecialPlus, 1) == 6);
    CHECK(parameter_count(EnsembleKind::THSpecialMinus, 1) == 6);
    CHECK(parameter_count(EnsembleKind::THIndependentReal, 1) == 8);
    CHECK(parameter_count(EnsembleKind::THIndependentComplex, 1) == 10);
    CHECK(parameter_count(EnsembleKind::GOE, 1) == 6);
    CHECK(parameter_count(EnsembleKind::GUE, 1) == 9);

    for (std::size_t n = 0; n <= 5; ++n) {
        CHECK(parameter_count(EnsembleKind::ToeplitzComplex, n) == 2 * n + 3);
        CHECK(parameter_count(EnsembleKind::Hankel, n) == 4 * n + 3);
        CHECK(parameter_count(EnsembleKind::THIndependentComplex, n) == 4 * n + 6);
    }
}

TEST_CASE("names round-trip; invalid input throws") {
    for (EnsembleKind kind : kAll) CHECK(ensemble_from_name(ensemble_name(kind)) == kind);
    CHECK_THROWS_AS(ensemble_from_name("not-an-ensemble"), std::invalid_argument);
    CHECK_THROWS_AS(generate({EnsembleKind::GOE, 1, 0, 0}), std::invalid_argument);
}
