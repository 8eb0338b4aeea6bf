#include "oracles.hpp"

#include "ppri/error.hpp"
#include "ppri/operators.hpp"
#include "ppri/rng.hpp"
#include "ppri/series.hpp"

#include <doctest.h>

#include <cmath>

using namespace ppri;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InternalError;
}

Rational q(long a, long b = 1) { return make_rational(a, b); }

RationalMatrix M(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<std::vector<Rational>> r;
    for (const auto& row : rows) {
        r.emplace_back();
        for (long x : row) r.back().push_back(Rational(x));
    }
    return RationalMatrix::from_rows(r);
}

RationalMatrix random_rational(Rng& rng, std::size_t n, std::int64_t num = 5, std::int64_t den = 3) {
    RationalMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.rational(num, den);
    return m;
}

std::vector<std::vector<Rational>> rows_of(const RationalMatrix& m) {
    std::vector<std::vector<Rational>> r;
    for (std::size_t i = 0; i < m.size(); ++i) r.emplace_back(m.row(i).begin(), m.row(i).end());
    return r;
}

const PExponent kInf = PExponent::infinity();
PExponent P(long a, long b = 1) { return PExponent::finite(make_rational(a, b)); }

} // namespace

TEST_CASE("exact operator norms") {
    const auto t = M({{1, 2}, {3, 4}});
    CHECK(opnorm_l1(t) == 6);
    CHECK(opnorm_linf(t) == 7);
    CHECK(opnorm_l1(RationalMatrix::identity(3)) == 1);
    CHECK(opnorm_l1(RationalMatrix(3)) == 0);
    CHECK(opnorm_linf(M({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})) == 1);
}

TEST_CASE("schur certificate") {
    const auto half = RationalMatrix::from_rows({{q(1, 2), q(1, 2)}, {q(1, 2), q(1, 2)}});
    CHECK(schur_certificate(half));
    CHECK(schur_certificate(RationalMatrix::identity(2)));
    CHECK(!schur_certificate(M({{2, 0}, {0, 0}})));
}

TEST_CASE("operator norm estimates") {
    const RealMatrix d = RealMatrix::diagonal({3.0, -4.0});
    for (const auto& p : {P(1), P(3, 2), P(2), P(3), kInf}) CHECK(opnorm_estimate(d, p, 8, 1) == 4.0);
    CHECK(opnorm_estimate(RealMatrix::identity(2), P(2), 8, 1) == 1.0);
    CHECK(opnorm_estimate(to_real(M({{0, 1}, {0, 0}})), P(2), 8, 1) >= 1.0);
    // The spectral norm of [[1,2],[3,4]] is about 5.4650; a lower bound that is also nearly tight.
    const double est = opnorm_estimate(to_real(M({{1, 2}, {3, 4}})), P(2), 32, 7);
    CHECK(est <= 5.46498570421904 + 1e-12);
    CHECK(est >= 5.46498570421904 - 1e-9);
    CHECK(kind_of([] { opnorm_estimate(RealMatrix::identity(2), P(2), 0, 1); }) == ErrorKind::PreconditionViolation);
}

TEST_CASE("symmetric eigen examples") {
    const auto e = symmetric_eigen(RealMatrix::diagonal({3.0, -4.0}));
    CHECK(e.eigenvalues == std::vector<double>{3.0, -4.0});
    CHECK(std::fabs(e.basis(0, 0)) == 1.0);
    const auto s = symmetric_eigen(to_real(M({{0, 1}, {1, 0}})));
    CHECK(s.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(s.eigenvalues[1] == doctest::Approx(-1.0));
    CHECK(s.residual <= 1e-12);
    CHECK(kind_of([] { symmetric_eigen(to_real(M({{0, 1}, {0, 0}}))); }) == ErrorKind::NotSelfAdjoint);
}

TEST_CASE("schatten norms and the basis maximum") {
    const RealMatrix d = RealMatrix::diagonal({3.0, -4.0});
    CHECK(schatten_norm(d, P(1)) == doctest::Approx(7.0));
    CHECK(schatten_norm(d, P(2)) == doctest::Approx(5.0));
    CHECK(schatten_norm(d, kInf) == doctest::Approx(4.0));
    CHECK(schatten_norm(RealMatrix::identity(2), P(3)) == doctest::Approx(std::pow(2.0, 1.0 / 3.0)));
    CHECK(schatten_norm(RealMatrix(3), P(2)) == 0.0);

    CHECK(basis_quadratic_lp(d, symmetric_eigen(d).basis, P(1)) == doctest::Approx(7.0));
    Rng rng(41);
    CHECK(basis_quadratic_lp(RealMatrix::identity(2), random_orthonormal_basis(2, rng), P(1)) == doctest::Approx(2.0));
    CHECK(basis_quadratic_lp(to_real(M({{0, 1}, {1, 0}})), RealMatrix::identity(2), P(1)) == 0.0);
    CHECK(kind_of([&] { basis_quadratic_lp(d, RealMatrix::diagonal({1.0, 2.0}), P(1)); }) == ErrorKind::NotOrthonormal);
}

TEST_CASE("property: schatten bound over random bases, eigen residuals, moments") {
    Rng rng(42);
    const PExponent ps[] = {P(1), P(2), P(3), kInf};
    for (int t = 0; t < 60; ++t) {
        const auto n = static_cast<std::size_t>(rng.integer(1, 6));
        RealMatrix a(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = rng.normal();
        const auto e = symmetric_eigen(a);
        CHECK(e.residual <= 1e-10);
        double tr = 0, fr = 0, s1 = 0, s2 = 0;
        for (std::size_t i = 0; i < n; ++i) tr += a(i, i);
        for (double x : a.entries()) fr += x * x;
        for (double l : e.eigenvalues) s1 += l, s2 += l * l;
        CHECK(std::fabs(tr - s1) <= 1e-8 * std::max(1.0, std::fabs(tr)));
        CHECK(std::fabs(fr - s2) <= 1e-8 * std::max(1.0, fr));
        CHECK(std::is_sorted(e.eigenvalues.rbegin(), e.eigenvalues.rend()));
        const PExponent& p = ps[t % 4];
        const double s = schatten_norm(a, p);
        CHECK(std::fabs(basis_quadratic_lp(a, e.basis, p) - s) <= 1e-8);
        for (int k = 0; k < 30; ++k) CHECK(basis_quadratic_lp(a, random_orthonormal_basis(n, rng), p) <= s + 1e-8);
    }
}

TEST_CASE("minimal polynomial examples") {
    CHECK(minimal_poly(RationalMatrix::identity(2)).coeffs == std::vector<Rational>{-1, 1});
    CHECK(minimal_poly(M({{0, 1}, {0, 0}})).coeffs == std::vector<Rational>{0, 0, 1});
    CHECK(minimal_poly(M({{0, 1}, {1, 0}})).coeffs == std::vector<Rational>{-1, 0, 1});
    CHECK(inverse_via_powers(M({{0, 1}, {1, 0}})) == M({{0, 1}, {1, 0}}));
    CHECK(inverse_via_powers(RationalMatrix::identity(3)) == RationalMatrix::identity(3));
    CHECK(kind_of([] { inverse_via_powers(M({{0, 1}, {0, 0}})); }) == ErrorKind::Singular);
}

TEST_CASE("property: minimal polynomial annihilates, is minimal, and inverts") {
    Rng rng(43);
    for (int t = 0; t < 200; ++t) {
        const auto n = static_cast<std::size_t>(rng.integer(1, 5));
        RationalMatrix m = random_rational(rng, n);
        if (t % 4 == 0) m(0, 0) = m(n - 1, 0) = 0;
        if (t % 5 == 0)
            for (std::size_t j = 0; j < n; ++j) m(n - 1, j) = m(0, j);
        const MinPoly mu = minimal_poly(m);
        CHECK(mu.coeffs.back() == 1);
        CHECK(mu.degree() <= n);
        CHECK(poly_eval_in_algebra(mu.coeffs, m) == RationalMatrix(n));
        // I, T, ..., T^{l-1} are independent: rank of the flattened powers is l.
        std::vector<std::vector<Rational>> powers;
        RationalMatrix pw = RationalMatrix::identity(n);
        for (std::size_t k = 0; k < mu.degree(); ++k) {
            powers.push_back(pw.entries());
            pw = pw * m;
        }
        CHECK(oracle::rank(powers) == mu.degree());
        const Rational det = oracle::cofactor_det(rows_of(m));
        CHECK(determinant(m) == det);
        CHECK((mu.coeffs.front() == 0) == (det == 0));
        if (det != 0) CHECK(inverse_via_powers(m) * m == RationalMatrix::identity(n));
    }
}

TEST_CASE("property: operator norm laws") {
    Rng rng(44);
    for (int t = 0; t < 200; ++t) {
        const auto n = static_cast<std::size_t>(rng.integer(1, 4));
        const RationalMatrix a = random_rational(rng, n);
        const RationalMatrix b = random_rational(rng, n);
        CHECK(opnorm_l1(a * b) <= opnorm_l1(a) * opnorm_l1(b));
        CHECK(opnorm_linf(a * b) <= opnorm_linf(a) * opnorm_linf(b));
        if (determinant(a) != 0) {
            const RationalMatrix inv = inverse_via_powers(a);
            CHECK(opnorm_l1(a) * opnorm_l1(inv) >= 1);
            // Perturbations smaller than 1/||a^{-1}|| keep a invertible.
            RationalMatrix pert = random_rational(rng, n, 10, 10);
            const Rational c = 1 / opnorm_l1(inv);
            if (opnorm_l1(pert) != 0) pert *= Rational(c / opnorm_l1(pert) * make_rational(rng.integer(1, 99), 100));
            const RationalMatrix sum = a + pert;
            CHECK(inverse_via_powers(sum) * sum == RationalMatrix::identity(n));
        }
        // Every eigenvalue found among small rationals is bounded by the l1 operator norm.
        for (long num = -6; num <= 6; ++num)
            for (long den = 1; den <= 3; ++den) {
                const Rational alpha = q(num, den);
                if (eigenvalue_check(a, alpha)) CHECK(abs(alpha) <= opnorm_l1(a));
            }
    }
}

TEST_CASE("eigenvalue, unimodular and p-adic isometry checks") {
    const auto swap = M({{0, 1}, {1, 0}});
    CHECK(eigenvalue_check(swap, 1));
    CHECK(!eigenvalue_check(swap, 2));
    CHECK(eigenvalue_check(RationalMatrix::identity(2), 1));
    CHECK(unimodular_check(M({{1, 1}, {0, 1}})));
    CHECK(!unimodular_check(M({{2, 0}, {0, 1}})));
    CHECK(unimodular_check(RationalMatrix::identity(3)));
    CHECK(!unimodular_check(RationalMatrix::from_rows({{q(1, 2), q(0)}, {q(0), q(2)}})));
    CHECK(padic_isometry_check(RationalMatrix::identity(2), Prime(7)));
    CHECK(!padic_isometry_check(M({{2, 0}, {0, 1}}), Prime(2)));
    CHECK(!padic_isometry_check(RationalMatrix::from_rows({{q(1, 2), q(0)}, {q(0), q(2)}}), Prime(2)));
    CHECK(padic_isometry_check(M({{2, 0}, {0, 1}}), Prime(3)));
}

TEST_CASE("determinant") {
    CHECK(determinant(M({{1, 2}, {3, 4}})) == -2);
    CHECK(determinant(RationalMatrix::from_rows({{q(1, 2), q(1, 3)}, {q(1, 4), q(1, 5)}})) == q(1, 60));
    CHECK(determinant(M({{0, 1}, {1, 0}})) == -1);
    CHECK(determinant(M({{1, 2}, {2, 4}})) == 0);
    CHECK(kind_of([] { determinant(RationalMatrix::identity(65)); }) == ErrorKind::BudgetExceeded);
    Rng rng(45);
    for (int t = 0; t < 100; ++t) {
        const RationalMatrix m = random_rational(rng, static_cast<std::size_t>(rng.integer(1, 6)), 9, 7);
        CHECK(determinant(m) == oracle::cofactor_det(rows_of(m)));
    }
}
