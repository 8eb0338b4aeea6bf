#include "ppri/error.hpp"
#include "ppri/norms.hpp"
#include "ppri/rng.hpp"

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

PExponent P(long a, long b = 1) { return PExponent::finite(make_rational(a, b)); }
const PExponent kInf = PExponent::infinity();

const AxiomReport& axiom(const std::vector<AxiomReport>& rs, const std::string& name) {
    for (const auto& r : rs)
        if (r.axiom == name) return r;
    FAIL("missing axiom " << name);
    return rs.front();
}

} // namespace

TEST_CASE("exponents") {
    CHECK(P(1).conjugate() == kInf);
    CHECK(kInf.conjugate() == P(1));
    CHECK(P(2).conjugate() == P(2));
    CHECK(P(3, 2).conjugate() == P(3));
    CHECK(PExponent::parse("1.5") == P(3, 2));
    CHECK(PExponent::parse("inf") == kInf);
    CHECK(kind_of([] { P(1, 2); }) == ErrorKind::DomainError);
    CHECK(kind_of([] { PExponent::parse("pi"); }) == ErrorKind::ParseError);
    CHECK(P(2) <= kInf);
    CHECK(!(kInf <= P(2)));
}

TEST_CASE("lp norm examples") {
    const std::vector<double> v{3, 4};
    CHECK(lp_norm(v, P(2)) == 5.0);
    CHECK(lp_norm(v, kInf) == 4.0);
    CHECK(lp_norm(std::vector<double>{0, 0}, P(3)) == 0.0);
    const std::vector<Rational> r{make_rational(1, 2), make_rational(-3, 4)};
    CHECK(lp_norm_exact(r, P(1)) == make_rational(5, 4));
    CHECK(lp_norm_exact(r, kInf) == make_rational(3, 4));
    CHECK(l2_norm_squared(r) == make_rational(13, 16));
    CHECK(lp_norm(std::vector<double>{1e300, 1e300}, P(2)) == doctest::Approx(std::sqrt(2.0) * 1e300));
}

TEST_CASE("comparison constants") {
    CHECK(comparison_constant(4, P(1), P(2)) == doctest::Approx(2.0));
    CHECK(comparison_constant(7, P(3), P(3)) == 1.0);
    CHECK(comparison_constant(9, P(2), kInf) == doctest::Approx(3.0));
    CHECK(kind_of([] { comparison_constant(3, P(3), P(2)); }) == ErrorKind::OrderViolation);
}

TEST_CASE("holder pairing") {
    const auto eq = holder_pairing(std::vector<double>{1, 1}, std::vector<double>{1, 1}, P(2));
    CHECK(eq.pairing == 2.0);
    CHECK(eq.bound == doctest::Approx(2.0));
    const auto r = holder_pairing(std::vector<double>{1, 2}, std::vector<double>{3, 1}, P(1));
    CHECK(r.pairing == 5.0);
    CHECK(r.bound == 9.0);
    CHECK(kind_of([] { holder_pairing(std::vector<double>{1}, std::vector<double>{1, 2}, P(2)); }) ==
          ErrorKind::DimensionMismatch);
}

TEST_CASE("dual norm examples") {
    const auto a = dual_norm(std::vector<double>{1, -2}, P(1));
    CHECK(a.value == 2.0);
    CHECK(a.witness == std::vector<double>{0, -1});
    const auto b = dual_norm(std::vector<double>{3, 4}, P(2));
    CHECK(b.value == doctest::Approx(5.0));
    CHECK(b.witness[0] == doctest::Approx(0.6));
    CHECK(b.witness[1] == doctest::Approx(0.8));
    const auto z = dual_norm(std::vector<double>{0, 0}, P(3));
    CHECK(z.value == 0.0);
    CHECK(z.degenerate);
    CHECK(lp_norm(z.witness, P(3)) == 1.0);
}

TEST_CASE("property: norm comparisons, Holder and dual witnesses") {
    Rng rng(31);
    const PExponent ps[] = {P(1), P(3, 2), P(2), P(3), kInf};
    for (int t = 0; t < 1000; ++t) {
        const auto n = static_cast<std::size_t>(rng.integer(1, 16));
        std::vector<double> v(n), w(n);
        for (auto& x : v) x = rng.normal();
        for (auto& x : w) x = rng.normal() * 10;
        const PExponent& p = ps[rng.integer(0, 4)];
        const PExponent& q = ps[rng.integer(0, 4)];
        const PExponent& lo = p <= q ? p : q;
        const PExponent& hi = p <= q ? q : p;
        CHECK(lp_norm(v, hi) <= lp_norm(v, lo) * (1 + 1e-10));
        CHECK(lp_norm(v, lo) <= comparison_constant(n, lo, hi) * lp_norm(v, hi) * (1 + 1e-10));

        const auto h = holder_pairing(v, w, p);
        CHECK(std::fabs(h.pairing) <= h.bound * (1 + 1e-12));
        CHECK(h.young_holds);

        const auto d = dual_norm(w, p);
        double lambda = 0.0;
        for (std::size_t i = 0; i < n; ++i) lambda += d.witness[i] * w[i];
        CHECK(lambda >= (1 - 1e-10) * d.value);
        CHECK(lp_norm(d.witness, p) <= 1 + 1e-10);
        // Dual of the dual exponent recovers ||w||_p.
        CHECK(dual_norm(w, p.conjugate()).value == doctest::Approx(lp_norm(w, p)).epsilon(1e-12));
    }
}

TEST_CASE("property: exact homogeneity for p in {1, inf} and squared p = 2") {
    Rng rng(32);
    for (int t = 0; t < 300; ++t) {
        std::vector<Rational> v(static_cast<std::size_t>(rng.integer(1, 8)));
        for (auto& x : v) x = rng.rational(100, 100);
        const Rational a = rng.rational(50, 50);
        std::vector<Rational> av;
        for (const auto& x : v) av.push_back(a * x);
        CHECK(lp_norm_exact(av, P(1)) == abs(a) * lp_norm_exact(v, P(1)));
        CHECK(lp_norm_exact(av, kInf) == abs(a) * lp_norm_exact(v, kInf));
        CHECK(l2_norm_squared(av) == a * a * l2_norm_squared(v));
    }
}

TEST_CASE("seminorm axiom checks") {
    const auto l2 = seminorm_axioms_check([](std::span<const double> v) { return lp_norm(v, P(2)); }, 3, 200, 1);
    for (const auto& r : l2) CHECK(r.status == AxiomStatus::pass);

    const double theta = std::sqrt(2.0);
    const auto degenerate =
        seminorm_axioms_check([theta](std::span<const double> v) { return std::fabs(v[0] - theta * v[1]); }, 2, 200, 2);
    CHECK(axiom(degenerate, "homogeneity").status == AxiomStatus::pass);
    CHECK(axiom(degenerate, "triangle").status == AxiomStatus::pass);
    CHECK(axiom(degenerate, "convexity").status == AxiomStatus::pass);
    CHECK(axiom(degenerate, "definiteness").status == AxiomStatus::fail);

    const auto squared = seminorm_axioms_check(
        [](std::span<const double> v) {
            double s = 0.0;
            for (double x : v) s += x * x;
            return s;
        },
        2, 200, 3);
    const auto& tri = axiom(squared, "triangle");
    CHECK(tri.status == AxiomStatus::fail);
    CHECK(tri.counterexample.has_value());
    // Its unit ball is the Euclidean ball, so the midpoint test must not fire.
    CHECK(axiom(squared, "convexity").status == AxiomStatus::pass);
}
