#include "ppri/verify.hpp"

#include "ppri/error.hpp"
#include "ppri/lattice.hpp"
#include "ppri/norms.hpp"
#include "ppri/operators.hpp"
#include "ppri/rng.hpp"
#include "ppri/scalars.hpp"
#include "ppri/series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace ppri {

namespace {

// Tallies trials; keeps the description of the first failure.
class Tally {
public:
    explicit Tally(std::string name) { report_.name = std::move(name); }

    void record(bool ok, const std::function<std::string()>& describe) {
        ++report_.total;
        if (ok)
            ++report_.passed;
        else if (!report_.first_counterexample)
            report_.first_counterexample = describe();
    }

    // A thrown library error counts as a failed trial.
    void run(const std::function<bool()>& trial, const std::function<std::string()>& describe) {
        try {
            record(trial(), describe);
        } catch (const Error& e) {
            record(false, [&] { return describe() + " (" + std::string(e.name()) + ": " + e.what() + ")"; });
        }
    }

    SuiteReport take() { return std::move(report_); }

private:
    SuiteReport report_;
};

std::string join(std::span<const Rational> v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s + ")";
}

SuiteReport ultrametric_suite(std::uint64_t seed) {
    Tally tally("ultrametric");
    Rng rng(seed);
    const std::int64_t primes[] = {2, 3, 5, 7};
    for (int t = 0; t < 10'000; ++t) {
        const Prime p(primes[t % 4]);
        const Rational x = rng.rational(2000, 2000);
        const Rational y = rng.rational(2000, 2000);
        const Rational z = rng.rational(2000, 2000);
        tally.run(
            [&] {
                const Rational ax = abs_p(x, p);
                const Rational ay = abs_p(y, p);
                const Rational mx = std::max(ax, ay);
                const Rational sum = abs_p(Rational(x + y), p);
                bool ok = sum <= mx;
                ok = ok && abs_p(Rational(x * y), p) == ax * ay;
                if (ax != ay) ok = ok && sum == mx;
                const Rational dxz = abs_p(Rational(x - z), p);
                ok = ok && dxz <= std::max(abs_p(Rational(x - y), p), abs_p(Rational(y - z), p));
                return ok;
            },
            [&] {
                return "p=" + std::to_string(p.value()) + " x=" + to_string(x) + " y=" + to_string(y) +
                       " z=" + to_string(z);
            });
    }
    return tally.take();
}

std::vector<Rational> random_terms(Rng& rng, std::size_t max_len) {
    std::vector<Rational> v(static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(max_len))));
    for (auto& x : v) x = rng.rational(20, 20);
    return v;
}

// Nonzero rational with vp >= 1.
Rational divisible_by(Rng& rng, Prime p) {
    std::int64_t den = rng.integer(1, 50);
    while (den % p.value() == 0) ++den;
    std::int64_t num = 0;
    while (num == 0) num = rng.integer(-50, 50);
    return make_rational(Integer(static_cast<long>(num)) * p.as_integer(), Integer(static_cast<long>(den)));
}

SuiteReport cauchy_suite(std::uint64_t seed) {
    Tally tally("cauchy-product");
    Rng rng(seed);
    for (int t = 0; t < 1000; ++t) {
        const auto av = random_terms(rng, 8);
        const auto bv = random_terms(rng, 8);
        const auto cv = random_terms(rng, 8);
        const auto a = CoeffSeq<Rational>::finite(av);
        const auto b = CoeffSeq<Rational>::finite(bv);
        const auto c = CoeffSeq<Rational>::finite(cv);
        const Prime p(std::array<std::int64_t, 3>{2, 3, 5}[t % 3]);
        const Rational x = divisible_by(rng, p);
        const Rational y = divisible_by(rng, p);
        tally.run(
            [&] {
                const std::size_t len = av.size() + bv.size() + cv.size();
                bool ok = cauchy_product(a, b, len).prefix(len) == cauchy_product(b, a, len).prefix(len);
                ok = ok && cauchy_product(cauchy_product(a, b, len), c, len).prefix(len) ==
                               cauchy_product(a, cauchy_product(b, c, len), len).prefix(len);
                Rational sa = 0, sb = 0, sab = 0;
                for (const auto& u : av) sa += u;
                for (const auto& u : bv) sb += u;
                for (const auto& u : cauchy_product(a, b, len).prefix(len)) sab += u;
                ok = ok && sab == sa * sb;

                // Two p-adic geometric series: their product series summed mod
                // p^12 must agree with 1/((1-x)(1-y)).
                const auto tag = ScalarTag::padic(p);
                const auto gx = CoeffSeq<Rational>::streamed([x](std::size_t j) { return pow(x, static_cast<long>(j)); }, tag);
                const auto gy = CoeffSeq<Rational>::streamed([y](std::size_t j) { return pow(y, static_cast<long>(j)); }, tag);
                const long v = std::min(vp(x, p).value(), vp(y, p).value());
                const auto s = sum_padic(cauchy_stream(gx, gy), 12, [v](std::size_t j) { return v * static_cast<long>(j); });
                const Rational expect = 1 / Rational((1 - x) * (1 - y));
                const Rational diff = s.value.representative() - expect;
                return ok && (diff == 0 || vp(diff, p).value() >= 12);
            },
            [&] { return "a=" + join(av) + " b=" + join(bv) + " c=" + join(cv) + " x=" + to_string(x) + " y=" + to_string(y); });
    }
    return tally.take();
}

RealMatrix random_real_matrix(Rng& rng, std::size_t n) {
    RealMatrix t(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t(i, j) = rng.normal();
    return t;
}

std::vector<double> random_real_vector(Rng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.normal();
    return v;
}

SuiteReport schur_suite(std::uint64_t seed) {
    Tally tally("schur");
    Rng rng(seed);
    const PExponent ps[] = {PExponent::finite(Rational(3, 2)), PExponent::finite(2), PExponent::finite(3),
                            PExponent::finite(4)};
    for (int t = 0; t < 1000; ++t) {
        const auto n = static_cast<std::size_t>(rng.integer(1, 6));
        RealMatrix m = random_real_matrix(rng, n);
        m *= rng.uniform(0.5, 1.0) / std::max(opnorm_l1(m), opnorm_linf(m));
        std::vector<std::vector<double>> vs;
        for (int k = 0; k < 4; ++k) vs.push_back(random_real_vector(rng, n));
        std::string where;
        tally.run(
            [&] {
                if (!schur_certificate(m)) return where = "certificate rejected", false;
                for (const auto& p : ps)
                    for (const auto& v : vs) {
                        const double lhs = lp_norm(m * std::span<const double>(v), p);
                        const double rhs = lp_norm(v, p);
                        if (lhs > rhs + 1e-10) {
                            std::ostringstream os;
                            os.precision(17);
                            os << "p=" << p.to_string() << " ||Tv||=" << lhs << " ||v||=" << rhs;
                            where = os.str();
                            return false;
                        }
                    }
                return true;
            },
            [&] { return "trial " + std::to_string(t) + " n=" + std::to_string(n) + ": " + where; });
    }
    return tally.take();
}

SuiteReport schatten_suite(std::uint64_t seed) {
    Tally tally("schatten");
    Rng rng(seed);
    const PExponent ps[] = {PExponent::finite(1), PExponent::finite(Rational(3, 2)), PExponent::finite(2),
                            PExponent::finite(3), PExponent::infinity()};
    for (int t = 0; t < 100; ++t) {
        const auto n = static_cast<std::size_t>(rng.integer(1, 6));
        RealMatrix a = random_real_matrix(rng, n);
        a = (a + a.transpose()) * 0.5;
        const PExponent& p = ps[t % 5];
        std::vector<RealMatrix> bases;
        for (int k = 0; k < 100; ++k) bases.push_back(random_orthonormal_basis(n, rng));
        std::string where;
        tally.run(
            [&] {
                const EigenDecomp e = symmetric_eigen(a);
                if (e.residual > 1e-10) return where = "residual " + std::to_string(e.residual), false;
                const double s = lp_norm(e.eigenvalues, p);
                double trace = 0.0, frob = 0.0, lsum = 0.0, lsq = 0.0;
                for (std::size_t i = 0; i < n; ++i) trace += a(i, i);
                for (double x : a.entries()) frob += x * x;
                for (double l : e.eigenvalues) lsum += l, lsq += l * l;
                if (std::fabs(trace - lsum) > 1e-8 || std::fabs(frob - lsq) > 1e-8)
                    return where = "moment identity", false;
                if (std::fabs(basis_quadratic_lp(a, e.basis, p) - s) > 1e-8) return where = "eigenbasis equality", false;
                for (const auto& w : bases)
                    if (basis_quadratic_lp(a, w, p) > s + 1e-8) return where = "basis bound", false;
                return true;
            },
            [&] { return "trial " + std::to_string(t) + " n=" + std::to_string(n) + " p=" + p.to_string() + ": " + where; });
    }
    return tally.take();
}

// Random element of Z_E with numerator and denominator at most 10^6 in size.
Rational random_ze(Rng& rng, const PrimeSet& e) {
    Integer den = 1;
    for (Prime p : e.primes()) {
        const auto k = static_cast<unsigned long>(rng.integer(0, 4));
        den *= pow(p.as_integer(), k);
    }
    return make_rational(Integer(static_cast<long>(rng.integer(-1'000'000, 1'000'000))), den);
}

PrimeSet random_prime_set(Rng& rng) {
    std::vector<std::int64_t> ps;
    while (ps.empty())
        for (std::int64_t p : {2, 3, 5})
            if (rng.coin()) ps.push_back(p);
    return PrimeSet(ps);
}

// Exact rational with |q - x| tiny, from a double.
Rational to_rational(double x) { return Rational(x); }

SuiteReport lattice_suite(std::uint64_t seed) {
    Tally tally("lattice");
    Rng rng(seed);
    for (int t = 0; t < 1000; ++t) {
        const PrimeSet e = random_prime_set(rng);
        const Rational x = random_ze(rng, e);
        Rational y = random_ze(rng, e);
        if (x == y) y += 1;
        tally.run([&] { return discreteness_gap(x, y, e) >= 1; },
                  [&] { return "gap E=" + e.to_string() + " x=" + to_string(x) + " y=" + to_string(y); });
    }
    for (int t = 0; t < 1000; ++t) {
        const PrimeSet e = random_prime_set(rng);
        const Rational y = random_ze(rng, e);
        std::vector<Rational> w;
        for (std::size_t i = 0; i < e.size(); ++i) w.push_back(rng.rational(1'000'000, 1000));
        tally.run(
            [&] {
                const Covering c = covering_point(y, w, e);
                bool ok = in_ZE(c.x, e) && abs(Rational(c.x - y)) < static_cast<long>(e.size());
                for (std::size_t i = 0; i < e.size(); ++i) ok = ok && abs_p(Rational(c.x - w[i]), e.primes()[i]) <= 1;
                return ok;
            },
            [&] { return "covering E=" + e.to_string() + " y=" + to_string(y) + " w=" + join(w); });
    }
    for (int t = 0; t < 200; ++t) {
        const auto n = static_cast<std::size_t>(rng.integer(1, 4));
        const Rational target = pow(Rational(2), static_cast<long>(n)) * Rational(1001, 1000);
        if (t % 2 == 0) {
            std::vector<Rational> h(n);
            Rational vol = 1;
            for (auto& x : h) x = make_rational(rng.integer(30, 300), 100), vol *= 2 * x;
            if (vol <= target) h[0] *= target / vol * make_rational(1000 + rng.integer(1, 1000), 1000);
            tally.run(
                [&] {
                    const auto pt = minkowski_point(symmetric_box(h), seed);
                    bool nonzero = false;
                    for (std::size_t i = 0; i < n; ++i) {
                        if (!(abs(Rational(pt[i])) < h[i])) return false;
                        nonzero = nonzero || pt[i] != 0;
                    }
                    return nonzero;
                },
                [&] { return "minkowski box halfwidths=" + join(h); });
        } else {
            RationalMatrix l = RationalMatrix::identity(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < i; ++j) l(i, j) = make_rational(rng.integer(-3, 3), 2);
            RationalMatrix d(n);
            for (std::size_t i = 0; i < n; ++i) d(i, i) = make_rational(rng.integer(1, 20), 10);
            RationalMatrix q = l * d * l.transpose();
            const double omega = std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
            // Scale so that omega / sqrt(det(cq)) lands between 1.002 and 2 times 2^n.
            const double det = determinant(q).get_d();
            const double cmax = std::pow(omega / (target.get_d() * 1.001), 2.0 / static_cast<double>(n)) /
                                std::pow(det, 1.0 / static_cast<double>(n));
            q *= to_rational(cmax * rng.uniform(0.6, 0.99));
            tally.run(
                [&] {
                    const ConvexRegion u = ellipsoid_region(q);
                    if (u.volume_lb <= target) return false;
                    const auto pt = minkowski_point(u, seed);
                    Rational s = 0;
                    bool nonzero = false;
                    for (std::size_t i = 0; i < n; ++i) {
                        nonzero = nonzero || pt[i] != 0;
                        for (std::size_t j = 0; j < n; ++j) s += Rational(pt[i]) * q(i, j) * Rational(pt[j]);
                    }
                    return nonzero && s < 1;
                },
                [&] { return "minkowski ellipsoid n=" + std::to_string(n) + " trial " + std::to_string(t); });
        }
    }
    return tally.take();
}

using SuiteFn = SuiteReport (*)(std::uint64_t);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> suites = {
        {"ultrametric", ultrametric_suite}, {"cauchy-product", cauchy_suite}, {"schur", schur_suite},
        {"schatten", schatten_suite},       {"lattice", lattice_suite},
    };
    return suites;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

std::vector<SuiteReport> run_verify(std::string_view name, std::uint64_t seed) {
    std::vector<SuiteReport> out;
    for (const auto& [suite, fn] : registry())
        if (name == "all" || name == suite) out.push_back(fn(seed));
    if (out.empty()) {
        std::string known;
        for (const auto& n : suite_names()) known += n + ", ";
        fail(ErrorKind::UnknownSuite, "unknown suite '" + std::string(name) + "' (known: " + known + "all)");
    }
    return out;
}

} // namespace ppri
