// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.

#include "../unit/oracles.hpp"
#include "cli.hpp"

#include "ppri/error.hpp"
#include "ppri/lattice.hpp"
#include "ppri/norms.hpp"
#include "ppri/operators.hpp"
#include "ppri/rng.hpp"
#include "ppri/scalars.hpp"
#include "ppri/series.hpp"
#include "ppri/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace ppri;

namespace {

constexpr std::uint64_t kSeed = 20261015;

// Collects the first failure of a criterion; the rest only count.
class Check {
public:
    void expect(bool ok, const std::function<std::string()>& what) {
        ++total_;
        if (ok) return;
        ++failed_;
        if (first_.empty()) first_ = what();
    }
    void merge(std::size_t passed, std::size_t total, const std::string& first) {
        total_ += total;
        failed_ += total - passed;
        if (first_.empty() && passed != total) first_ = first;
    }
    std::size_t total() const { return total_; }
    std::size_t failed() const { return failed_; }
    const std::string& first() const { return first_; }

private:
    std::size_t total_ = 0, failed_ = 0;
    std::string first_;
};

std::string str(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

bool divides_pn(const Rational& diff, Prime p, long n) { return diff == 0 || vp(diff, p).value() >= n; }

Rational divisible_by(Rng& rng, Prime p) {
    std::int64_t den = rng.integer(1, 60);
    while (den % p.value() == 0) ++den;
    std::int64_t num = 0;
    while (num == 0) num = rng.integer(-60, 60);
    return make_rational(Integer(static_cast<long>(num)) * p.as_integer(), Integer(static_cast<long>(den)));
}

void suite(Check& c, const std::string& name) {
    for (const auto& r : run_verify(name, kSeed))
        c.merge(r.passed, r.total, r.name + " " + r.first_counterexample.value_or("suite failed"));
}

void c1_ultrametric(Check& c) { suite(c, "ultrametric"); }

void c2_expansion(Check& c) {
    Rng rng(kSeed + 2);
    const std::int64_t primes[] = {2, 3, 5, 7};
    for (int t = 0; t < 1000; ++t) {
        const Prime p(primes[t % 4]);
        Integer den = static_cast<long>(rng.integer(1, 1'000'000));
        while (den % p.as_integer() == 0) den /= p.as_integer();
        const Integer num = static_cast<long>(rng.integer(-1'000'000, 1'000'000));
        if (num == 0) continue;
        const Rational x = make_rational(num, den);
        const PAdic a = padic_from_rational(x, p, 32);
        const long v = vp(x, p).value();
        const Integer pn = pow(p.as_integer(), 32ul);
        // Strip p^v from the numerator, then unit = num' * den^{-1} mod p^N.
        Integer stripped = x.get_num();
        for (long k = 0; k < v; ++k) stripped /= p.as_integer();
        const Integer expect = ((stripped * oracle::inverse_mod(x.get_den(), pn)) % pn + pn) % pn;
        Integer from_digits = 0;
        for (auto it = a.digits().rbegin(); it != a.digits().rend(); ++it) from_digits = from_digits * p.value() + *it;
        c.expect(a.valuation().value() == v && a.unit() == expect && from_digits == expect,
                 [&] { return "p=" + std::to_string(p.value()) + " x=" + to_string(x); });
    }
}

void c3_geometric(Check& c) {
    Rng rng(kSeed + 3);
    for (int t = 0; t < 100; ++t) {
        Rational x = rng.rational(999, 1000);
        while (abs(x) >= 1) x = rng.rational(999, 1000);
        c.expect(geometric_sum(x) * (1 - x) == 1, [&] { return "rational x=" + to_string(x); });

        const Prime p(std::array<std::int64_t, 3>{2, 3, 5}[t % 3]);
        const Rational y = divisible_by(rng, p);
        c.expect(geometric_sum_padic(y, p) * (1 - y) == 1, [&] { return "p-adic rational y=" + to_string(y); });
        const PAdic py = padic_from_rational(y, p, 24);
        const PAdic g = geometric_sum(py);
        const PAdic one = padic_from_rational(1, p, 24);
        const PAdic prod = g * (one - py);
        c.expect(divides_pn(prod.representative() - 1, p, prod.absolute_precision()),
                 [&] { return "p-adic y=" + to_string(y); });

        Complex z(rng.uniform(-1, 1), rng.uniform(-1, 1));
        while (std::abs(z) >= 0.999) z = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
        const double err = std::abs(geometric_sum(z) * (1.0 - z) - 1.0);
        c.expect(err <= 1e-12, [&] { return "complex err=" + str(err); });
    }
}

void c4_exponential(Check& c) {
    // 1 + 3 + 9/2 + 27/6 = 13; every later term of E(3) is divisible by 27.
    Rational partial = 0, term = 1;
    for (long k = 0; k < 4; ++k) {
        partial += term;
        term *= Rational(3, k + 1);
    }
    const Integer oracle13 = partial.get_num() * oracle::inverse_mod(partial.get_den(), Integer(27)) % 27;
    const PAdic e3 = exp_padic(Rational(3), Prime(3), 3);
    c.expect(oracle13 == 13 && e3.unit() == 13 && e3.valuation().value() == 0,
             [&] { return "E(3) unit " + to_string(e3.unit()); });

    Rng rng(kSeed + 4);
    for (int t = 0; t < 100; ++t) {
        const Prime p(std::array<std::int64_t, 3>{2, 3, 5}[t % 3]);
        // In-domain: |x|_p < p^{-1/(p-1)}, so v >= 2 for p = 2 and v >= 1 otherwise.
        Rational x = divisible_by(rng, p), y = divisible_by(rng, p);
        if (p.value() == 2) x *= 2, y *= 2;
        const PAdic ex = exp_padic(x, p, 16), ey = exp_padic(y, p, 16), exy = exp_padic(Rational(x + y), p, 16);
        const Rational diff = exy.representative() - Rational(ex.representative() * ey.representative());
        c.expect(divides_pn(diff, p, 16), [&] { return "p=" + std::to_string(p.value()) + " x=" + to_string(x) + " y=" + to_string(y); });
    }
    for (int t = 0; t < 100; ++t) {
        const double s = rng.uniform(-50, 50);
        const double dev = std::fabs(std::abs(exp_complex(Complex(0, s))) - 1.0);
        c.expect(dev <= 1e-10, [&] { return "t=" + str(s) + " ||E(it)|-1|=" + str(dev); });
    }
}

void c5_legendre(Check& c) {
    for (std::int64_t pv : {2, 3, 5, 7, 11, 13}) {
        const Prime p(pv);
        for (std::uint64_t n = 0; n <= 200; ++n)
            c.expect(legendre_vp_factorial(n, p) == oracle::factorial_valuation(n, pv),
                     [&] { return "n=" + std::to_string(n) + " p=" + std::to_string(pv); });
        for (std::uint64_t n = 1; n <= 10'000; ++n)
            c.expect(legendre_vp_factorial(n, p) * static_cast<std::uint64_t>(pv - 1) < n,
                     [&] { return "bound n=" + std::to_string(n) + " p=" + std::to_string(pv); });
    }
}

void c6_cauchy(Check& c) {
    suite(c, "cauchy-product");
    Rng rng(kSeed + 6);
    using CSeq = CoeffSeq<Complex>;
    for (int t = 0; t < 50; ++t) {
        const Complex z(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6));
        const Complex w(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6));
        const Complex ca(rng.normal(), rng.normal()), cb(rng.normal(), rng.normal());
        const auto a = CSeq::streamed([z, ca](std::size_t j) { return ca * std::pow(z, static_cast<int>(j)); });
        const auto b = CSeq::streamed([w, cb](std::size_t j) { return cb * std::pow(w, static_cast<int>(j)); });
        const auto sa = sum_complex(a, 1e-11), sb = sum_complex(b, 1e-11);
        const auto sab = sum_complex(cauchy_stream(a, b), 1e-11, 20000, OnCap::return_uncertified);
        const double err = std::abs(sab.value - sa.value * sb.value);
        c.expect(sab.certified && err <= 1e-9, [&] { return "complex product-of-sums err=" + str(err); });
    }
}

void c7_duality(Check& c) {
    Rng rng(kSeed + 7);
    const PExponent ps[] = {PExponent::finite(1), PExponent::finite(Rational(3, 2)), PExponent::finite(2),
                            PExponent::finite(3), PExponent::infinity()};
    for (int t = 0; t < 1000; ++t) {
        const PExponent& p = ps[t % 5];
        const auto n = static_cast<std::size_t>(rng.integer(1, 16));
        std::vector<double> w(n), v(n);
        for (auto& x : w) x = rng.normal() * std::pow(10.0, rng.integer(-3, 3));
        for (auto& x : v) x = rng.normal();
        const auto d = dual_norm(w, p);
        double attained = 0.0;
        for (std::size_t i = 0; i < n; ++i) attained += d.witness[i] * w[i];
        // The claimed value is ||w||_q for the conjugate exponent q.
        const double claimed = lp_norm(w, p.conjugate());
        const auto h = holder_pairing(v, w, p);
        c.expect(std::fabs(d.value - claimed) <= 1e-12 * claimed && attained >= (1 - 1e-10) * d.value &&
                     lp_norm(d.witness, p) <= 1 + 1e-10 && std::fabs(h.pairing) <= h.bound * (1 + 1e-12),
                 [&] { return "p=" + p.to_string() + " n=" + std::to_string(n); });
    }
}

// max over the extreme points of the unit ball: +-e_j for l1, sign patterns for linf.
std::pair<Rational, Rational> brute_force_opnorms(const RationalMatrix& t) {
    const std::size_t n = t.size();
    Rational best1 = 0, best_inf = 0;
    for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < n; ++i) s += abs(t(i, j));
        best1 = std::max(best1, s);
    }
    for (std::size_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<Rational> v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = (mask >> j) & 1 ? -1 : 1;
        for (const auto& x : t * std::span<const Rational>(v)) best_inf = std::max(best_inf, abs(x));
    }
    return {best1, best_inf};
}

void c8_schur(Check& c) {
    suite(c, "schur");
    Rng rng(kSeed + 8);
    for (int t = 0; t < 1000; ++t) {
        const auto n = static_cast<std::size_t>(rng.integer(1, 5));
        RationalMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.rational(20, 7);
        const auto [b1, binf] = brute_force_opnorms(m);
        c.expect(opnorm_l1(m) == b1 && opnorm_linf(m) == binf, [&] { return "trial " + std::to_string(t); });
    }
}

void c9_schatten(Check& c) { suite(c, "schatten"); }

void c10_minpoly(Check& c) {
    Rng rng(kSeed + 10);
    for (int t = 0; t < 200; ++t) {
        const auto n = static_cast<std::size_t>(rng.integer(1, 5));
        RationalMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.rational(4, 3);
        // A third of the trials get a repeated row (singular) or a scalar matrix (degree 1).
        if (t % 3 == 1 && n > 1)
            for (std::size_t j = 0; j < n; ++j) m(n - 1, j) = m(0, j);
        if (t % 9 == 2) m = RationalMatrix::identity(n) * rng.rational(4, 3);
        const MinPoly mu = minimal_poly(m);
        bool ok = mu.coeffs.back() == 1 && poly_eval_in_algebra(mu.coeffs, m) == RationalMatrix(n);
        std::vector<std::vector<Rational>> powers;
        RationalMatrix pw = RationalMatrix::identity(n);
        for (std::size_t k = 0; k < mu.degree(); ++k) powers.push_back(pw.entries()), pw = pw * m;
        ok = ok && oracle::rank(powers) == mu.degree();
        std::vector<std::vector<Rational>> rows;
        for (std::size_t i = 0; i < n; ++i) rows.emplace_back(m.row(i).begin(), m.row(i).end());
        const bool singular = oracle::cofactor_det(rows) == 0;
        ok = ok && (mu.coeffs.front() == 0) == singular;
        if (!singular) ok = ok && inverse_via_powers(m) * m == RationalMatrix::identity(n);
        c.expect(ok, [&] { return "trial " + std::to_string(t) + " n=" + std::to_string(n); });
    }
}

void c11_lattice(Check& c) { suite(c, "lattice"); }

void c12_cli(Check& c) {
    const auto run = [](std::vector<std::string> args, std::string* out_text = nullptr) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        if (out_text) *out_text = out.str();
        return code;
    };
    std::string first, second, json1, json2;
    c.expect(run({"verify", "all", "--seed", "7"}, &first) == cli::kExitOk, [] { return "verify all exit code"; });
    run({"verify", "all", "--seed", "7"}, &second);
    c.expect(!first.empty() && first == second, [] { return "verify all text output differs between runs"; });
    run({"verify", "all", "--seed", "7", "--json"}, &json1);
    run({"verify", "all", "--seed", "7", "--json"}, &json2);
    c.expect(!json1.empty() && json1 == json2, [] { return "verify all JSON output differs between runs"; });
    c.expect(run({"padic", "expand", "1/4", "--p", "3", "--digits", "4"}) == cli::kExitOk, [] { return "exit 0"; });
    c.expect(run({"series", "exp-padic", "1", "--p", "3"}) == cli::kExitDomain, [] { return "exit 1"; });
    c.expect(run({"verify", "bogus"}) == cli::kExitUsage, [] { return "exit 2 (UnknownSuite)"; });
    c.expect(run({"norm", "dual", "--nope"}) == cli::kExitUsage, [] { return "exit 2 (unknown flag)"; });
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, void (*)(Check&)>> criteria = {
        {"ultrametric suite", c1_ultrametric},
        {"p-adic expansion round trip", c2_expansion},
        {"geometric sums", c3_geometric},
        {"exponentials", c4_exponential},
        {"Legendre formula and bound", c5_legendre},
        {"Cauchy products", c6_cauchy},
        {"norm duality and Holder", c7_duality},
        {"Schur test and exact operator norms", c8_schur},
        {"Schatten norms", c9_schatten},
        {"minimal polynomial", c10_minpoly},
        {"lattice", c11_lattice},
        {"CLI determinism and exit codes", c12_cli},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(c);
        } catch (const Error& e) {
            c.expect(false, [&] { return "uncaught " + std::string(error_name(e.kind())) + ": " + e.what(); });
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool ok = c.failed() == 0 && c.total() > 0;
        failures += ok ? 0 : 1;
        std::ostringstream line;
        line.precision(2);
        line << std::fixed << "criterion " << i + 1 << ": " << (ok ? "PASS" : "FAIL") << " " << criteria[i].first << " ("
             << c.total() - c.failed() << "/" << c.total() << " checks, " << secs << " s)";
        if (!ok) line << " first failure: " << c.first();
        std::cout << line.str() << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << "\n";
    return failures == 0 ? 0 : 1;
}
