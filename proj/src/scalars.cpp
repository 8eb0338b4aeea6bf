#include "ppri/scalars.hpp"

#include "ppri/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ppri {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

Prime::Prime(std::int64_t p) {
    if (p >= (std::int64_t{1} << 31) || !is_prime(p))
        fail(ErrorKind::NonPrimeModulus, std::to_string(p) + " is not a prime below 2^31");
    p_ = static_cast<std::uint32_t>(p);
}

std::string Valuation::to_string() const { return is_infinite() ? "inf" : std::to_string(value()); }

unsigned long vp_integer(const Integer& z, Prime p, Integer* unit) {
    if (z == 0) fail(ErrorKind::DomainError, "valuation of zero is infinite");
    Integer u;
    const unsigned long k = mpz_remove(u.get_mpz_t(), z.get_mpz_t(), p.as_integer().get_mpz_t());
    if (unit) *unit = u;
    return k;
}

Valuation vp(const Rational& x, Prime p) {
    if (x == 0) return Valuation::infinity();
    const auto up = static_cast<long>(vp_integer(x.get_num(), p));
    const auto down = static_cast<long>(vp_integer(x.get_den(), p));
    return Valuation::finite(up - down);
}

Rational abs_p(const Rational& x, Prime p) {
    const auto v = vp(x, p);
    if (v.is_infinite()) return Rational(0);
    return pow(Rational(p.as_integer()), -v.value());
}

Integer inverse_mod(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        fail(ErrorKind::DivisionByZero, to_string(a) + " is not invertible mod " + to_string(m));
    return r;
}

namespace {

Integer modulus(Prime p, long exponent) { return pow(p.as_integer(), static_cast<unsigned long>(exponent)); }

Integer reduce(const Integer& z, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), z.get_mpz_t(), m.get_mpz_t());
    return r;
}

} // namespace

PAdic PAdic::zero(Prime p, int precision) {
    if (precision < 1) fail(ErrorKind::DomainError, "precision must be at least 1");
    return PAdic(p, Valuation::infinity(), {}, precision);
}

PAdic PAdic::from_unit(Prime p, long valuation, const Integer& unit, int precision) {
    if (precision < 1) fail(ErrorKind::DomainError, "precision must be at least 1");
    Integer u = reduce(unit, modulus(p, precision));
    if (u % p.value() == 0) fail(ErrorKind::InternalError, "p-adic unit divisible by p");
    std::vector<std::uint32_t> digits;
    digits.reserve(static_cast<std::size_t>(precision));
    const Integer base = p.as_integer();
    for (int i = 0; i < precision; ++i) {
        Integer d;
        mpz_fdiv_qr(u.get_mpz_t(), d.get_mpz_t(), u.get_mpz_t(), base.get_mpz_t());
        digits.push_back(static_cast<std::uint32_t>(d.get_ui()));
    }
    return PAdic(p, Valuation::finite(valuation), std::move(digits), precision);
}

Integer PAdic::unit() const {
    Integer u = 0;
    const Integer base = prime_.as_integer();
    for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) u = u * base + *it;
    return u;
}

Rational PAdic::representative() const {
    if (is_zero()) return Rational(0);
    return Rational(unit()) * pow(Rational(prime_.as_integer()), valuation_.value());
}

std::string PAdic::to_string() const {
    std::string s = "p=" + std::to_string(prime_.value()) + " v=" + valuation_.to_string() + " digits=[";
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(digits_[i]);
    }
    s += "] (N=" + std::to_string(precision_) + ")";
    return s;
}

PAdic padic_from_rational(const Rational& x, Prime p, int precision) {
    if (x == 0) return PAdic::zero(p, precision);
    Integer m, n;
    const auto up = static_cast<long>(vp_integer(x.get_num(), p, &m));
    const auto down = static_cast<long>(vp_integer(x.get_den(), p, &n));
    const Integer mod = modulus(p, precision);
    return PAdic::from_unit(p, up - down, m * inverse_mod(n, mod), precision);
}

namespace {

void require_same_prime(const PAdic& a, const PAdic& b) {
    if (a.prime() != b.prime())
        fail(ErrorKind::PrimeMismatch, "p-adic operands over p=" + std::to_string(a.prime().value()) +
                                           " and p=" + std::to_string(b.prime().value()));
}

PAdic add_impl(const PAdic& a, const PAdic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const Prime p = a.prime();
    const long va = a.valuation().value();
    const long vb = b.valuation().value();
    const long low = std::min(va, vb);
    const long absolute = std::min(a.absolute_precision(), b.absolute_precision());
    const Integer mod = modulus(p, absolute - low);
    const Integer sum = reduce(a.unit() * modulus(p, va - low) + b.unit() * modulus(p, vb - low), mod);
    if (sum == 0)
        fail(ErrorKind::PrecisionExhausted,
             "cancellation leaves no certain digit below p^" + std::to_string(absolute));
    Integer unit;
    const auto shift = static_cast<long>(vp_integer(sum, p, &unit));
    const long v = low + shift;
    return PAdic::from_unit(p, v, unit, static_cast<int>(absolute - v));
}

} // namespace

PAdic operator-(const PAdic& a) {
    if (a.is_zero()) return a;
    return PAdic::from_unit(a.prime(), a.valuation().value(), -a.unit(), a.precision());
}

PAdic padic_arith(PAdicOp op, const PAdic& a, const PAdic& b) {
    require_same_prime(a, b);
    switch (op) {
    case PAdicOp::add: return add_impl(a, b);
    case PAdicOp::sub: return add_impl(a, -b);
    case PAdicOp::mul: {
        const int n = std::min(a.precision(), b.precision());
        if (a.is_zero() || b.is_zero()) return PAdic::zero(a.prime(), n);
        return PAdic::from_unit(a.prime(), a.valuation().value() + b.valuation().value(), a.unit() * b.unit(), n);
    }
    case PAdicOp::div: {
        if (b.is_zero()) fail(ErrorKind::DivisionByZero, "p-adic division by zero");
        const int n = std::min(a.precision(), b.precision());
        if (a.is_zero()) return PAdic::zero(a.prime(), n);
        const Integer inv = inverse_mod(b.unit(), modulus(a.prime(), n));
        return PAdic::from_unit(a.prime(), a.valuation().value() - b.valuation().value(), a.unit() * inv, n);
    }
    }
    fail(ErrorKind::InternalError, "unknown p-adic operation");
}

PAdic operator+(const PAdic& a, const PAdic& b) { return padic_arith(PAdicOp::add, a, b); }
PAdic operator-(const PAdic& a, const PAdic& b) { return padic_arith(PAdicOp::sub, a, b); }
PAdic operator*(const PAdic& a, const PAdic& b) { return padic_arith(PAdicOp::mul, a, b); }
PAdic operator/(const PAdic& a, const PAdic& b) { return padic_arith(PAdicOp::div, a, b); }

Rational abs_p(const PAdic& x) {
    if (x.is_zero()) return Rational(0);
    return pow(Rational(x.prime().as_integer()), -x.valuation().value());
}

std::vector<Rational> ball_decomposition(Prime p, unsigned n) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < n; ++i) {
        count *= p.value();
        if (count > kBallBudget)
            fail(ErrorKind::BudgetExceeded, "p^n exceeds the budget of " + std::to_string(kBallBudget) + " balls");
    }
    std::vector<Rational> residues;
    residues.reserve(count);
    for (std::uint64_t r = 0; r < count; ++r) residues.emplace_back(static_cast<unsigned long>(r));
    return residues;
}

Integer ball_of(const Rational& x, Prime p, unsigned n) {
    if (abs_p(x, p) > 1) fail(ErrorKind::DomainError, "|x|_p > 1: x is not in Z_p");
    const Integer mod = modulus(p, n);
    return reduce(x.get_num() * inverse_mod(x.get_den(), mod), mod);
}

void require_finite(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        fail(ErrorKind::NonFiniteInput, "complex input has a non-finite component");
}

double cx_abs(Complex z) {
    require_finite(z);
    return std::hypot(z.real(), z.imag());
}

Complex cx_conj(Complex z) {
    require_finite(z);
    return {z.real(), -z.imag()};
}

std::vector<double> default_rho(std::size_t length) {
    std::vector<double> rho(length);
    for (std::size_t l = 0; l < length; ++l) rho[l] = std::ldexp(1.0, -static_cast<int>(l + 1));
    return rho;
}

double sequence_ultrametric(std::span<const std::int64_t> x, std::span<const std::int64_t> y,
                            std::span<const double> rho) {
    if (x.size() != y.size()) fail(ErrorKind::LengthMismatch, "sequences differ in length");
    if (rho.size() < x.size()) fail(ErrorKind::LengthMismatch, "rho is shorter than the sequences");
    for (std::size_t l = 0; l < rho.size(); ++l) {
        if (!(rho[l] > 0.0) || !std::isfinite(rho[l]))
            fail(ErrorKind::NonDecreasingRho, "rho entries must be positive and finite");
        if (l > 0 && !(rho[l] < rho[l - 1]))
            fail(ErrorKind::NonDecreasingRho, "rho is not strictly decreasing at index " + std::to_string(l + 1));
    }
    const auto mismatch = std::mismatch(x.begin(), x.end(), y.begin());
    if (mismatch.first == x.end()) return 0.0;
    return rho[static_cast<std::size_t>(mismatch.first - x.begin())];
}

} // namespace ppri
