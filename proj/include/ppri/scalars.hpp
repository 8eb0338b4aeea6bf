#pragma once

#include "ppri/rational.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ppri {

inline constexpr int kDefaultPrecision = 32;

// A prime validated once, at construction, by trial division.
class Prime {
public:
    explicit Prime(std::int64_t p);

    std::uint32_t value() const noexcept { return p_; }
    Integer as_integer() const { return Integer(static_cast<unsigned long>(p_)); }

    friend bool operator==(Prime, Prime) = default;
    friend auto operator<=>(Prime, Prime) = default;

private:
    std::uint32_t p_;
};

bool is_prime(std::int64_t n);

// Exponent of p in a rational, or +infinity for zero.
class Valuation {
public:
    static Valuation infinity() { return Valuation(); }
    static Valuation finite(long v) { return Valuation(v); }

    bool is_infinite() const noexcept { return !value_.has_value(); }
    // Precondition: finite.
    long value() const { return *value_; }

    friend bool operator==(const Valuation&, const Valuation&) = default;
    // +infinity compares above every finite valuation.
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.is_infinite()) return false;
        if (b.is_infinite()) return true;
        return a.value() < b.value();
    }

    std::string to_string() const;

private:
    Valuation() = default;
    explicit Valuation(long v) : value_(v) {}
    std::optional<long> value_;
};

Valuation vp(const Rational& x, Prime p);
// Factor of p removed from an integer: returns k with z = p^k * u, p not dividing u.
unsigned long vp_integer(const Integer& z, Prime p, Integer* unit = nullptr);
// p^{-vp(x)} exactly; 0 for x = 0.
Rational abs_p(const Rational& x, Prime p);

// Truncated p-adic number p^v * (d_0 + d_1 p + ... + d_{N-1} p^{N-1}), known
// modulo p^{v+N}. Digits are least significant first and d_0 != 0. Zero is
// exact: infinite valuation, no digits.
class PAdic {
public:
    static PAdic zero(Prime p, int precision = kDefaultPrecision);
    // Builds from a unit u (p does not divide u) reduced mod p^precision.
    static PAdic from_unit(Prime p, long valuation, const Integer& unit, int precision);

    Prime prime() const noexcept { return prime_; }
    const Valuation& valuation() const noexcept { return valuation_; }
    const std::vector<std::uint32_t>& digits() const noexcept { return digits_; }
    int precision() const noexcept { return precision_; }
    bool is_zero() const noexcept { return valuation_.is_infinite(); }

    // Sum d_i p^i, in [0, p^N).
    Integer unit() const;
    // v + N; meaningless for zero (which is exact).
    long absolute_precision() const { return valuation_.value() + precision_; }
    // The rational p^v * unit(): a representative of the known residue class.
    Rational representative() const;

    // "p=3 v=0 digits=[1,2,0,2] (N=4)"
    std::string to_string() const;

    friend bool operator==(const PAdic&, const PAdic&) = default;

private:
    PAdic(Prime p, Valuation v, std::vector<std::uint32_t> digits, int precision)
        : prime_(p), valuation_(v), digits_(std::move(digits)), precision_(precision) {}

    Prime prime_;
    Valuation valuation_;
    std::vector<std::uint32_t> digits_;
    int precision_;
};

PAdic padic_from_rational(const Rational& x, Prime p, int precision = kDefaultPrecision);

enum class PAdicOp { add, sub, mul, div };

// Precision tracking: add/sub keep the smaller absolute precision and throw
// PrecisionExhausted if cancellation leaves no certain digit; mul/div keep the
// smaller relative precision.
PAdic padic_arith(PAdicOp op, const PAdic& a, const PAdic& b);
PAdic operator+(const PAdic& a, const PAdic& b);
PAdic operator-(const PAdic& a, const PAdic& b);
PAdic operator*(const PAdic& a, const PAdic& b);
PAdic operator/(const PAdic& a, const PAdic& b);
PAdic operator-(const PAdic& a);

// |x|_p as an exact rational.
Rational abs_p(const PAdic& x);

inline constexpr std::uint64_t kBallBudget = 1'000'000;

// Residues 0..p^n-1; the balls |x - r|_p <= p^{-n} around them partition Z_p.
std::vector<Rational> ball_decomposition(Prime p, unsigned n);
// The residue r in [0, p^n) whose ball contains x. Requires |x|_p <= 1.
Integer ball_of(const Rational& x, Prime p, unsigned n);

using Complex = std::complex<double>;

double cx_abs(Complex z);
Complex cx_conj(Complex z);
void require_finite(Complex z);

// 0 when x == y, else rho[n-1] with n the 1-based index of the first
// disagreement. rho must be positive and strictly decreasing.
double sequence_ultrametric(std::span<const std::int64_t> x, std::span<const std::int64_t> y,
                            std::span<const double> rho);
// rho_l = 2^{-l}, l = 1..length.
std::vector<double> default_rho(std::size_t length);

// Modular inverse of a unit modulo m (m > 1).
Integer inverse_mod(const Integer& a, const Integer& m);

} // namespace ppri
