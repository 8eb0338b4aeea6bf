#include "ppri/rational.hpp"

#include "ppri/error.hpp"

#include <cctype>
#include <cmath>

namespace ppri {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_signed_digits(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
    if (!is_signed_digits(s)) fail(ErrorKind::ParseError, "not a rational: \"" + std::string(whole) + "\"");
    if (s.front() == '+') s.remove_prefix(1);
    return Integer(std::string(s), 10);
}

} // namespace

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) fail(ErrorKind::DivisionByZero, "zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational parse_rational(std::string_view text) {
    const auto s = trim(text);
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(s, text));
    const Integer num = parse_integer(trim(s.substr(0, slash)), text);
    const Integer den = parse_integer(trim(s.substr(slash + 1)), text);
    if (den == 0) fail(ErrorKind::ParseError, "zero denominator in \"" + std::string(text) + "\"");
    return make_rational(num, den);
}

Rational parse_exact_decimal(std::string_view text) {
    const auto s = trim(text);
    const auto dot = s.find('.');
    if (dot == std::string_view::npos || s.find('/') != std::string_view::npos) return parse_rational(s);
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    bool negative = false;
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
        negative = whole.front() == '-';
        whole.remove_prefix(1);
    }
    if (whole.empty() && frac.empty()) fail(ErrorKind::ParseError, "not a number: \"" + std::string(text) + "\"");
    for (char c : whole)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            fail(ErrorKind::ParseError, "not a number: \"" + std::string(text) + "\"");
    for (char c : frac)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            fail(ErrorKind::ParseError, "not a number: \"" + std::string(text) + "\"");
    const std::string digits = std::string(whole) + std::string(frac);
    Integer num(digits.empty() ? std::string("0") : digits, 10);
    if (negative) num = -num;
    return make_rational(num, pow(Integer(10), frac.size()));
}

std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_string(const Integer& x) { return x.get_str(); }

bool is_integer(const Rational& x) { return x.get_den() == 1; }

Integer floor(const Rational& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

Integer pow(const Integer& base, unsigned long exponent) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

Rational pow(const Rational& base, long exponent) {
    if (exponent >= 0) {
        return make_rational(pow(base.get_num(), static_cast<unsigned long>(exponent)),
                             pow(base.get_den(), static_cast<unsigned long>(exponent)));
    }
    if (base == 0) fail(ErrorKind::DivisionByZero, "zero to a negative power");
    const auto e = static_cast<unsigned long>(-exponent);
    return make_rational(pow(base.get_den(), e), pow(base.get_num(), e));
}

namespace {
double log_abs_integer(const Integer& z) {
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}
} // namespace

double log_abs(const Rational& x) {
    if (x == 0) fail(ErrorKind::DomainError, "log of zero");
    return log_abs_integer(x.get_num()) - log_abs_integer(x.get_den());
}

} // namespace ppri
