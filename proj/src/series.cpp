#include "ppri/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ppri {

std::string ScalarTag::to_string() const {
    switch (kind) {
    case ScalarKind::rational: return "rational";
    case ScalarKind::complex: return "complex";
    case ScalarKind::padic: return "padic(" + std::to_string(prime) + ")";
    }
    return "unknown";
}

namespace {

constexpr double kUnitRoundoff = 0x1.0p-53;

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

Complex ipow(Complex base, unsigned long e) {
    Complex result(1.0, 0.0);
    while (e) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

class ComplexSum {
public:
    void add(Complex z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    Complex value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_, im_;
};

constexpr std::size_t kCertificateWindow = 16;

// Geometric tail bound from the ratios over the trailing window ending at j.
std::optional<double> ratio_tail(const std::vector<double>& mags, std::size_t j) {
    double rho = 0.0;
    for (std::size_t i = j - kCertificateWindow; i < j; ++i) {
        if (mags[i] == 0.0) {
            if (mags[i + 1] != 0.0) return std::nullopt;
            continue;
        }
        rho = std::max(rho, mags[i + 1] / mags[i]);
    }
    if (!(rho < 1.0)) return std::nullopt;
    return mags[j] * rho / (1.0 - rho);
}

// Envelope version for terms whose size oscillates (Cauchy products of complex
// geometric series): compares the maxima of the last two windows and spreads
// their ratio evenly over the window length.
std::optional<double> envelope_tail(const std::vector<double>& mags, std::size_t j) {
    if (j < 2 * kCertificateWindow) return std::nullopt;
    const auto first = mags.begin() + static_cast<std::ptrdiff_t>(j + 1 - 2 * kCertificateWindow);
    const auto mid = first + static_cast<std::ptrdiff_t>(kCertificateWindow);
    const double older = *std::max_element(first, mid);
    const double recent = *std::max_element(mid, mags.begin() + static_cast<std::ptrdiff_t>(j + 1));
    if (older == 0.0) return std::nullopt;
    const double rho = std::pow(recent / older, 1.0 / static_cast<double>(kCertificateWindow));
    if (!(rho < 1.0)) return std::nullopt;
    return recent * rho / (1.0 - rho);
}

std::optional<double> geometric_tail(const std::vector<double>& mags, std::size_t j) {
    const auto r = ratio_tail(mags, j);
    const auto e = envelope_tail(mags, j);
    if (r && e) return std::min(*r, *e);
    return r ? r : e;
}

bool alternating_window(const std::vector<Complex>& terms, std::size_t j, Complex next) {
    auto ok_pair = [](Complex a, Complex b) {
        if (a.imag() != 0.0 || b.imag() != 0.0) return false;
        if (a.real() == 0.0) return b.real() == 0.0;
        if (b.real() != 0.0 && (a.real() > 0.0) == (b.real() > 0.0)) return false;
        return std::fabs(b.real()) <= std::fabs(a.real());
    };
    for (std::size_t i = j - kCertificateWindow; i < j; ++i)
        if (!ok_pair(terms[i], terms[i + 1])) return false;
    return ok_pair(terms[j], next);
}

} // namespace

SumResult<Complex> sum_complex(const CoeffSeq<Complex>& a, double eps, std::size_t max_terms, OnCap on_cap) {
    if (!(eps > 0.0)) fail(ErrorKind::DomainError, "eps must be positive");
    ComplexSum sum;
    double abs_sum = 0.0;

    if (a.is_finite()) {
        const std::size_t n = *a.length();
        for (std::size_t j = 0; j < n; ++j) {
            const Complex t = a[j];
            require_finite(t);
            sum.add(t);
            abs_sum += std::abs(t);
        }
        const double slack = static_cast<double>(n + 1) * kUnitRoundoff * abs_sum;
        return {sum.value(), n, slack == 0.0 ? ErrorBound::exact_zero() : ErrorBound::at_most(slack), true};
    }

    std::vector<Complex> terms;
    std::vector<double> mags;
    for (std::size_t j = 0; j < max_terms; ++j) {
        const Complex t = a[j];
        require_finite(t);
        terms.push_back(t);
        mags.push_back(std::abs(t));
        sum.add(t);
        abs_sum += mags.back();
        if (j < kCertificateWindow) continue;

        const double slack = static_cast<double>(j + 2) * kUnitRoundoff * abs_sum;
        std::optional<double> tail = geometric_tail(mags, j);
        const Complex next = a[j + 1];
        if (alternating_window(terms, j, next)) {
            const double leibniz = std::abs(next);
            tail = tail ? std::min(*tail, leibniz) : leibniz;
        }
        if (tail && *tail + slack < eps) {
            const double bound = *tail + slack;
            return {sum.value(), j + 1, bound == 0.0 ? ErrorBound::exact_zero() : ErrorBound::at_most(bound), true};
        }
    }
    if (on_cap == OnCap::raise)
        fail(ErrorKind::NonConvergenceSuspected,
             "no tail certificate within " + std::to_string(max_terms) + " terms");
    return {sum.value(), max_terms, ErrorBound::at_most(std::numeric_limits<double>::infinity()), false};
}

SumResult<double> alternating_sum(const CoeffSeq<Rational>& b, double eps, std::size_t max_terms) {
    if (!(eps > 0.0)) fail(ErrorKind::DomainError, "eps must be positive");
    CompensatedSum sum;
    double abs_sum = 0.0;
    Rational current = b[0];
    if (current < 0) fail(ErrorKind::MonotonicityViolation, "negative term at j=0");
    for (std::size_t j = 0; j < max_terms; ++j) {
        const double term = current.get_d();
        sum.add(j % 2 == 0 ? term : -term);
        abs_sum += term;
        const Rational next = b[j + 1];
        if (next < 0) fail(ErrorKind::MonotonicityViolation, "negative term at j=" + std::to_string(j + 1));
        if (next > current)
            fail(ErrorKind::MonotonicityViolation, "b_{j+1} > b_j at j=" + std::to_string(j + 1));
        // The first omitted term bounds the tail; add slack for rounding the
        // terms to double and summing them.
        const double omitted = next.get_d();
        const double slack = static_cast<double>(2 * (j + 2)) * kUnitRoundoff * abs_sum;
        const double bound = omitted + slack;
        if (bound <= eps) {
            return {sum.value(), j + 1, bound == 0.0 ? ErrorBound::exact_zero() : ErrorBound::at_most(bound), true};
        }
        current = next;
    }
    fail(ErrorKind::NonConvergenceSuspected,
         "terms did not fall below eps within " + std::to_string(max_terms) + " terms");
}

Rational geometric_sum(const Rational& x) {
    if (abs(x) >= 1) fail(ErrorKind::DomainError, "|x| = " + to_string(abs(x)) + " >= 1: |z|^j >= 1 for all j");
    return Rational(1) / (1 - x);
}

Rational geometric_sum_padic(const Rational& x, Prime p) {
    const Rational a = abs_p(x, p);
    if (a >= 1)
        fail(ErrorKind::DomainError, "|x|_" + std::to_string(p.value()) + " = " + to_string(a) + " >= 1");
    return Rational(1) / (1 - x);
}

PAdic geometric_sum(const PAdic& x) {
    if (!x.is_zero() && x.valuation().value() < 1)
        fail(ErrorKind::DomainError,
             "|x|_" + std::to_string(x.prime().value()) + " = " + to_string(abs_p(x)) + " >= 1");
    const PAdic one = padic_from_rational(1, x.prime(), x.precision());
    return one / (one - x);
}

Complex geometric_sum(Complex z) {
    const double m = cx_abs(z);
    if (m >= 1.0) fail(ErrorKind::DomainError, "|z| = " + std::to_string(m) + " >= 1: |z|^j >= 1 for all j");
    return 1.0 / (1.0 - z);
}

SumResult<PAdic> sum_padic(const CoeffSeq<Rational>& a, long absolute_precision, const ValuationBound& certificate,
                           std::size_t max_terms) {
    if (a.scalar().kind != ScalarKind::padic)
        fail(ErrorKind::KindMismatch, "sum_padic needs a p-adic sequence, got " + a.scalar().to_string());
    if (absolute_precision < 1) fail(ErrorKind::DomainError, "target precision must be at least 1");
    const Prime p(a.scalar().prime);

    Rational sum = 0;
    std::size_t used = 0;
    if (a.is_finite()) {
        used = *a.length();
        for (std::size_t j = 0; j < used; ++j) sum += a[j];
    } else {
        if (!certificate)
            fail(ErrorKind::NoValuationCertificate, "streamed p-adic series needs a valuation lower bound");
        long previous = std::numeric_limits<long>::min();
        bool reached = false;
        for (std::size_t j = 0; j < max_terms; ++j) {
            const long bound = certificate(j);
            if (bound < previous)
                fail(ErrorKind::NoValuationCertificate, "valuation bound decreases at j=" + std::to_string(j));
            previous = bound;
            if (bound >= absolute_precision) {
                reached = true;
                break;
            }
            const Rational term = a[j];
            if (term != 0 && vp(term, p).value() < bound)
                fail(ErrorKind::NoValuationCertificate, "term " + std::to_string(j) + " has valuation below its bound");
            sum += term;
            used = j + 1;
        }
        if (!reached)
            fail(ErrorKind::NoValuationCertificate, "valuation bound stays below " + std::to_string(absolute_precision) +
                                                        " for " + std::to_string(max_terms) + " terms");
    }
    const Valuation v = vp(sum, p);
    if (v.is_infinite() || v.value() >= absolute_precision)
        fail(ErrorKind::PrecisionExhausted, "sum is divisible by p^" + std::to_string(absolute_precision));
    PAdic value = padic_from_rational(sum, p, static_cast<int>(absolute_precision - v.value()));
    return {std::move(value), used, ErrorBound::exact_zero(), true};
}

namespace {

// Least squares by modified Gram-Schmidt on normalized columns. Returns the
// coefficients, or nullopt when the columns are numerically dependent.
std::optional<std::vector<double>> least_squares(const std::vector<std::vector<double>>& columns,
                                                 std::vector<double> rhs) {
    const std::size_t k = columns.size();
    const std::size_t m = rhs.size();
    std::vector<std::vector<double>> q = columns;
    std::vector<double> scale(k);
    std::vector<std::vector<double>> r(k, std::vector<double>(k, 0.0));
    for (std::size_t c = 0; c < k; ++c) {
        double s = 0.0;
        for (double x : q[c]) s += x * x;
        scale[c] = std::sqrt(s);
        for (double& x : q[c]) x /= scale[c];
    }
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t prev = 0; prev < c; ++prev) {
            double dot = 0.0;
            for (std::size_t i = 0; i < m; ++i) dot += q[prev][i] * q[c][i];
            r[prev][c] = dot;
            for (std::size_t i = 0; i < m; ++i) q[c][i] -= dot * q[prev][i];
        }
        double norm = 0.0;
        for (double x : q[c]) norm += x * x;
        norm = std::sqrt(norm);
        if (norm < 1e-13) return std::nullopt;
        r[c][c] = norm;
        for (double& x : q[c]) x /= norm;
    }
    std::vector<double> qtb(k, 0.0);
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t i = 0; i < m; ++i) qtb[c] += q[c][i] * rhs[i];
    std::vector<double> coef(k, 0.0);
    for (std::size_t c = k; c-- > 0;) {
        double s = qtb[c];
        for (std::size_t d = c + 1; d < k; ++d) s -= r[c][d] * coef[d];
        coef[c] = s / r[c][c];
    }
    for (std::size_t c = 0; c < k; ++c) coef[c] /= scale[c];
    return coef;
}

RadiusEstimate radius_from_logs(const std::vector<std::pair<double, double>>& points) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    auto finish = [](double limsup_log) {
        const double radius = std::exp(-limsup_log);
        return RadiusEstimate{radius > kRadiusInfinityThreshold ? inf : radius, true};
    };
    if (points.empty()) return {inf, true};

    if (points.size() >= 6) {
        std::vector<double> ones, logj, invj, logj_over_j, y;
        for (const auto& [j, log_abs_aj] : points) {
            ones.push_back(1.0);
            logj.push_back(std::log(j));
            invj.push_back(1.0 / j);
            logj_over_j.push_back(std::log(j) / j);
            y.push_back(log_abs_aj / j);
        }
        if (auto full = least_squares({ones, logj, invj, logj_over_j}, y)) {
            const double trend = (*full)[1];
            if (trend < -0.25) return {inf, true};
            if (trend > 0.25) return {0.0, true};
        }
        if (auto reduced = least_squares({ones, invj, logj_over_j}, y)) return finish((*reduced)[0]);
    }
    double best = -inf;
    for (const auto& [j, log_abs_aj] : points) best = std::max(best, log_abs_aj / j);
    return finish(best);
}

template <class T>
RadiusEstimate radius_impl(const CoeffSeq<T>& a, std::size_t inspect) {
    if (inspect < 8) fail(ErrorKind::PreconditionViolation, "radius_estimate needs at least 8 terms");
    std::vector<std::pair<double, double>> points;
    for (std::size_t j = std::max<std::size_t>(1, inspect / 2); j <= inspect; ++j) {
        const T t = a[j];
        if constexpr (std::is_same_v<T, Rational>) {
            if (t != 0) points.emplace_back(static_cast<double>(j), log_abs(t));
        } else {
            require_finite(t);
            if (t != 0.0) points.emplace_back(static_cast<double>(j), std::log(std::abs(t)));
        }
    }
    return radius_from_logs(points);
}

} // namespace

RadiusEstimate radius_estimate(const CoeffSeq<Rational>& a, std::size_t inspect) { return radius_impl(a, inspect); }
RadiusEstimate radius_estimate(const CoeffSeq<Complex>& a, std::size_t inspect) { return radius_impl(a, inspect); }

std::vector<AbelValue> abel_eval(const CoeffSeq<Complex>& a, std::span<const double> schedule,
                                 std::optional<double> coefficient_bound, double eps) {
    if (!a.is_finite() && !coefficient_bound)
        fail(ErrorKind::UnboundedCoefficients, "streamed sequence without a bound on sup |a_j|");
    if (coefficient_bound && !(*coefficient_bound >= 0.0 && std::isfinite(*coefficient_bound)))
        fail(ErrorKind::UnboundedCoefficients, "coefficient bound must be finite and nonnegative");
    std::vector<AbelValue> out;
    double previous = -1.0;
    for (double r : schedule) {
        if (!(r >= 0.0 && r < 1.0)) fail(ErrorKind::DomainError, "Abel radius must lie in [0, 1)");
        if (!(r > previous)) fail(ErrorKind::DomainError, "Abel schedule must be increasing");
        previous = r;

        ComplexSum sum;
        double power = 1.0;
        std::size_t used = 0;
        double bound = 0.0;
        if (a.is_finite()) {
            used = *a.length();
            for (std::size_t j = 0; j < used; ++j, power *= r) sum.add(a[j] * power);
        } else {
            const double m = *coefficient_bound;
            for (std::size_t j = 0;; ++j, power *= r) {
                const Complex t = a[j];
                require_finite(t);
                if (std::abs(t) > m * (1.0 + 1e-12))
                    fail(ErrorKind::UnboundedCoefficients, "|a_" + std::to_string(j) + "| exceeds the supplied bound");
                sum.add(t * power);
                used = j + 1;
                bound = m * power * r / (1.0 - r);
                if (bound <= eps) break;
            }
        }
        out.push_back({r, sum.value(), used, bound});
    }
    return out;
}

std::uint64_t legendre_vp_factorial(std::uint64_t n, Prime p) {
    std::uint64_t count = 0;
    const std::uint64_t base = p.value();
    for (std::uint64_t q = n / base; q > 0; q /= base) count += q;
    return count;
}

Complex exp_complex(Complex z) {
    require_finite(z);
    if (std::abs(z) > kExpOverflowGuard)
        fail(ErrorKind::OverflowRisk, "|z| > " + std::to_string(static_cast<int>(kExpOverflowGuard)));
    if (z == Complex(0.0, 0.0)) return {1.0, 0.0};
    int halvings = 0;
    Complex w = z;
    while (std::abs(w) > 0.5) {
        w *= 0.5;
        ++halvings;
    }
    // With |w| <= 1/2 each later term is at most half the previous one, so the
    // tail after term n is bounded by |term_n|.
    Complex sum(1.0, 0.0);
    Complex term(1.0, 0.0);
    for (int n = 1; n < 64; ++n) {
        term *= w / static_cast<double>(n);
        sum += term;
        if (std::abs(term) <= 0x1.0p-60 * std::abs(sum)) break;
    }
    for (int k = 0; k < halvings; ++k) sum *= sum;
    return sum;
}

long exp_padic_min_valuation(Prime p) { return p.value() == 2 ? 2 : 1; }

namespace {

std::string exp_threshold(Prime p) {
    const std::string ps = std::to_string(p.value());
    if (p.value() == 2) return ps + "^{-1}";
    return ps + "^{-1/" + std::to_string(p.value() - 1) + "}";
}

void require_exp_domain(const Rational& x, Prime p) {
    if (x == 0) return;
    if (vp(x, p).value() < exp_padic_min_valuation(p))
        fail(ErrorKind::DomainError, "|x|_" + std::to_string(p.value()) + " = " + to_string(abs_p(x, p)) +
                                         " ≥ " + exp_threshold(p));
}

} // namespace

PAdic exp_padic(const Rational& x, Prime p, int precision) {
    if (precision < 1) fail(ErrorKind::DomainError, "precision must be at least 1");
    require_exp_domain(x, p);
    if (x == 0) return padic_from_rational(1, p, precision);
    // vp(x^n/n!) >= n v - (n-1)/(p-1), increasing in n on the domain; every
    // term from the first n with that bound >= N vanishes mod p^N.
    const long v = vp(x, p).value();
    const long pm1 = static_cast<long>(p.value()) - 1;
    const long slope = v * pm1 - 1;
    const long target = static_cast<long>(precision) * pm1 - 1;
    const long terms = std::max<long>(1, (target + slope - 1) / slope);
    Rational sum = 0;
    Rational term = 1;
    for (long n = 0; n < terms; ++n) {
        if (n > 0) term = term * x / n;
        sum += term;
    }
    return padic_from_rational(sum, p, precision);
}

PAdic exp_padic(const PAdic& x, int precision) {
    if (x.is_zero()) return padic_from_rational(1, x.prime(), precision);
    require_exp_domain(x.representative(), x.prime());
    const long cap = std::min<long>(precision, x.absolute_precision());
    return exp_padic(x.representative(), x.prime(), static_cast<int>(cap));
}

bool exp_additivity_check(const Rational& x, const Rational& y, Prime p, int precision) {
    const PAdic ex = exp_padic(x, p, precision);
    const PAdic ey = exp_padic(y, p, precision);
    const PAdic sum = exp_padic(Rational(x + y), p, precision);
    const PAdic product = ex * ey;
    return sum.precision() == product.precision() && sum.unit() == product.unit() &&
           sum.valuation() == product.valuation();
}

bool exp_additivity_check(const PAdic& x, const PAdic& y, int precision) {
    if (x.prime() != y.prime()) fail(ErrorKind::PrimeMismatch, "operands over different primes");
    const PAdic ex = exp_padic(x, precision);
    const PAdic ey = exp_padic(y, precision);
    const PAdic sum = exp_padic(x + y, precision);
    const PAdic product = ex * ey;
    const int n = std::min(sum.precision(), product.precision());
    const Integer mod = pow(x.prime().as_integer(), static_cast<unsigned long>(n));
    return Integer(sum.unit() % mod) == Integer(product.unit() % mod);
}

LaurentSeq LaurentSeq::finite(Support support) {
    LaurentSeq s;
    for (auto& [j, a] : support)
        if (a != 0) s.support_.emplace(j, a);
    return s;
}

LaurentSeq LaurentSeq::truncated(Support support, Rational tail_bound) {
    if (tail_bound < 0) fail(ErrorKind::DomainError, "tail bound must be nonnegative");
    LaurentSeq s = finite(std::move(support));
    s.tail_ = std::move(tail_bound);
    return s;
}

LaurentSeq LaurentSeq::delta(long index) { return finite({{index, Rational(1)}}); }

Rational LaurentSeq::coefficient(long index) const {
    const auto it = support_.find(index);
    return it == support_.end() ? Rational(0) : it->second;
}

Rational LaurentSeq::stored_l1() const {
    Rational s = 0;
    for (const auto& [j, a] : support_) s += abs(a);
    return s;
}

LaurentSeq laurent_product(const LaurentSeq& a, const LaurentSeq& b) {
    LaurentSeq::Support c;
    for (const auto& [j, aj] : a.support())
        for (const auto& [l, bl] : b.support()) c[j + l] += aj * bl;
    if (!a.has_infinite_support() && !b.has_infinite_support()) return LaurentSeq::finite(std::move(c));
    const Rational ta = a.tail_bound();
    const Rational tb = b.tail_bound();
    Rational tail = a.stored_l1() * tb + b.stored_l1() * ta + ta * tb;
    return LaurentSeq::truncated(std::move(c), std::move(tail));
}

LaurentValue laurent_eval(const LaurentSeq& a, Complex z) {
    require_finite(z);
    if (z == Complex(0.0, 0.0)) fail(ErrorKind::ZeroArgument, "Laurent series evaluated at z = 0");
    const bool on_circle = std::fabs(std::abs(z) - 1.0) <= kUnitCircleTolerance;
    if (a.has_infinite_support() && !on_circle)
        fail(ErrorKind::OffCircleWithInfiniteSupport, "infinite-support sequences are evaluated only on |z| = 1");
    // On the circle z^{-1} is the conjugate of z.
    const Complex inverse = on_circle ? std::conj(z) : 1.0 / z;
    ComplexSum sum;
    double abs_sum = 0.0;
    for (const auto& [j, aj] : a.support()) {
        const Complex base = j >= 0 ? z : inverse;
        const Complex term = aj.get_d() * ipow(base, static_cast<unsigned long>(j >= 0 ? j : -j));
        sum.add(term);
        abs_sum += std::abs(term);
    }
    const double rounding = static_cast<double>(a.support().size() + 1) * 4.0 * kUnitRoundoff * abs_sum;
    return {sum.value(), a.tail_bound().get_d() + rounding};
}

Rational poly_eval_in_algebra(std::span<const Rational> coeffs, const Rational& x) {
    Rational acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RationalMatrix poly_eval_in_algebra(std::span<const Rational> coeffs, const RationalMatrix& x) {
    const std::size_t n = x.size();
    RationalMatrix acc(n);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * x;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += *it;
    }
    return acc;
}

} // namespace ppri
