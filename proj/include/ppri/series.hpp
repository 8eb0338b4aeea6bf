#pragma once

#include "ppri/error.hpp"
#include "ppri/matrix.hpp"
#include "ppri/rational.hpp"
#include "ppri/scalars.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

namespace ppri {

enum class ScalarKind { rational, complex, padic };

// Which ring the coefficients of a sequence live in. p-adic sequences store
// their terms as exact rationals, read in Q_p.
struct ScalarTag {
    ScalarKind kind = ScalarKind::rational;
    std::uint32_t prime = 0;

    static ScalarTag rational() { return {ScalarKind::rational, 0}; }
    static ScalarTag complex() { return {ScalarKind::complex, 0}; }
    static ScalarTag padic(Prime p) { return {ScalarKind::padic, p.value()}; }

    friend bool operator==(const ScalarTag&, const ScalarTag&) = default;
    std::string to_string() const;
};

// Coefficient sequence a_0, a_1, ... over Rational or Complex. A finite
// sequence is an explicit list padded with zeros; a streamed sequence calls a
// pure generator and memoizes the consumed prefix. Copies share the memo, which
// is guarded by a mutex so a sequence may be read from several threads.
template <class T>
class CoeffSeq {
    static_assert(std::is_same_v<T, Rational> || std::is_same_v<T, Complex>);

public:
    using Generator = std::function<T(std::size_t)>;

    static CoeffSeq finite(std::vector<T> terms, std::optional<ScalarTag> tag = std::nullopt) {
        CoeffSeq s(check_tag(tag));
        s.terms_ = std::move(terms);
        return s;
    }

    static CoeffSeq streamed(Generator gen, std::optional<ScalarTag> tag = std::nullopt) {
        CoeffSeq s(check_tag(tag));
        s.stream_ = std::make_shared<Stream>();
        s.stream_->gen = std::move(gen);
        return s;
    }

    bool is_finite() const noexcept { return stream_ == nullptr; }
    std::optional<std::size_t> length() const {
        if (is_finite()) return terms_.size();
        return std::nullopt;
    }
    const ScalarTag& scalar() const noexcept { return tag_; }

    T operator[](std::size_t j) const {
        if (is_finite()) return j < terms_.size() ? terms_[j] : T(0);
        std::lock_guard lock(stream_->mu);
        while (stream_->memo.size() <= j) stream_->memo.push_back(stream_->gen(stream_->memo.size()));
        return stream_->memo[j];
    }

    std::vector<T> prefix(std::size_t count) const {
        std::vector<T> out;
        out.reserve(count);
        for (std::size_t j = 0; j < count; ++j) out.push_back((*this)[j]);
        return out;
    }

private:
    struct Stream {
        Generator gen;
        std::mutex mu;
        std::vector<T> memo;
    };

    explicit CoeffSeq(ScalarTag tag) : tag_(tag) {}

    static ScalarTag check_tag(std::optional<ScalarTag> tag) {
        if constexpr (std::is_same_v<T, Complex>) {
            if (tag && tag->kind != ScalarKind::complex)
                fail(ErrorKind::KindMismatch, "complex terms need the complex scalar kind");
            return ScalarTag::complex();
        } else {
            if (tag && tag->kind == ScalarKind::complex)
                fail(ErrorKind::KindMismatch, "rational terms cannot carry the complex scalar kind");
            return tag.value_or(ScalarTag::rational());
        }
    }

    ScalarTag tag_;
    std::vector<T> terms_;
    std::shared_ptr<Stream> stream_;
};

// c_n = sum_{j=0}^{n} a_j b_{n-j} for n = 0..upto, computed in the scalar ring.
template <class T>
CoeffSeq<T> cauchy_product(const CoeffSeq<T>& a, const CoeffSeq<T>& b, std::size_t upto) {
    if (a.scalar() != b.scalar())
        fail(ErrorKind::KindMismatch, "cauchy product of " + a.scalar().to_string() + " and " + b.scalar().to_string());
    const auto as = a.prefix(upto + 1);
    const auto bs = b.prefix(upto + 1);
    std::vector<T> c(upto + 1, T(0));
    for (std::size_t n = 0; n <= upto; ++n)
        for (std::size_t j = 0; j <= n; ++j) c[n] += as[j] * bs[n - j];
    return CoeffSeq<T>::finite(std::move(c), a.scalar());
}

// The Cauchy product as a lazily evaluated streamed sequence.
template <class T>
CoeffSeq<T> cauchy_stream(const CoeffSeq<T>& a, const CoeffSeq<T>& b) {
    if (a.scalar() != b.scalar())
        fail(ErrorKind::KindMismatch, "cauchy product of " + a.scalar().to_string() + " and " + b.scalar().to_string());
    return CoeffSeq<T>::streamed(
        [a, b](std::size_t n) {
            T c(0);
            for (std::size_t j = 0; j <= n; ++j) c += a[j] * b[n - j];
            return c;
        },
        a.scalar());
}

// Bound on |sum - value|. `exact` marks a zero bound that is exact rather
// than a rounded estimate (used for finite sums and p-adic sums mod p^N).
struct ErrorBound {
    bool exact = false;
    double bound = 0.0;

    static ErrorBound exact_zero() { return {true, 0.0}; }
    static ErrorBound at_most(double b) { return {false, b}; }
};

template <class T>
struct SumResult {
    T value;
    std::size_t terms_used = 0;
    ErrorBound error_bound;
    bool certified = false;
};

enum class OnCap { raise, return_uncertified };

// Partial sums with a tail certificate: geometric decay detected over a window
// of consecutive ratios, or alternating real terms of decreasing size. When no
// certificate fires within max_terms: NonConvergenceSuspected, or an
// uncertified partial sum under OnCap::return_uncertified.
SumResult<Complex> sum_complex(const CoeffSeq<Complex>& a, double eps, std::size_t max_terms = 1'000'000,
                               OnCap on_cap = OnCap::raise);

// Sum of (-1)^j b_j for nonincreasing nonnegative b_j; stops once the first
// omitted term is <= eps. The bound covers truncation plus summation rounding.
SumResult<double> alternating_sum(const CoeffSeq<Rational>& b, double eps, std::size_t max_terms = 10'000'000);

// 1/(1-x). DomainError unless |x| < 1 in the relevant absolute value.
Rational geometric_sum(const Rational& x);
Rational geometric_sum_padic(const Rational& x, Prime p);
PAdic geometric_sum(const PAdic& x);
Complex geometric_sum(Complex z);

// Lower bound j -> vmin(j) on the p-adic valuation of the j-th term. It must be
// nondecreasing and tend to infinity.
using ValuationBound = std::function<long(std::size_t)>;

// Sum of a p-adic series modulo p^N. Every term from the first index with
// vmin >= N on is divisible by p^N, so the partial sum before it is exact mod
// p^N. Finite sequences need no certificate.
SumResult<PAdic> sum_padic(const CoeffSeq<Rational>& a, long absolute_precision,
                           const ValuationBound& certificate = nullptr, std::size_t max_terms = 1'000'000);

struct RadiusEstimate {
    double radius = 0.0; // +inf allowed
    bool is_estimate = true;
};

inline constexpr double kRadiusInfinityThreshold = 1e12;

// Heuristic 1/limsup |a_j|^{1/j} from terms j <= J (J >= 8). Fits
// log|a_j|/j over the upper half of the window; a clear log j trend means
// super-geometric decay (radius +inf) or growth (radius 0).
RadiusEstimate radius_estimate(const CoeffSeq<Rational>& a, std::size_t inspect);
RadiusEstimate radius_estimate(const CoeffSeq<Complex>& a, std::size_t inspect);

struct AbelValue {
    double r = 0.0;
    Complex value;
    std::size_t terms_used = 0;
    double error_bound = 0.0;
};

// A(r) = sum a_j r^j for each r of an increasing schedule in [0, 1). The tail
// is bounded by M r^{L+1} / (1 - r) with M = sup |a_j|, which must be supplied
// for streamed sequences (finite ones need none). No limit is extrapolated.
std::vector<AbelValue> abel_eval(const CoeffSeq<Complex>& a, std::span<const double> schedule,
                                 std::optional<double> coefficient_bound = std::nullopt, double eps = 1e-13);

// Number of factors of p in n!: sum_k floor(n / p^k).
std::uint64_t legendre_vp_factorial(std::uint64_t n, Prime p);

inline constexpr double kExpOverflowGuard = 700.0;

// E(z) = sum z^n / n!, by argument halving and a factorial-decay tail bound.
Complex exp_complex(Complex z);

// Smallest valuation accepted by the p-adic exponential: |x|_p < p^{-1/(p-1)}
// means vp(x) >= 1 for odd p and vp(x) >= 2 for p = 2.
long exp_padic_min_valuation(Prime p);
// E(x) mod p^N.
PAdic exp_padic(const Rational& x, Prime p, int precision = kDefaultPrecision);
// Result precision is capped by the absolute precision of x.
PAdic exp_padic(const PAdic& x, int precision = kDefaultPrecision);

// E(x + y) == E(x) E(y) mod p^N, each side computed independently.
bool exp_additivity_check(const Rational& x, const Rational& y, Prime p, int precision = kDefaultPrecision);
bool exp_additivity_check(const PAdic& x, const PAdic& y, int precision = kDefaultPrecision);

// Doubly infinite sequence with finite stored support (no zero entries kept)
// and, for absolutely summable sequences cut off at some |j|, a bound on the
// l1 mass of everything not stored.
class LaurentSeq {
public:
    using Support = std::map<long, Rational>;

    LaurentSeq() = default;
    static LaurentSeq finite(Support support);
    static LaurentSeq truncated(Support support, Rational tail_bound);
    static LaurentSeq delta(long index);

    const Support& support() const noexcept { return support_; }
    bool has_infinite_support() const noexcept { return tail_.has_value(); }
    // Zero for finite sequences.
    Rational tail_bound() const { return tail_.value_or(Rational(0)); }
    Rational coefficient(long index) const;
    // l1 norm of the stored part.
    Rational stored_l1() const;
    // Upper bound on the full l1 norm.
    Rational l1_bound() const { return stored_l1() + tail_bound(); }

    friend bool operator==(const LaurentSeq&, const LaurentSeq&) = default;

private:
    Support support_;
    std::optional<Rational> tail_;
};

LaurentSeq laurent_product(const LaurentSeq& a, const LaurentSeq& b);

struct LaurentValue {
    Complex value;
    double error_bound = 0.0;
};

// sum a_j z^j on C \ {0}; sequences with infinite support only on |z| = 1.
LaurentValue laurent_eval(const LaurentSeq& a, Complex z);

inline constexpr double kUnitCircleTolerance = 1e-12;

// a_n x^n + ... + a_1 x + a_0 e, by Horner's rule in the algebra of x.
Rational poly_eval_in_algebra(std::span<const Rational> coeffs, const Rational& x);
RationalMatrix poly_eval_in_algebra(std::span<const Rational> coeffs, const RationalMatrix& x);

} // namespace ppri
