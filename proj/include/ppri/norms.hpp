#pragma once

#include "ppri/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ppri {

// Exponent p in [1, inf], stored exactly: a rational or the infinity marker.
class PExponent {
public:
    static PExponent infinity() { return PExponent(); }
    // Throws DomainError unless p >= 1.
    static PExponent finite(const Rational& p);
    // "inf", "∞", "a/b", "a" or a terminating decimal such as "1.5".
    static PExponent parse(std::string_view text);

    bool is_infinite() const noexcept { return !value_.has_value(); }
    const Rational& value() const { return *value_; }
    double as_double() const;
    // 1/p, with 1/inf = 0.
    Rational reciprocal() const;
    // q with 1/p + 1/q = 1.
    PExponent conjugate() const;

    std::string to_string() const;

    friend bool operator==(const PExponent&, const PExponent&) = default;
    friend bool operator<=(const PExponent& a, const PExponent& b) { return a.reciprocal() >= b.reciprocal(); }

private:
    PExponent() = default;
    explicit PExponent(Rational p) : value_(std::move(p)) {}
    std::optional<Rational> value_;
};

// ||v||_p in double precision, with scaling against overflow.
double lp_norm(std::span<const double> v, const PExponent& p);
double lp_norm(std::span<const Rational> v, const PExponent& p);
// Exact ||v||_1 and ||v||_inf (DomainError for other p).
Rational lp_norm_exact(std::span<const Rational> v, const PExponent& p);
// Exact ||v||_2^2.
Rational l2_norm_squared(std::span<const Rational> v);

// n^{1/p - 1/q}: the constant in ||v||_p <= n^{1/p-1/q} ||v||_q for p <= q.
// The reverse direction ||v||_q <= ||v||_p holds with constant 1.
double comparison_constant(std::size_t n, const PExponent& p, const PExponent& q);

struct HolderResult {
    double pairing = 0.0;
    double bound = 0.0;     // ||a||_p ||b||_q
    bool young_holds = true; // |a_j b_j| <= |a_j|^p/p + |b_j|^q/q for every j
};

HolderResult holder_pairing(std::span<const double> a, std::span<const double> b, const PExponent& p);

struct DualNormResult {
    double value = 0.0;
    std::vector<double> witness; // ||witness||_p = 1, sum witness_j w_j = value
    bool degenerate = false;     // w = 0: any unit vector is extremal
};

// Dual norm of v -> sum v_j w_j under ||.||_p, i.e. ||w||_q, with a vector
// attaining it.
DualNormResult dual_norm(std::span<const double> w, const PExponent& p);

using NormOracle = std::function<double(std::span<const double>)>;

enum class AxiomStatus { pass, fail };

struct AxiomReport {
    std::string axiom; // homogeneity, triangle, convexity, definiteness
    AxiomStatus status = AxiomStatus::pass;
    std::size_t checks = 0;
    std::optional<std::vector<std::vector<double>>> counterexample;
    std::string detail;
};

// Randomized falsification of the seminorm axioms (homogeneity, triangle
// inequality, midpoint convexity of the unit ball) and of definiteness. The
// definiteness probe scans integer vectors in growing boxes and flags the
// oracle when min N(v)/||v||_2 keeps collapsing toward 0.
std::vector<AxiomReport> seminorm_axioms_check(const NormOracle& oracle, std::size_t dim, std::size_t trials,
                                               std::uint64_t seed);

} // namespace ppri
