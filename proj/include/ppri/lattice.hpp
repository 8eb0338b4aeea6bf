#pragma once

#include "ppri/matrix.hpp"
#include "ppri/rational.hpp"
#include "ppri/scalars.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ppri {

inline constexpr std::size_t kMaxPrimeSetSize = 8;

// Sorted distinct primes p_1 < ... < p_n with 1 <= n <= 8.
class PrimeSet {
public:
    // Sorts the input; rejects duplicates (DomainError), non-primes
    // (NonPrimeModulus), and empty or oversized sets (DomainError).
    explicit PrimeSet(std::vector<std::int64_t> primes);

    const std::vector<Prime>& primes() const noexcept { return primes_; }
    std::size_t size() const noexcept { return primes_.size(); }
    bool contains(std::int64_t p) const;
    std::string to_string() const; // "{2,3}"

private:
    std::vector<Prime> primes_;
};

// True iff the denominator of x factors over E.
bool in_ZE(const Rational& x, const PrimeSet& e);

// Image of x under Q -> R x Q_{p_1} x ... x Q_{p_n}, kept as the rational
// value; the per-place sizes are derived.
struct EmbeddedPoint {
    Rational value;
    PrimeSet places;

    double real() const { return value.get_d(); }
    // |value|_{p_i} for each place in order.
    std::vector<Rational> padic_sizes() const;
};

// NotInZE if x is not in Z_E.
EmbeddedPoint embed(const Rational& x, const PrimeSet& e);

// max(|x-y|, |x-y|_{p_1}, ..., |x-y|_{p_n}), exactly.
Rational product_distance(const Rational& x, const Rational& y, const PrimeSet& e);

// product_distance for x, y in Z_E. Distinct points are at distance >= 1;
// a smaller value is reported as InternalError.
Rational discreteness_gap(const Rational& x, const Rational& y, const PrimeSet& e);

struct Covering {
    Rational x;
    std::vector<Rational> shifts;       // b_i in Z[1/p_i] and [0, 1)
    Rational distance;                  // |x - y| = sum b_i < n
    std::vector<Rational> place_distances; // |x - w_i|_{p_i} <= 1
};

// x = y + b_1 + ... + b_n in Z_E, close to y at the real place and within
// p_i-adic distance 1 of w_i. b_i = c / p_i^k where p_i^k is the p_i-part of
// the denominator of w_i - y and c = numerator * (p_i-free part)^{-1} mod p_i^k.
Covering covering_point(const Rational& y, std::span<const Rational> w, const PrimeSet& e);

// Membership oracle. Must be pure and safe to call concurrently.
using RegionOracle = std::function<bool(std::span<const double>)>;

struct ConvexRegion {
    std::size_t dim = 0;
    RegionOracle contains;
    std::vector<Rational> lower; // region lies in the box [lower, upper]
    std::vector<Rational> upper;
    Rational volume_lb;          // caller-supplied lower bound on the volume
    std::string description;
};

// Open box prod_i (lower_i, upper_i); exact volume.
ConvexRegion box_region(std::vector<Rational> lower, std::vector<Rational> upper);
// Open symmetric box prod_i (-h_i, h_i).
ConvexRegion symmetric_box(std::span<const Rational> halfwidths);
// {x : x^T Q x < 1} for symmetric positive definite Q. The volume bound is
// omega_n / sqrt(det Q) shaved by a relative 1e-12 to stay below the truth.
ConvexRegion ellipsoid_region(const RationalMatrix& q);
// Registered named regions: "cross-polytope" (sum |x_i| < r) and "ball"
// (|x|_2 < r). DomainError for unknown names.
ConvexRegion named_region(std::string_view name, std::size_t dim, const Rational& r);

inline constexpr std::size_t kSpotCheckPoints = 256;

// Probabilistic: samples points of the bounding box, flags a member x with -x
// outside (AsymmetricRegion) or two members with their midpoint outside
// (NonConvexRegion).
void spot_check_region(const ConvexRegion& u, std::uint64_t seed = 0);

struct PointPair {
    std::vector<Rational> x;
    std::vector<Rational> y;
};

inline constexpr std::uint64_t kPigeonholeMaxPoints = 1ull << 24;

// Two distinct members of U differing by an integer vector. Grid points j/g of
// the bounding box are bucketed by residue of j mod g, starting at g = 16 and
// doubling. PreconditionViolation unless volume_lb > 1; SearchExhausted past
// 2^24 grid points.
PointPair pigeonhole_pair(const ConvexRegion& u);

inline constexpr std::uint64_t kMinkowskiMaxPoints = 1ull << 24;

// Nonzero integer point of U. Integer points of the bounding box are visited
// by sup-norm shell; within a shell by sum of squares, then lexicographically
// descending. PreconditionViolation unless volume_lb > 2^n.
std::vector<Integer> minkowski_point(const ConvexRegion& u, std::uint64_t seed = 0);

} // namespace ppri
