#include "ppri/lattice.hpp"

#include "ppri/error.hpp"
#include "ppri/operators.hpp"
#include "ppri/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace ppri {

PrimeSet::PrimeSet(std::vector<std::int64_t> primes) {
    if (primes.empty()) fail(ErrorKind::DomainError, "prime set is empty");
    if (primes.size() > kMaxPrimeSetSize)
        fail(ErrorKind::DomainError, "prime set has more than " + std::to_string(kMaxPrimeSetSize) + " primes");
    std::sort(primes.begin(), primes.end());
    if (std::adjacent_find(primes.begin(), primes.end()) != primes.end())
        fail(ErrorKind::DomainError, "prime set has a repeated prime");
    for (auto p : primes) primes_.emplace_back(p);
}

bool PrimeSet::contains(std::int64_t p) const {
    return std::any_of(primes_.begin(), primes_.end(),
                       [p](Prime q) { return static_cast<std::int64_t>(q.value()) == p; });
}

std::string PrimeSet::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < primes_.size(); ++i) s += (i ? "," : "") + std::to_string(primes_[i].value());
    return s + "}";
}

bool in_ZE(const Rational& x, const PrimeSet& e) {
    Integer rest = x.get_den();
    for (Prime p : e.primes()) vp_integer(rest, p, &rest);
    return rest == 1;
}

std::vector<Rational> EmbeddedPoint::padic_sizes() const {
    std::vector<Rational> out;
    for (Prime p : places.primes()) out.push_back(abs_p(value, p));
    return out;
}

EmbeddedPoint embed(const Rational& x, const PrimeSet& e) {
    if (!in_ZE(x, e)) fail(ErrorKind::NotInZE, to_string(x) + " is not in Z_E for E = " + e.to_string());
    return EmbeddedPoint{x, e};
}

Rational product_distance(const Rational& x, const Rational& y, const PrimeSet& e) {
    const Rational d = x - y;
    Rational best = abs(d);
    for (Prime p : e.primes()) {
        Rational a = abs_p(d, p);
        if (a > best) best = a;
    }
    return best;
}

Rational discreteness_gap(const Rational& x, const Rational& y, const PrimeSet& e) {
    for (const Rational* z : {&x, &y})
        if (!in_ZE(*z, e)) fail(ErrorKind::NotInZE, to_string(*z) + " is not in Z_E for E = " + e.to_string());
    Rational gap = product_distance(x, y, e);
    if (x != y && gap < 1)
        fail(ErrorKind::InternalError, "distinct points " + to_string(x) + ", " + to_string(y) + " at distance " +
                                           to_string(gap) + " < 1");
    return gap;
}

Covering covering_point(const Rational& y, std::span<const Rational> w, const PrimeSet& e) {
    if (w.size() != e.size())
        fail(ErrorKind::LengthMismatch,
             "need one target per prime: " + std::to_string(w.size()) + " targets, " + std::to_string(e.size()) +
                 " primes");
    if (!in_ZE(y, e)) fail(ErrorKind::NotInZE, to_string(y) + " is not in Z_E for E = " + e.to_string());
    Covering out;
    out.x = y;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Prime p = e.primes()[i];
        const Rational d = w[i] - y;
        Integer m;
        const unsigned long k = vp_integer(d.get_den(), p, &m);
        Rational b = 0;
        if (k > 0) {
            const Integer pk = pow(p.as_integer(), k);
            Integer c = Integer(d.get_num() * inverse_mod(m, pk)) % pk;
            if (c < 0) c += pk;
            b = make_rational(c, pk);
        }
        out.shifts.push_back(b);
        out.x += b;
    }
    out.distance = abs(Rational(out.x - y));
    for (std::size_t i = 0; i < w.size(); ++i) out.place_distances.push_back(abs_p(Rational(out.x - w[i]), e.primes()[i]));
    return out;
}

namespace {

std::vector<double> to_doubles(std::span<const Rational> v) {
    std::vector<double> out;
    for (const auto& x : v) out.push_back(x.get_d());
    return out;
}

Rational volume_of_box(std::span<const Rational> lower, std::span<const Rational> upper) {
    Rational v = 1;
    for (std::size_t i = 0; i < lower.size(); ++i) v *= upper[i] - lower[i];
    return v;
}

// Volume of the unit Euclidean ball in R^n.
double unit_ball_volume(std::size_t n) {
    const double h = static_cast<double>(n) / 2.0;
    return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

Rational shave(double v) { return Rational(v * (1.0 - 1e-12)); }

Rational pad(double v) { return Rational(v * (1.0 + 1e-9) + 1e-12); }

} // namespace

ConvexRegion box_region(std::vector<Rational> lower, std::vector<Rational> upper) {
    if (lower.size() != upper.size() || lower.empty())
        fail(ErrorKind::DimensionMismatch, "box bounds must be nonempty and of equal length");
    for (std::size_t i = 0; i < lower.size(); ++i)
        if (!(lower[i] < upper[i])) fail(ErrorKind::DomainError, "box side " + std::to_string(i) + " is empty");
    ConvexRegion u;
    u.dim = lower.size();
    u.volume_lb = volume_of_box(lower, upper);
    const auto lo = to_doubles(lower);
    const auto hi = to_doubles(upper);
    u.contains = [lo, hi](std::span<const double> x) {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (!(lo[i] < x[i] && x[i] < hi[i])) return false;
        return true;
    };
    u.lower = std::move(lower);
    u.upper = std::move(upper);
    u.description = "box";
    return u;
}

ConvexRegion symmetric_box(std::span<const Rational> halfwidths) {
    std::vector<Rational> lo;
    std::vector<Rational> hi;
    for (const auto& h : halfwidths) {
        if (h <= 0) fail(ErrorKind::DomainError, "box halfwidth must be positive");
        lo.push_back(-h);
        hi.push_back(h);
    }
    return box_region(std::move(lo), std::move(hi));
}

ConvexRegion ellipsoid_region(const RationalMatrix& q) {
    const std::size_t n = q.size();
    if (n == 0) fail(ErrorKind::DimensionMismatch, "ellipsoid matrix is empty");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (q(i, j) != q(j, i)) fail(ErrorKind::NotSelfAdjoint, "ellipsoid matrix is not symmetric");
    for (std::size_t k = 1; k <= n; ++k) {
        RationalMatrix minor(k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) minor(i, j) = q(i, j);
        if (determinant(minor) <= 0) fail(ErrorKind::DomainError, "ellipsoid matrix is not positive definite");
    }
    const RationalMatrix inv = inverse_via_powers(q);
    ConvexRegion u;
    u.dim = n;
    for (std::size_t i = 0; i < n; ++i) {
        const Rational r = pad(std::sqrt(inv(i, i).get_d()));
        u.lower.push_back(-r);
        u.upper.push_back(r);
    }
    u.volume_lb = shave(unit_ball_volume(n) / std::sqrt(determinant(q).get_d()));
    const RealMatrix qd = to_real(q);
    u.contains = [qd](std::span<const double> x) {
        double s = 0.0;
        for (std::size_t i = 0; i < qd.size(); ++i)
            for (std::size_t j = 0; j < qd.size(); ++j) s += x[i] * qd(i, j) * x[j];
        return s < 1.0;
    };
    u.description = "ellipsoid";
    return u;
}

ConvexRegion named_region(std::string_view name, std::size_t dim, const Rational& r) {
    if (dim == 0) fail(ErrorKind::DimensionMismatch, "dimension must be positive");
    if (r <= 0) fail(ErrorKind::DomainError, "radius must be positive");
    ConvexRegion u;
    u.dim = dim;
    u.lower.assign(dim, -r);
    u.upper.assign(dim, r);
    const double rd = r.get_d();
    if (name == "cross-polytope") {
        Integer fact = 1;
        for (std::size_t k = 2; k <= dim; ++k) fact *= static_cast<unsigned long>(k);
        u.volume_lb = pow(Rational(2 * r), static_cast<long>(dim)) / Rational(fact);
        u.contains = [rd](std::span<const double> x) {
            double s = 0.0;
            for (double c : x) s += std::fabs(c);
            return s < rd;
        };
    } else if (name == "ball") {
        u.volume_lb = shave(unit_ball_volume(dim) * std::pow(rd, static_cast<double>(dim)));
        u.contains = [rd](std::span<const double> x) {
            double s = 0.0;
            for (double c : x) s += c * c;
            return s < rd * rd;
        };
    } else {
        fail(ErrorKind::DomainError, "unknown region '" + std::string(name) + "' (known: cross-polytope, ball)");
    }
    u.description = std::string(name);
    return u;
}

void spot_check_region(const ConvexRegion& u, std::uint64_t seed) {
    Rng rng(seed);
    const auto lo = to_doubles(u.lower);
    const auto hi = to_doubles(u.upper);
    std::vector<std::vector<double>> members;
    for (std::size_t t = 0; t < kSpotCheckPoints; ++t) {
        std::vector<double> x(u.dim);
        for (std::size_t i = 0; i < u.dim; ++i) x[i] = rng.uniform(lo[i], hi[i]);
        if (!u.contains(x)) continue;
        std::vector<double> neg(x);
        for (auto& c : neg) c = -c;
        if (!u.contains(neg)) fail(ErrorKind::AsymmetricRegion, "x is in the region but -x is not");
        members.push_back(std::move(x));
    }
    for (std::size_t i = 1; i < members.size(); ++i) {
        std::vector<double> mid(u.dim);
        for (std::size_t k = 0; k < u.dim; ++k) mid[k] = 0.5 * (members[i - 1][k] + members[i][k]);
        if (!u.contains(mid)) fail(ErrorKind::NonConvexRegion, "midpoint of two members is outside the region");
    }
}

PointPair pigeonhole_pair(const ConvexRegion& u) {
    if (u.volume_lb <= 1)
        fail(ErrorKind::PreconditionViolation, "volume lower bound " + to_string(u.volume_lb) + " is not > 1");
    const std::size_t n = u.dim;
    for (long g = 16;; g *= 2) {
        std::vector<long> first(n);
        std::vector<long> last(n);
        double total = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            first[i] = -floor(Rational(-u.lower[i] * g)).get_si();
            last[i] = floor(Rational(u.upper[i] * g)).get_si();
            total *= static_cast<double>(std::max(0L, last[i] - first[i] + 1));
        }
        if (total > static_cast<double>(kPigeonholeMaxPoints))
            fail(ErrorKind::SearchExhausted, "no integer-difference pair on grids up to 2^24 points");
        if (total == 0.0) continue;

        std::map<std::vector<long>, std::vector<long>> seen;
        std::vector<long> j = first;
        std::vector<double> x(n);
        while (true) {
            for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(j[i]) / static_cast<double>(g);
            if (u.contains(x)) {
                std::vector<long> key(n);
                for (std::size_t i = 0; i < n; ++i) key[i] = ((j[i] % g) + g) % g;
                auto [it, inserted] = seen.emplace(std::move(key), j);
                if (!inserted) {
                    PointPair out;
                    for (std::size_t i = 0; i < n; ++i) {
                        out.x.push_back(make_rational(it->second[i], g));
                        out.y.push_back(make_rational(j[i], g));
                    }
                    return out;
                }
            }
            std::size_t i = 0;
            while (i < n && j[i] == last[i]) j[i] = first[i], ++i;
            if (i == n) break;
            ++j[i];
        }
    }
}

std::vector<Integer> minkowski_point(const ConvexRegion& u, std::uint64_t seed) {
    const std::size_t n = u.dim;
    if (u.volume_lb <= pow(Rational(2), static_cast<long>(n)))
        fail(ErrorKind::PreconditionViolation,
             "volume lower bound " + to_string(u.volume_lb) + " is not > 2^" + std::to_string(n));
    spot_check_region(u, seed);

    std::vector<long> lo(n);
    std::vector<long> hi(n);
    long radius = 0;
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = -floor(Rational(-u.lower[i])).get_si();
        hi[i] = floor(u.upper[i]).get_si();
        radius = std::max({radius, std::labs(lo[i]), std::labs(hi[i])});
    }

    std::uint64_t visited = 0;
    std::vector<double> xd(n);
    for (long r = 1; r <= radius; ++r) {
        std::vector<std::vector<long>> shell;
        std::vector<long> a(n), b(n);
        bool empty = false;
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = std::max(lo[i], -r);
            b[i] = std::min(hi[i], r);
            empty = empty || a[i] > b[i];
        }
        if (empty) continue;
        std::vector<long> j = a;
        while (true) {
            long sup = 0;
            for (long c : j) sup = std::max(sup, std::labs(c));
            if (sup == r) shell.push_back(j);
            if (++visited > kMinkowskiMaxPoints)
                fail(ErrorKind::SearchExhausted, "enumeration budget of 2^24 points used up");
            std::size_t i = 0;
            while (i < n && j[i] == b[i]) j[i] = a[i], ++i;
            if (i == n) break;
            ++j[i];
        }
        auto norm2 = [](const std::vector<long>& v) {
            long s = 0;
            for (long c : v) s += c * c;
            return s;
        };
        std::stable_sort(shell.begin(), shell.end(), [&](const auto& p, const auto& q) {
            const long np = norm2(p);
            const long nq = norm2(q);
            return np != nq ? np < nq : p > q;
        });
        for (const auto& v : shell) {
            for (std::size_t i = 0; i < n; ++i) xd[i] = static_cast<double>(v[i]);
            if (u.contains(xd)) {
                std::vector<Integer> out;
                for (long c : v) out.emplace_back(c);
                return out;
            }
        }
    }
    fail(ErrorKind::SearchExhausted, "no nonzero integer point in the bounding box");
}

} // namespace ppri
