#include "ppri/norms.hpp"

#include "ppri/error.hpp"
#include "ppri/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ppri {

PExponent PExponent::finite(const Rational& p) {
    if (p < 1) fail(ErrorKind::DomainError, "exponent p = " + ppri::to_string(p) + " is below 1");
    return PExponent(p);
}

PExponent PExponent::parse(std::string_view text) {
    if (text == "inf" || text == "infinity" || text == "∞" || text == "Inf") return infinity();
    return finite(parse_exact_decimal(text));
}

double PExponent::as_double() const {
    return is_infinite() ? std::numeric_limits<double>::infinity() : value_->get_d();
}

Rational PExponent::reciprocal() const { return is_infinite() ? Rational(0) : Rational(1 / *value_); }

PExponent PExponent::conjugate() const {
    if (is_infinite()) return finite(1);
    if (*value_ == 1) return infinity();
    return finite(Rational(*value_ / (*value_ - 1)));
}

std::string PExponent::to_string() const { return is_infinite() ? "inf" : ppri::to_string(*value_); }

namespace {

double power_sum_norm(std::span<const double> v, double p) {
    double m = 0.0;
    for (double x : v) {
        if (!std::isfinite(x)) fail(ErrorKind::NonFiniteInput, "vector entry is not finite");
        m = std::max(m, std::fabs(x));
    }
    if (m == 0.0) return 0.0;
    if (p == 1.0) {
        double s = 0.0;
        for (double x : v) s += std::fabs(x);
        return s;
    }
    double s = 0.0;
    if (p == 2.0) {
        for (double x : v) s += (x / m) * (x / m);
        return m * std::sqrt(s);
    }
    for (double x : v) s += std::pow(std::fabs(x) / m, p);
    return m * std::pow(s, 1.0 / p);
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) {
        if (!std::isfinite(x)) fail(ErrorKind::NonFiniteInput, "vector entry is not finite");
        m = std::max(m, std::fabs(x));
    }
    return m;
}

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

} // namespace

double lp_norm(std::span<const double> v, const PExponent& p) {
    if (p.is_infinite()) return max_abs(v);
    return power_sum_norm(v, p.as_double());
}

double lp_norm(std::span<const Rational> v, const PExponent& p) {
    if (p.is_infinite() || p.value() == 1) return lp_norm_exact(v, p).get_d();
    std::vector<double> d;
    d.reserve(v.size());
    for (const auto& x : v) d.push_back(x.get_d());
    return lp_norm(d, p);
}

Rational lp_norm_exact(std::span<const Rational> v, const PExponent& p) {
    Rational acc = 0;
    if (p.is_infinite()) {
        for (const auto& x : v) acc = std::max(acc, abs(x));
        return acc;
    }
    if (p.value() != 1) fail(ErrorKind::DomainError, "exact lp norms only for p = 1 and p = inf");
    for (const auto& x : v) acc += abs(x);
    return acc;
}

Rational l2_norm_squared(std::span<const Rational> v) {
    Rational acc = 0;
    for (const auto& x : v) acc += x * x;
    return acc;
}

double comparison_constant(std::size_t n, const PExponent& p, const PExponent& q) {
    if (!(p <= q)) fail(ErrorKind::OrderViolation, "need p <= q, got p=" + p.to_string() + " q=" + q.to_string());
    if (n == 0) fail(ErrorKind::DimensionMismatch, "dimension must be positive");
    const double exponent = Rational(p.reciprocal() - q.reciprocal()).get_d();
    return std::pow(static_cast<double>(n), exponent);
}

HolderResult holder_pairing(std::span<const double> a, std::span<const double> b, const PExponent& p) {
    if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "pairing of vectors of different lengths");
    const PExponent q = p.conjugate();
    HolderResult r;
    for (std::size_t j = 0; j < a.size(); ++j) r.pairing += a[j] * b[j];
    r.bound = lp_norm(a, p) * lp_norm(b, q);
    if (!p.is_infinite() && !q.is_infinite()) {
        const double pd = p.as_double();
        const double qd = q.as_double();
        for (std::size_t j = 0; j < a.size(); ++j) {
            const double x = std::fabs(a[j]);
            const double y = std::fabs(b[j]);
            const double rhs = std::pow(x, pd) / pd + std::pow(y, qd) / qd;
            if (x * y > rhs * (1.0 + 1e-12) + 1e-300) r.young_holds = false;
        }
    }
    return r;
}

DualNormResult dual_norm(std::span<const double> w, const PExponent& p) {
    const std::size_t n = w.size();
    if (n == 0) fail(ErrorKind::DimensionMismatch, "empty functional");
    const PExponent q = p.conjugate();
    DualNormResult r;
    r.value = lp_norm(w, q);
    r.witness.assign(n, 0.0);
    if (r.value == 0.0) {
        r.witness[0] = 1.0;
        r.degenerate = true;
        return r;
    }
    if (p.is_infinite()) {
        for (std::size_t j = 0; j < n; ++j) r.witness[j] = sign(w[j]);
        return r;
    }
    if (p.value() == 1) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < n; ++j)
            if (std::fabs(w[j]) > std::fabs(w[best])) best = j;
        r.witness[best] = sign(w[best]);
        return r;
    }
    // v_j = sign(w_j) (|w_j| / ||w||_q)^{q-1}, so that ||v||_p = 1.
    const double qd = q.as_double();
    for (std::size_t j = 0; j < n; ++j) r.witness[j] = sign(w[j]) * std::pow(std::fabs(w[j]) / r.value, qd - 1.0);
    return r;
}

namespace {

std::vector<double> random_vector(Rng& rng, std::size_t dim) {
    std::vector<double> v(dim);
    for (auto& x : v) x = rng.normal();
    return v;
}

std::vector<double> combine(const std::vector<double>& a, double s, const std::vector<double>& b, double t) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i] + t * b[i];
    return out;
}

constexpr double kAxiomTolerance = 1e-9;

AxiomReport check_homogeneity(const NormOracle& n, std::size_t dim, std::size_t trials, Rng& rng) {
    AxiomReport rep;
    rep.axiom = "homogeneity";
    for (std::size_t t = 0; t < trials; ++t, ++rep.checks) {
        const auto v = random_vector(rng, dim);
        const double alpha = rng.uniform(-10.0, 10.0);
        const double lhs = n(combine(v, alpha, v, 0.0));
        const double rhs = std::fabs(alpha) * n(v);
        if (std::fabs(lhs - rhs) > kAxiomTolerance * std::max(1.0, rhs)) {
            rep.status = AxiomStatus::fail;
            rep.counterexample = std::vector<std::vector<double>>{v, {alpha}};
            rep.detail = "N(alpha v) = " + std::to_string(lhs) + " but |alpha| N(v) = " + std::to_string(rhs);
            return rep;
        }
    }
    return rep;
}

AxiomReport check_triangle(const NormOracle& n, std::size_t dim, std::size_t trials, Rng& rng) {
    AxiomReport rep;
    rep.axiom = "triangle";
    auto probe = [&](const std::vector<double>& v, const std::vector<double>& w) {
        ++rep.checks;
        const double lhs = n(combine(v, 1.0, w, 1.0));
        const double rhs = n(v) + n(w);
        if (lhs > rhs + kAxiomTolerance * std::max(1.0, rhs)) {
            rep.status = AxiomStatus::fail;
            rep.counterexample = std::vector<std::vector<double>>{v, w};
            rep.detail = "N(v+w) = " + std::to_string(lhs) + " > N(v)+N(w) = " + std::to_string(rhs);
            return false;
        }
        return true;
    };
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<double> e(dim, 0.0);
        e[i] = 1.0;
        if (!probe(e, e)) return rep;
        for (std::size_t j = i + 1; j < dim; ++j) {
            std::vector<double> f(dim, 0.0);
            f[j] = 1.0;
            if (!probe(e, f)) return rep;
        }
    }
    for (std::size_t t = 0; t < trials; ++t) {
        const auto v = random_vector(rng, dim);
        const auto w = random_vector(rng, dim);
        if (!probe(v, w)) return rep;
    }
    return rep;
}

AxiomReport check_convexity(const NormOracle& n, std::size_t dim, std::size_t trials, Rng& rng) {
    AxiomReport rep;
    rep.axiom = "convexity";
    // Scales v onto the boundary {N = 1} along its ray. Division is exact for
    // homogeneous N; otherwise bisect, assuming N grows along rays.
    auto scaled = [](std::vector<double> v, double t) {
        for (auto& x : v) x *= t;
        return v;
    };
    auto to_ball = [&](const std::vector<double>& v) {
        const double nv = n(v);
        if (!(nv > 0.0)) return v;
        double hi = 1.0 / nv;
        if (std::fabs(n(scaled(v, hi)) - 1.0) <= kAxiomTolerance) return scaled(v, hi);
        double lo = 0.0;
        for (int k = 0; k < 200 && n(scaled(v, hi)) < 1.0; ++k) lo = hi, hi *= 2.0;
        for (int k = 0; k < 100; ++k) {
            const double mid = 0.5 * (lo + hi);
            (n(scaled(v, mid)) < 1.0 ? lo : hi) = mid;
        }
        return scaled(v, lo);
    };
    for (std::size_t t = 0; t < trials; ++t, ++rep.checks) {
        const auto u = to_ball(random_vector(rng, dim));
        const auto w = to_ball(random_vector(rng, dim));
        const auto mid = combine(u, 0.5, w, 0.5);
        const double nm = n(mid);
        if (nm > 1.0 + kAxiomTolerance) {
            rep.status = AxiomStatus::fail;
            rep.counterexample = std::vector<std::vector<double>>{u, w};
            rep.detail = "midpoint of two unit-ball points has N = " + std::to_string(nm);
            return rep;
        }
    }
    return rep;
}

AxiomReport check_definiteness(const NormOracle& n, std::size_t dim) {
    AxiomReport rep;
    rep.axiom = "definiteness";
    constexpr double kBoxBudget = 4'200'000.0;
    double first_ratio = -1.0;
    double ratio = std::numeric_limits<double>::infinity();
    std::vector<double> argmin;
    for (long k = 1; std::pow(2.0 * static_cast<double>(k) + 1.0, static_cast<double>(dim)) <= kBoxBudget; k *= 2) {
        std::vector<long> idx(dim, -k);
        std::vector<double> v(dim);
        while (true) {
            bool nonzero = false;
            double l2 = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                v[i] = static_cast<double>(idx[i]);
                nonzero = nonzero || idx[i] != 0;
                l2 += v[i] * v[i];
            }
            if (nonzero) {
                ++rep.checks;
                const double r = n(v) / std::sqrt(l2);
                if (r < ratio) {
                    ratio = r;
                    argmin = v;
                }
            }
            std::size_t i = 0;
            while (i < dim && idx[i] == k) idx[i++] = -k;
            if (i == dim) break;
            ++idx[i];
        }
        if (first_ratio < 0.0) first_ratio = ratio;
        if (ratio == 0.0) break;
    }
    if (ratio == 0.0 || ratio <= 1e-3 * first_ratio) {
        rep.status = AxiomStatus::fail;
        rep.counterexample = std::vector<std::vector<double>>{argmin};
        rep.detail = ratio == 0.0 ? "N vanishes at a nonzero integer vector"
                                  : "min N(v)/|v| over integer boxes fell from " + std::to_string(first_ratio) +
                                        " to " + std::to_string(ratio);
    }
    return rep;
}

} // namespace

std::vector<AxiomReport> seminorm_axioms_check(const NormOracle& oracle, std::size_t dim, std::size_t trials,
                                               std::uint64_t seed) {
    if (dim == 0) fail(ErrorKind::DimensionMismatch, "dimension must be positive");
    Rng rng(seed);
    std::vector<AxiomReport> out;
    out.push_back(check_homogeneity(oracle, dim, trials, rng));
    out.push_back(check_triangle(oracle, dim, trials, rng));
    out.push_back(check_convexity(oracle, dim, trials, rng));
    out.push_back(check_definiteness(oracle, dim));
    return out;
}

} // namespace ppri
