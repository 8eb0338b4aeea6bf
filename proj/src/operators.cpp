#include "ppri/operators.hpp"

#include "ppri/error.hpp"
#include "ppri/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ppri {

namespace {

template <class T>
T abs_of(const T& x) {
    if constexpr (std::is_same_v<T, double>)
        return std::fabs(x);
    else
        return abs(x);
}

template <class T>
T max_column_sum(const Matrix<T>& t) {
    T best(0);
    for (std::size_t j = 0; j < t.size(); ++j) {
        T s(0);
        for (std::size_t i = 0; i < t.size(); ++i) s += abs_of(t(i, j));
        if (s > best) best = s;
    }
    return best;
}

template <class T>
T max_row_sum(const Matrix<T>& t) {
    T best(0);
    for (std::size_t i = 0; i < t.size(); ++i) {
        T s(0);
        for (std::size_t j = 0; j < t.size(); ++j) s += abs_of(t(i, j));
        if (s > best) best = s;
    }
    return best;
}

void require_exact_size(const RationalMatrix& t) {
    if (t.size() > kMaxExactDimension)
        fail(ErrorKind::BudgetExceeded, "exact routines accept n <= " + std::to_string(kMaxExactDimension));
}

} // namespace

Rational opnorm_l1(const RationalMatrix& t) { return max_column_sum(t); }
double opnorm_l1(const RealMatrix& t) { return max_column_sum(t); }
Rational opnorm_linf(const RationalMatrix& t) { return max_row_sum(t); }
double opnorm_linf(const RealMatrix& t) { return max_row_sum(t); }

bool schur_certificate(const RationalMatrix& t) { return max_column_sum(t) <= 1 && max_row_sum(t) <= 1; }
bool schur_certificate(const RealMatrix& t) { return max_column_sum(t) <= 1.0 && max_row_sum(t) <= 1.0; }

double opnorm_estimate(const RealMatrix& t, const PExponent& p, std::size_t trials, std::uint64_t seed) {
    if (trials < 1) fail(ErrorKind::PreconditionViolation, "opnorm_estimate needs at least one trial");
    if (p.is_infinite()) return opnorm_linf(t);
    if (p.value() == 1) return opnorm_l1(t);
    const std::size_t n = t.size();
    if (n == 0) return 0.0;
    const PExponent q = p.conjugate();
    const RealMatrix tt = t.transpose();

    double best = 0.0;
    auto ratio = [&](const std::vector<double>& v) {
        const double nv = lp_norm(v, p);
        if (nv == 0.0) return 0.0;
        const double r = lp_norm(t * std::span<const double>(v), p) / nv;
        best = std::max(best, r);
        return r;
    };
    // One step of the nonlinear power method: v -> argmax over the p-ball of
    // <T^T s, x>, where s attains the dual pairing with T v.
    auto refine = [&](std::vector<double> v) {
        for (int it = 0; it < 30; ++it) {
            const auto y = t * std::span<const double>(v);
            if (lp_norm(y, p) == 0.0) return;
            const auto s = dual_norm(y, q).witness;
            const auto z = tt * std::span<const double>(s);
            const auto next = dual_norm(z, p);
            if (next.degenerate) return;
            const double before = ratio(v);
            v = next.witness;
            if (ratio(v) <= before * (1.0 + 1e-15)) return;
        }
    };

    std::vector<std::vector<double>> starts;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        starts.push_back(e);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = t.row(i);
        starts.push_back(dual_norm(std::vector<double>(r.begin(), r.end()), p).witness);
    }
    Rng rng(seed);
    for (std::size_t k = 0; k < trials; ++k) {
        std::vector<double> v(n);
        for (auto& x : v) x = rng.normal();
        starts.push_back(v);
    }
    for (const auto& v : starts) {
        ratio(v);
        refine(v);
    }
    return best;
}

EigenDecomp symmetric_eigen(const RealMatrix& input, double tol) {
    const std::size_t n = input.size();
    double max_entry = 0.0;
    for (double x : input.entries()) {
        if (!std::isfinite(x)) fail(ErrorKind::NonFiniteInput, "matrix entry is not finite");
        max_entry = std::max(max_entry, std::fabs(x));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::fabs(input(i, j) - input(j, i)) > tol * std::max(1.0, max_entry))
                fail(ErrorKind::NotSelfAdjoint, "A(" + std::to_string(i) + "," + std::to_string(j) + ") != A(" +
                                                    std::to_string(j) + "," + std::to_string(i) + ")");

    RealMatrix a = input;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (input(i, j) + input(j, i));
    RealMatrix v = RealMatrix::identity(n);
    double frob = 0.0;
    for (double x : a.entries()) frob += x * x;
    frob = std::sqrt(frob);

    auto off_diagonal = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    int sweeps = 0;
    while (sweeps < kJacobiMaxSweeps && off_diagonal() > tol * frob) {
        ++sweeps;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

    EigenDecomp out;
    out.sweeps = sweeps;
    out.basis = RealMatrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues.push_back(a(order[j], order[j]));
        for (std::size_t i = 0; i < n; ++i) out.basis(i, j) = v(i, order[j]);
    }
    for (std::size_t j = 0; j < n; ++j) {
        const auto col = out.basis.column(j);
        const auto av = input * std::span<const double>(col);
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = av[i] - out.eigenvalues[j] * col[i];
            r += d * d;
        }
        out.residual = std::max(out.residual, std::sqrt(r));
    }
    return out;
}

double schatten_norm(const RealMatrix& a, const PExponent& p, double tol) {
    return lp_norm(symmetric_eigen(a, tol).eigenvalues, p);
}

double basis_quadratic_lp(const RealMatrix& a, const RealMatrix& w, const PExponent& p, double tol) {
    const std::size_t n = a.size();
    if (w.size() != n) fail(ErrorKind::DimensionMismatch, "basis and matrix sizes differ");
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = j; l < n; ++l) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += w(i, j) * w(i, l);
            if (std::fabs(dot - (j == l ? 1.0 : 0.0)) > tol)
                fail(ErrorKind::NotOrthonormal, "<w_" + std::to_string(j) + ", w_" + std::to_string(l) + "> = " +
                                                    std::to_string(dot));
        }
    std::vector<double> diag(n);
    for (std::size_t l = 0; l < n; ++l) {
        const auto col = w.column(l);
        const auto aw = a * std::span<const double>(col);
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += aw[i] * col[i];
        diag[l] = dot;
    }
    return lp_norm(diag, p);
}

RealMatrix random_orthonormal_basis(std::size_t n, Rng& rng) {
    std::vector<std::vector<double>> cols;
    while (cols.size() < n) {
        std::vector<double> v(n);
        for (auto& x : v) x = rng.normal();
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& c : cols) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += c[i] * v[i];
                for (std::size_t i = 0; i < n; ++i) v[i] -= dot * c[i];
            }
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (norm < 1e-8) continue;
        for (auto& x : v) x /= norm;
        cols.push_back(std::move(v));
    }
    RealMatrix w(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) w(i, j) = cols[j][i];
    return w;
}

MinPoly minimal_poly(const RationalMatrix& t) {
    require_exact_size(t);
    const std::size_t n = t.size();
    const std::size_t limit = n * n;

    struct Row {
        std::size_t pivot;
        std::vector<Rational> entries; // normalized so entries[pivot] == 1
        std::vector<Rational> combination;
    };
    std::vector<Row> basis;
    RationalMatrix power = RationalMatrix::identity(n);
    for (std::size_t k = 0; k <= limit; ++k) {
        std::vector<Rational> vec = power.entries();
        std::vector<Rational> comb(k + 1, Rational(0));
        comb[k] = 1;
        for (const Row& r : basis) {
            const Rational f = vec[r.pivot];
            if (f == 0) continue;
            for (std::size_t i = 0; i < vec.size(); ++i)
                if (r.entries[i] != 0) vec[i] -= f * r.entries[i];
            for (std::size_t i = 0; i < r.combination.size(); ++i) comb[i] -= f * r.combination[i];
        }
        const auto nz = std::find_if(vec.begin(), vec.end(), [](const Rational& x) { return x != 0; });
        if (nz == vec.end()) return MinPoly{std::move(comb)};
        const auto pivot = static_cast<std::size_t>(nz - vec.begin());
        const Rational lead = vec[pivot];
        for (auto& x : vec) x /= lead;
        for (auto& x : comb) x /= lead;
        basis.push_back({pivot, std::move(vec), std::move(comb)});
        power = power * t;
    }
    fail(ErrorKind::InternalError, "no dependence among the first n^2 + 1 powers");
}

RationalMatrix inverse_via_powers(const RationalMatrix& t) {
    const MinPoly mu = minimal_poly(t);
    const Rational& c0 = mu.coeffs.front();
    if (c0 == 0) fail(ErrorKind::Singular, "minimal polynomial has zero constant term");
    // mu(T) = 0 gives T * q(T) = -c0 I with q(t) = (mu(t) - c0) / t.
    std::vector<Rational> q(mu.coeffs.begin() + 1, mu.coeffs.end());
    RationalMatrix inv = poly_eval_in_algebra(q, t);
    inv *= Rational(-1 / c0);
    return inv;
}

Rational determinant(const RationalMatrix& t) {
    require_exact_size(t);
    const std::size_t n = t.size();
    if (n == 0) return 1;
    std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
    Integer scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < n; ++j) m[i][j] = t(i, j).get_num() * (l / t(i, j).get_den());
        scale *= l;
    }
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return make_rational(sign * m[n - 1][n - 1], scale);
}

bool eigenvalue_check(const RationalMatrix& a, const Rational& alpha) {
    RationalMatrix shifted = a;
    for (std::size_t i = 0; i < a.size(); ++i) shifted(i, i) -= alpha;
    return determinant(shifted) == 0;
}

bool unimodular_check(const RationalMatrix& t) {
    for (const auto& x : t.entries())
        if (!is_integer(x)) return false;
    return abs(determinant(t)) == 1;
}

bool padic_isometry_check(const RationalMatrix& t, Prime p) {
    for (const auto& x : t.entries())
        if (abs_p(x, p) > 1) return false;
    const Rational det = determinant(t);
    return det != 0 && abs_p(det, p) == 1;
}

} // namespace ppri
