#pragma once

#include "ppri/matrix.hpp"
#include "ppri/norms.hpp"
#include "ppri/rational.hpp"
#include "ppri/rng.hpp"
#include "ppri/scalars.hpp"

#include <cstdint>
#include <vector>

namespace ppri {

// Largest dimension accepted by the exact (rational) matrix routines.
inline constexpr std::size_t kMaxExactDimension = 64;

// Operator norm for ||.||_1: the largest column abs sum.
Rational opnorm_l1(const RationalMatrix& t);
double opnorm_l1(const RealMatrix& t);
// Operator norm for ||.||_inf: the largest row abs sum.
Rational opnorm_linf(const RationalMatrix& t);
double opnorm_linf(const RealMatrix& t);

// True iff every row and every column of |T| sums to at most 1, which makes T
// a contraction for every ||.||_p, 1 <= p <= inf.
bool schur_certificate(const RationalMatrix& t);
bool schur_certificate(const RealMatrix& t);

// Lower bound on the p -> p operator norm from coordinate vectors, row dual
// witnesses, random directions and a nonlinear power iteration. Exact for
// p = 1 and p = inf.
double opnorm_estimate(const RealMatrix& t, const PExponent& p, std::size_t trials, std::uint64_t seed);

struct EigenDecomp {
    std::vector<double> eigenvalues; // descending
    RealMatrix basis;                // column j is the eigenvector of eigenvalues[j]
    double residual = 0.0;           // max_j ||A v_j - alpha_j v_j||_2
    int sweeps = 0;
};

inline constexpr double kJacobiTolerance = 1e-12;
inline constexpr int kJacobiMaxSweeps = 50;

// Cyclic Jacobi rotations until the off-diagonal Frobenius mass is at most
// tol * ||A||_F. NotSelfAdjoint if max |A - A^T| exceeds tol * max(1, max |A|).
EigenDecomp symmetric_eigen(const RealMatrix& a, double tol = kJacobiTolerance);

// lp norm of the eigenvalues of a self-adjoint matrix.
double schatten_norm(const RealMatrix& a, const PExponent& p, double tol = kJacobiTolerance);

inline constexpr double kOrthonormalTolerance = 1e-9;

// (sum_l |<A w_l, w_l>|^p)^{1/p} over the columns w_l of an orthonormal W.
double basis_quadratic_lp(const RealMatrix& a, const RealMatrix& w, const PExponent& p,
                          double tol = kOrthonormalTolerance);

// Gram-Schmidt (applied twice) on a matrix with standard normal entries.
RealMatrix random_orthonormal_basis(std::size_t n, Rng& rng);

// Monic minimal polynomial, coefficients from t^0 up to t^l (coeffs.back() == 1).
struct MinPoly {
    std::vector<Rational> coeffs;
    std::size_t degree() const { return coeffs.size() - 1; }
};

// Exact elimination on the flattened powers I, T, T^2, ...; the first power
// dependent on its predecessors gives the relation.
MinPoly minimal_poly(const RationalMatrix& t);

// T^{-1} as a polynomial in T read off the minimal polynomial. Singular when
// its constant term vanishes.
RationalMatrix inverse_via_powers(const RationalMatrix& t);

// Fraction-free (Bareiss) elimination after clearing row denominators.
Rational determinant(const RationalMatrix& t);

// det(A - alpha I) == 0.
bool eigenvalue_check(const RationalMatrix& a, const Rational& alpha);
// Integer entries and det = +-1.
bool unimodular_check(const RationalMatrix& t);
// Entries in Z_p and |det|_p = 1.
bool padic_isometry_check(const RationalMatrix& t, Prime p);

} // namespace ppri
