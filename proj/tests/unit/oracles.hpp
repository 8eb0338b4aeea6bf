#pragma once

// Test-side reference computations, written independently of the library
// code paths they check.

#include "ppri/rational.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

// Extended Euclid on machine integers: x with a*x = 1 mod m.
inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    std::int64_t r0 = ((a % m) + m) % m, r1 = m, s0 = 1, s1 = 0;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        r0 = std::exchange(r1, r0 - q * r1);
        s0 = std::exchange(s1, s0 - q * s1);
    }
    return ((s0 % m) + m) % m;
}

// Same recurrence on arbitrary-precision integers, for moduli past 2^63.
inline ppri::Integer inverse_mod(ppri::Integer a, const ppri::Integer& m) {
    ppri::Integer r0 = ((a % m) + m) % m, r1 = m, s0 = 1, s1 = 0;
    while (r1 != 0) {
        const ppri::Integer q = r0 / r1;
        ppri::Integer t = r0 - q * r1;
        r0 = r1, r1 = t;
        t = s0 - q * s1;
        s0 = s1, s1 = t;
    }
    return ((s0 % m) + m) % m;
}

// Exponent of p in n! by factoring each of 1..n.
inline std::uint64_t factorial_valuation(std::uint64_t n, std::uint64_t p) {
    std::uint64_t v = 0;
    for (std::uint64_t k = 2; k <= n; ++k)
        for (std::uint64_t m = k; m % p == 0; m /= p) ++v;
    return v;
}

// Rank of a list of rational vectors by Gaussian elimination.
inline std::size_t rank(std::vector<std::vector<ppri::Rational>> rows) {
    std::size_t r = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const ppri::Rational f = rows[i][c] / rows[r][c];
            for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
        }
        ++r;
    }
    return r;
}

// Determinant by cofactor expansion (small n only).
inline ppri::Rational cofactor_det(const std::vector<std::vector<ppri::Rational>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    ppri::Rational det = 0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<ppri::Rational>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<ppri::Rational> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(row);
        }
        const ppri::Rational term = m[0][j] * cofactor_det(minor);
        det += (j % 2 == 0) ? term : ppri::Rational(-term);
    }
    return det;
}

} // namespace oracle
