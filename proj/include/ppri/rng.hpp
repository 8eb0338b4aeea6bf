#pragma once

#include "ppri/rational.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace ppri {

// Seeded generator whose derived draws depend only on the mt19937_64 output
// stream (which the standard pins down), so a seed reproduces byte-identical
// results across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [lo, hi], inclusive.
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(engine_());
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t draw = engine_();
        while (draw >= limit) draw = engine_();
        return lo + static_cast<std::int64_t>(draw % span);
    }

    bool coin() { return (engine_() >> 63) != 0; }

    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Nonzero-or-zero rational with |numerator| <= max_num and 1 <= denominator <= max_den.
    Rational rational(std::int64_t max_num, std::int64_t max_den) {
        const Integer num(static_cast<long>(integer(-max_num, max_num)));
        const Integer den(static_cast<long>(integer(1, max_den)));
        return make_rational(num, den);
    }

    Rational nonzero_rational(std::int64_t max_num, std::int64_t max_den) {
        Rational r = rational(max_num, max_den);
        while (r == 0) r = rational(max_num, max_den);
        return r;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace ppri
