#pragma once

// Exact rational scalars backed by GMP, plus the seeded sampler used by the
// property checks.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace teich {

using Rational = mpq_class;

// Accepts "p/q", "p" or "-p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);

inline bool is_positive(const Rational& value) { return sgn(value) > 0; }

// Integer power with a signed exponent. Throws on 0^negative.
Rational pow(const Rational& base, long exponent);

// Draws p/q with 1 <= p, q <= max_term from a seeded 64-bit Mersenne twister.
class RationalSampler {
public:
    explicit RationalSampler(std::uint64_t seed, long max_term = 1000);

    Rational positive();
    long integer(long lo, long hi);
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    long max_term_;
};

}  // namespace teich
