#include "teich/rational.hpp"

#include <stdexcept>

namespace teich {

Rational parse_rational(std::string_view text) {
    std::string buffer(text);
    if (buffer.empty()) throw std::invalid_argument("empty rational literal");
    Rational value;
    if (value.set_str(buffer, 10) != 0) {
        throw std::invalid_argument("malformed rational literal: " + buffer);
    }
    if (value.get_den() == 0) throw std::invalid_argument("zero denominator: " + buffer);
    value.canonicalize();
    return value;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

Rational pow(const Rational& base, long exponent) {
    if (exponent < 0) {
        if (sgn(base) == 0) throw std::domain_error("zero raised to a negative power");
        return pow(Rational(1) / base, -exponent);
    }
    Rational result(1);
    Rational factor = base;
    unsigned long e = static_cast<unsigned long>(exponent);
    while (e != 0) {
        if (e & 1U) result *= factor;
        factor *= factor;
        e >>= 1U;
    }
    return result;
}

RationalSampler::RationalSampler(std::uint64_t seed, long max_term)
    : engine_(seed), max_term_(max_term) {
    if (max_term < 1) throw std::invalid_argument("max_term must be >= 1");
}

Rational RationalSampler::positive() {
    std::uniform_int_distribution<long> dist(1, max_term_);
    const long p = dist(engine_);
    const long q = dist(engine_);
    Rational value(p, q);
    value.canonicalize();
    return value;
}

long RationalSampler::integer(long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    return dist(engine_);
}

}  // namespace teich
