#pragma once

// Forward-mode dual numbers over the rationals: a value together with its
// exact gradient. Enough arithmetic for the rational coordinate maps.

#include "teich/rational.hpp"

#include <cstddef>
#include <vector>

namespace teich {

struct Jet {
    Rational value;
    std::vector<Rational> grad;

    Jet() = default;
    Jet(Rational v, std::size_t n) : value(std::move(v)), grad(n) {}

    static Jet variable(const Rational& v, std::size_t n, std::size_t index) {
        Jet j(v, n);
        j.grad[index] = 1;
        return j;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet r(a.value + b.value, a.grad.size());
        for (std::size_t i = 0; i < r.grad.size(); ++i) r.grad[i] = a.grad[i] + b.grad[i];
        return r;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r(a.value * b.value, a.grad.size());
        for (std::size_t i = 0; i < r.grad.size(); ++i) r.grad[i] = a.grad[i] * b.value + a.value * b.grad[i];
        return r;
    }
    friend Jet operator/(const Jet& a, const Jet& b) {
        const Rational inv = 1 / b.value;
        Jet r(a.value * inv, a.grad.size());
        for (std::size_t i = 0; i < r.grad.size(); ++i) r.grad[i] = (a.grad[i] - r.value * b.grad[i]) * inv;
        return r;
    }
    friend Jet operator*(const Jet& a, const Rational& c) {
        Jet r(a.value * c, a.grad.size());
        for (std::size_t i = 0; i < r.grad.size(); ++i) r.grad[i] = a.grad[i] * c;
        return r;
    }
    friend Jet operator*(const Rational& c, const Jet& a) { return a * c; }
    friend Jet operator/(const Jet& a, const Rational& c) { return a * Rational(1 / c); }
    friend Jet operator/(const Rational& c, const Jet& b) {
        const Rational inv = 1 / b.value;
        Jet r(c * inv, b.grad.size());
        for (std::size_t i = 0; i < r.grad.size(); ++i) r.grad[i] = -r.value * b.grad[i] * inv;
        return r;
    }
};

}  // namespace teich
