// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exact rational arithmetic for cycle means. All comparisons are
// cross-multiplied in 128-bit so no intermediate ever rounds.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ocm {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1; // invariant: den > 0, gcd(|num|, den) == 1

    Rational() = default;

    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0)
            throw std::invalid_argument("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    static Rational integer(std::int64_t n) { return Rational(n, 1); }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    Rational operator-() const {
        Rational r;
        r.num = -num;
        r.den = den;
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num * b.num, a.den * b.den);
    }

    // "p/q", or plain "p" when q == 1.
    std::string str() const {
        if (den == 1)
            return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

} // namespace ocm
