#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "seclab/errors.hpp"

namespace seclab {

/// Exact rational with int64 numerator. Denominators here come from coin
/// tape enumeration (at most 2^24), so int64 arithmetic never overflows
/// in the operations the experiments need.
struct Rational {
    int64_t num = 0;
    int64_t den = 1;

    Rational() = default;
    Rational(int64_t n, int64_t d) : num(n), den(d) {
        if (den == 0) throw Error("rational with zero denominator");
        normalize();
    }
    static Rational integer(int64_t n) { return Rational(n, 1); }

    void normalize() {
        if (den < 0) { num = -num; den = -den; }
        int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) throw Error("bad rational \"" + s + "\"");
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    Rational abs() const { return num < 0 ? Rational(-num, den) : *this; }
    bool is_zero() const { return num == 0; }
};

} // namespace seclab
