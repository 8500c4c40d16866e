#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cyclepack {

// Exact rational arithmetic for divisibility-sensitive parameters such as
// alpha and beta. Class-size validation and stability clause thresholds
// must not flip under floating point rounding.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}  // NOLINT: implicit by design
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool is_integer() const { return den == 1; }

    // Floor of num/den (den > 0 after normalization).
    long long floor() const {
        long long q = num / den;
        if (num % den != 0 && num < 0) --q;
        return q;
    }

    Rational operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
    Rational operator-(const Rational& o) const { return Rational(num * o.den - o.num * den, den * o.den); }
    Rational operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
    Rational operator*(long long k) const { return Rational(num * k, den); }
    Rational operator-() const { return Rational(-num, den); }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
    }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    // Accepts "a/b", integers, and finite decimals ("0.05").
    static Rational parse(const std::string& text);
};

inline Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            long long n = std::stoll(text.substr(0, slash));
            long long d = std::stoll(text.substr(slash + 1));
            return Rational(n, d);
        }
        auto dot = text.find('.');
        if (dot == std::string::npos) return Rational(std::stoll(text));
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        std::size_t frac_len = text.size() - dot - 1;
        if (frac_len > 15) throw std::invalid_argument("decimal literal too long: " + text);
        long long d = 1;
        for (std::size_t i = 0; i < frac_len; ++i) d *= 10;
        return Rational(std::stoll(digits), d);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("cannot parse rational: " + text);
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("rational literal out of range: " + text);
    }
}

}  // namespace cyclepack
