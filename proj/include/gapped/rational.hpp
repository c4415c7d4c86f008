#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gapped {

// Exact rational with int64 numerator/denominator, always reduced,
// denominator > 0. Intermediate products run through __int128 and
// overflow past int64 is an error rather than a silent wrap.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    static Rational from_i128(__int128 n, __int128 d) {
        if (d == 0) throw std::invalid_argument("rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n, b = d;
        while (b) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        const __int128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi)
            throw std::overflow_error("rational: value out of 64-bit range");
        Rational r;
        r.num = static_cast<long long>(n);
        r.den = static_cast<long long>(d);
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_i128((__int128)a.num * b.den + (__int128)b.num * a.den,
                         (__int128)a.den * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from_i128((__int128)a.num * b.den - (__int128)b.num * a.den,
                         (__int128)a.den * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128((__int128)a.num * b.num, (__int128)a.den * b.den);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw std::domain_error("rational: division by zero");
        return from_i128((__int128)a.num * b.den, (__int128)a.den * b.num);
    }
    Rational operator-() const { Rational r; r.num = -num; r.den = den; return r; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num * b.den < (__int128)b.num * a.den;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }
};

inline Rational half(const Rational& x) { return x / Rational(2); }

inline long long floor_div(const Rational& a, const Rational& b) {
    if (b.num <= 0) throw std::domain_error("floor_div: divisor must be positive");
    __int128 n = (__int128)a.num * b.den;
    __int128 d = (__int128)a.den * b.num;
    __int128 q = n / d;
    if (n % d != 0 && (n < 0)) q -= 1;
    return static_cast<long long>(q);
}

inline Rational mul_int(const Rational& a, long long k) {
    return Rational::from_i128((__int128)a.num * k, a.den);
}

inline std::string format(const Rational& r) {
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

// Accepts "n" and "n/d". Rejects zero denominators by message so the
// diagnostic survives up to the file loader.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rational: empty string");
    size_t slash = s.find('/');
    auto parse_ll = [](const std::string& t) {
        size_t pos = 0;
        long long v = std::stoll(t, &pos);
        if (pos != t.size()) throw std::invalid_argument("rational: trailing characters in '" + t + "'");
        return v;
    };
    if (slash == std::string::npos) return Rational(parse_ll(s));
    long long n = parse_ll(s.substr(0, slash));
    long long d = parse_ll(s.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("rational: zero denominator");
    return Rational(n, d);
}

inline double to_double(const Rational& r) {
    return static_cast<double>(r.num) / static_cast<double>(r.den);
}

}  // namespace gapped
