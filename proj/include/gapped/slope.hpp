#pragma once

#include <stdexcept>
#include <string>

#include "gapped/rational.hpp"

namespace gapped {

// Number of the form 2*pi*q + r with q, r exact rationals and 2*pi kept
// formal. Ordering is lexicographic in (q, r); this matches the real order
// whenever the rational parts involved stay within one period, which holds
// for every slope this project manipulates (sample offsets below 2*pi plus
// rational translations).
struct TwoPiSlope {
    Rational two_pi;  // coefficient of 2*pi
    Rational rest;    // rational remainder

    TwoPiSlope() = default;
    TwoPiSlope(Rational q, Rational r) : two_pi(q), rest(r) {}
    explicit TwoPiSlope(long long c) : two_pi(0), rest(c) {}

    friend TwoPiSlope operator+(const TwoPiSlope& a, const TwoPiSlope& b) {
        return {a.two_pi + b.two_pi, a.rest + b.rest};
    }
    friend TwoPiSlope operator-(const TwoPiSlope& a, const TwoPiSlope& b) {
        return {a.two_pi - b.two_pi, a.rest - b.rest};
    }
    TwoPiSlope operator-() const { return {-two_pi, -rest}; }

    friend bool operator==(const TwoPiSlope& a, const TwoPiSlope& b) {
        return a.two_pi == b.two_pi && a.rest == b.rest;
    }
    friend bool operator!=(const TwoPiSlope& a, const TwoPiSlope& b) { return !(a == b); }
    friend bool operator<(const TwoPiSlope& a, const TwoPiSlope& b) {
        if (a.two_pi != b.two_pi) return a.two_pi < b.two_pi;
        return a.rest < b.rest;
    }
    friend bool operator>(const TwoPiSlope& a, const TwoPiSlope& b) { return b < a; }
    friend bool operator<=(const TwoPiSlope& a, const TwoPiSlope& b) { return !(b < a); }
    friend bool operator>=(const TwoPiSlope& a, const TwoPiSlope& b) { return !(a < b); }
};

inline TwoPiSlope half(const TwoPiSlope& x) { return {half(x.two_pi), half(x.rest)}; }

inline TwoPiSlope mul_int(const TwoPiSlope& a, long long k) {
    return {mul_int(a.two_pi, k), mul_int(a.rest, k)};
}

// floor(t / step) in the lexicographic order; step must be a positive pure
// 2*pi multiple (the only step shape slope-indexed modules use).
inline long long floor_div(const TwoPiSlope& t, const TwoPiSlope& step) {
    if (!(step.rest == Rational(0)) || !(Rational(0) < step.two_pi))
        throw std::domain_error("slope floor_div: step must be a positive multiple of 2*pi");
    long long k = floor_div(t.two_pi, step.two_pi);
    // adjust so that k*step <= t < (k+1)*step in lexicographic order
    while (!(mul_int(step, k) <= t)) --k;
    while (mul_int(step, k + 1) <= t) ++k;
    return k;
}

inline std::string format(const TwoPiSlope& s) {
    if (s.two_pi == Rational(0)) return format(s.rest);
    std::string out = format(s.two_pi) + "*2pi";
    if (s.rest == Rational(0)) return out;
    if (s.rest > Rational(0)) return out + "+" + format(s.rest);
    return out + "-" + format(-s.rest);
}

inline double to_double(const TwoPiSlope& s) {
    return to_double(s.two_pi) * 6.283185307179586 + to_double(s.rest);
}

// Inverse of format(); accepts "r", "q*2pi", "q*2pi+r", "q*2pi-r".
inline TwoPiSlope parse_slope(const std::string& text) {
    size_t mark = text.find("*2pi");
    if (mark == std::string::npos) return TwoPiSlope(Rational(0), parse_rational(text));
    Rational q = parse_rational(text.substr(0, mark));
    std::string tail = text.substr(mark + 4);
    if (tail.empty()) return TwoPiSlope(q, Rational(0));
    if (tail[0] == '+') return TwoPiSlope(q, parse_rational(tail.substr(1)));
    if (tail[0] == '-') return TwoPiSlope(q, -parse_rational(tail.substr(1)));
    throw std::invalid_argument("slope: malformed text '" + text + "'");
}

}  // namespace gapped
