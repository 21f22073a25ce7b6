#pragma once

// Double-double arithmetic: an unevaluated sum hi + lo of two doubles giving
// roughly 32 significant decimal digits. Only the operations the Bessel
// series needs are provided. Algorithms are the classical error-free
// transformations (Dekker, Knuth); products use std::fma so no build flags
// are required.

#include <cmath>

namespace besseltrace {

struct dd {
    double hi = 0.0;
    double lo = 0.0;

    constexpr dd() = default;
    constexpr dd(double h) : hi(h), lo(0.0) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi + lo; }
};

namespace detail {

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

// Requires |a| >= |b|.
inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

} // namespace detail

inline dd operator+(dd a, dd b) {
    dd s = detail::two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return detail::quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    dd p = detail::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return detail::quick_two_sum(p.hi, p.lo);
}

inline dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - b * dd(q1);
    double q2 = r.hi / b.hi;
    r = r - b * dd(q2);
    double q3 = r.hi / b.hi;
    dd q = detail::quick_two_sum(q1, q2);
    return q + dd(q3);
}

inline dd& operator+=(dd& a, dd b) { a = a + b; return a; }
inline dd& operator-=(dd& a, dd b) { a = a - b; return a; }
inline dd& operator*=(dd& a, dd b) { a = a * b; return a; }
inline dd& operator/=(dd& a, dd b) { a = a / b; return a; }

inline double abs_estimate(dd a) { return std::fabs(a.hi); }

// Complex value with dd components.
struct ddcomplex {
    dd re;
    dd im;

    constexpr ddcomplex() = default;
    constexpr ddcomplex(dd r, dd i = dd()) : re(r), im(i) {}
    constexpr ddcomplex(double r, double i = 0.0) : re(r), im(i) {}
};

inline ddcomplex operator+(ddcomplex a, ddcomplex b) { return {a.re + b.re, a.im + b.im}; }
inline ddcomplex operator-(ddcomplex a, ddcomplex b) { return {a.re - b.re, a.im - b.im}; }
inline ddcomplex operator-(ddcomplex a) { return {-a.re, -a.im}; }

inline ddcomplex operator*(ddcomplex a, ddcomplex b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline ddcomplex operator/(ddcomplex a, ddcomplex b) {
    dd den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

inline ddcomplex& operator+=(ddcomplex& a, ddcomplex b) { a = a + b; return a; }
inline ddcomplex& operator*=(ddcomplex& a, ddcomplex b) { a = a * b; return a; }

inline double abs_estimate(ddcomplex a) {
    return std::hypot(a.re.hi, a.im.hi);
}

} // namespace besseltrace
