#pragma once

// Bessel functions J, I, the Kuznetsov kernel B_{2it}, and Hankel functions,
// for integer, real and purely imaginary orders.
//
// Real orders delegate to the C++17 special math functions. Imaginary order
// nu = 2it is evaluated from the ascending series in double-double arithmetic
// (the series cancellation at x <= 60 costs up to ~25 digits, which plain
// doubles cannot absorb), switching to the Hankel large-argument expansion
// once it is accurate: 16 t^2 <= 1.7 x and x > 40. Envelope:
//   imaginary order: |t| <= 60 and (x <= 60 or 16 t^2 <= 1.7 x), x <= 1e6.
// Outside the envelope evaluation throws out_of_range_error.

#include <cmath>
#include <complex>
#include <numbers>

#include "besseltrace/dd.hpp"
#include "besseltrace/errors.hpp"
#include "besseltrace/gamma.hpp"

namespace besseltrace::special {

struct Order {
    enum class Kind { Integer, Real, Imaginary };
    Kind kind;
    long long n = 0;   // Integer
    double nu = 0.0;   // Real
    double t = 0.0;    // Imaginary: order is 2it

    static Order integer(long long n) { return {Kind::Integer, n, 0.0, 0.0}; }
    static Order real(double nu) { return {Kind::Real, 0, nu, 0.0}; }
    static Order imaginary(double t) { return {Kind::Imaginary, 0, 0.0, t}; }

    Order negated() const {
        switch (kind) {
            case Kind::Integer: return integer(-n);
            case Kind::Real: return real(-nu);
            default: return imaginary(-t);
        }
    }

    std::complex<double> value() const {
        switch (kind) {
            case Kind::Integer: return {static_cast<double>(n), 0.0};
            case Kind::Real: return {nu, 0.0};
            default: return {0.0, 2.0 * t};
        }
    }
};

namespace detail {

// Ascending series for J (sign = -1) or I (sign = +1) of complex order at a
// complex argument, in double-double arithmetic:
//   f_nu(z) = (z/2)^nu / Gamma(nu+1) * sum_m sign^m (z/2)^{2m} / (m! (nu+1)_m)
// The sum runs in ddcomplex; the unimodular-scale prefactor is ordinary
// complex double (it multiplies the result, so its 1e-16 relative error does
// not participate in the cancellation inside the sum).
// The hypergeometric-type sum alone (prefactor (z/2)^nu/Gamma(nu+1) not applied).
inline std::complex<double> series_sum_dd(std::complex<double> nu, std::complex<double> z,
                                          int sign) {
    // (z/2)^2 with exact low parts
    double zr = z.real() / 2.0, zi = z.imag() / 2.0;
    dd a2r = dd(zr) * dd(zr) - dd(zi) * dd(zi);
    dd a2i = dd(2.0) * dd(zr) * dd(zi);
    ddcomplex q{sign > 0 ? a2r : -a2r, sign > 0 ? a2i : -a2i};

    ddcomplex term{dd(1.0), dd(0.0)};
    ddcomplex sum = term;
    double max_mag = 1.0;
    for (int m = 1; m <= 500; ++m) {
        ddcomplex denom{dd(static_cast<double>(m)) * dd(nu.real() + m),
                        dd(static_cast<double>(m)) * dd(nu.imag())};
        term = term * q / denom;
        sum += term;
        double mag = abs_estimate(term);
        if (mag > max_mag) max_mag = mag;
        if (mag < 1e-36 * max_mag && m > std::abs(z) / 2.0) break;
    }
    return {sum.re.to_double(), sum.im.to_double()};
}

inline std::complex<double> series_complex_order_dd(std::complex<double> nu,
                                                    std::complex<double> z, int sign) {
    std::complex<double> pre =
        std::exp(nu * std::log(z / 2.0)) / gamma_complex(nu + 1.0);
    return pre * series_sum_dd(nu, z, sign);
}

// Hankel large-argument expansion for complex order, usable once
// |4 nu^2| is small against 8x. Stops at the smallest term.
inline std::complex<double> asymptotic_complex_order(std::complex<double> nu, double x) {
    std::complex<double> mu = 4.0 * nu * nu;
    std::complex<double> omega =
        x - nu * (std::numbers::pi / 2.0) - std::numbers::pi / 4.0;
    std::complex<double> P = 1.0, Q = 0.0;
    std::complex<double> c = 1.0;
    double cmag_prev = 1.0;
    for (int j = 1; j <= 40; ++j) {
        double odd = static_cast<double>(2 * j - 1);
        c *= (mu - odd * odd) / (8.0 * j * x);
        double cmag = std::abs(c);
        if (cmag > cmag_prev) break; // past optimal truncation
        cmag_prev = cmag;
        int r = j % 4;
        if (r == 1) Q += c;
        else if (r == 2) P -= c;
        else if (r == 3) Q -= c;
        else P += c;
        if (cmag < 1e-18) break;
    }
    return std::sqrt(2.0 / (std::numbers::pi * x)) *
           (std::cos(omega) * P - std::sin(omega) * Q);
}

inline bool asymptotic_ok(double t, double x) {
    return 16.0 * t * t <= 1.7 * x;
}

inline std::complex<double> bessel_j_imag_t(double t, double x) {
    if (std::abs(t) > 60.0)
        throw out_of_range_error("bessel_j: imaginary order |t| > 60 not validated");
    if (x > 1e6)
        throw out_of_range_error("bessel_j: x > 1e6 not validated");
    std::complex<double> nu{0.0, 2.0 * t};
    if (x <= 40.0) return series_complex_order_dd(nu, x, -1);
    if (asymptotic_ok(t, x)) return asymptotic_complex_order(nu, x);
    if (x <= 60.0) return series_complex_order_dd(nu, x, -1);
    throw out_of_range_error(
        "bessel_j: imaginary order outside validated envelope (x > 60 and 16t^2 > 1.7x)");
}

// J of real order via the standard library, with the connection formula for
// negative non-integer order.
inline double bessel_j_real(double nu, double x) {
    if (nu >= 0.0) return std::cyl_bessel_j(nu, x);
    if (nu == std::floor(nu)) {
        double v = std::cyl_bessel_j(-nu, x);
        return static_cast<long long>(-nu) % 2 == 0 ? v : -v;
    }
    double p = -nu;
    return std::cyl_bessel_j(p, x) * std::cos(p * std::numbers::pi) -
           std::cyl_neumann(p, x) * std::sin(p * std::numbers::pi);
}

} // namespace detail

inline std::complex<double> bessel_j(Order order, double x) {
    if (x < 0.0) throw invalid_value_error("bessel_j: x must be >= 0");
    switch (order.kind) {
        case Order::Kind::Integer: {
            if (x == 0.0) return order.n == 0 ? 1.0 : 0.0;
            double v = std::cyl_bessel_j(static_cast<double>(std::llabs(order.n)), x);
            return (order.n < 0 && order.n % 2 != 0) ? -v : v;
        }
        case Order::Kind::Real: {
            if (x == 0.0) {
                if (order.nu == 0.0) return 1.0;
                if (order.nu > 0.0) return 0.0;
                throw invalid_value_error("bessel_j: negative order at x = 0");
            }
            return detail::bessel_j_real(order.nu, x);
        }
        default: {
            if (order.t == 0.0) return x == 0.0 ? 1.0 : std::cyl_bessel_j(0.0, x);
            if (x == 0.0)
                throw invalid_value_error("bessel_j: imaginary order needs x > 0");
            std::complex<double> v = detail::bessel_j_imag_t(std::abs(order.t), x);
            // J_{-2it}(x) = conj(J_{2it}(x)) for real x
            return order.t >= 0.0 ? v : std::conj(v);
        }
    }
}

// Modified Bessel I. Accepts real arguments and arguments on the imaginary
// rays (the contour checks evaluate I_nu(y/t) for t on the imaginary axis);
// other complex arguments go through the dd series with |z| <= 60.
inline std::complex<double> bessel_i(Order order, std::complex<double> z) {
    std::complex<double> nu = order.value();
    if (z.imag() == 0.0) {
        double x = z.real();
        if (x < 0.0) throw invalid_value_error("bessel_i: real argument must be >= 0");
        switch (order.kind) {
            case Order::Kind::Integer:
                if (x == 0.0) return order.n == 0 ? 1.0 : 0.0;
                return std::cyl_bessel_i(static_cast<double>(std::llabs(order.n)), x);
            case Order::Kind::Real: {
                if (order.nu >= 0.0) return std::cyl_bessel_i(order.nu, x);
                double p = -order.nu;
                if (p == std::floor(p)) return std::cyl_bessel_i(p, x);
                // I_{-p} = I_p + (2/pi) sin(p pi) K_p
                return std::cyl_bessel_i(p, x) +
                       2.0 / std::numbers::pi * std::sin(p * std::numbers::pi) *
                           std::cyl_bessel_k(p, x);
            }
            default: {
                if (std::abs(order.t) > 60.0)
                    throw out_of_range_error("bessel_i: |t| > 60 not validated");
                if (x > 60.0)
                    throw out_of_range_error("bessel_i: real x > 60 not validated for imaginary order");
                if (x == 0.0) return order.t == 0.0 ? 1.0 : std::complex<double>{0, 0};
                return detail::series_complex_order_dd(nu, x, +1);
            }
        }
    }
    if (z.real() == 0.0) {
        // I_nu(+i y) = e^{+i pi nu/2} J_nu(y), I_nu(-i y) = e^{-i pi nu/2} J_nu(y)
        double y = std::abs(z.imag());
        std::complex<double> rot =
            std::exp(std::complex<double>(0, z.imag() > 0 ? 1.0 : -1.0) *
                     (std::numbers::pi / 2.0) * nu);
        return rot * bessel_j(order, y);
    }
    if (std::abs(z) > 60.0)
        throw out_of_range_error("bessel_i: general complex |z| > 60 not validated");
    return detail::series_complex_order_dd(nu, z, +1);
}

namespace detail {

// t = 0 limit of B: -(2/pi) d/dnu J_nu(x) at nu = 0, i.e. -Y_0(x).
inline double bessel_b_limit_t0(double x) {
    return -std::cyl_neumann(0.0, x);
}

} // namespace detail

inline constexpr double bessel_b_t_cut = 1e-8;

// B_{2it}(x) = (J_{-2it}(x) - J_{2it}(x)) / (2 sin(pi i t)), real and even in
// t. Computed as -Im(J_{2it}(x)) / sinh(pi t); with the dd series behind
// J_{2it}, this stays accurate down to |t| ~ 1e-8, below which the t = 0
// limit -Y_0(x) is used (relative error O(t^2)). For t > 60 (convergence
// audits) the e^{pi t} growth of J against sinh is cancelled in log space:
//   B = -2 Im( e^{ln P - pi t} S ) / (1 - e^{-2 pi t}),
// P the series prefactor and S the remaining sum; valid for x <= 40 where
// the order dominates the argument.
inline double bessel_b(double t, double x) {
    if (x <= 0.0) throw invalid_value_error("bessel_b: x must be > 0");
    t = std::abs(t);
    if (t < bessel_b_t_cut) return detail::bessel_b_limit_t0(x);
    if (t <= 60.0) {
        std::complex<double> j = bessel_j(Order::imaginary(t), x);
        return -j.imag() / std::sinh(std::numbers::pi * t);
    }
    if (t > 250.0) throw out_of_range_error("bessel_b: |t| > 250 not validated");
    if (x > 40.0)
        throw out_of_range_error("bessel_b: x > 40 not validated for |t| > 60");
    std::complex<double> nu{0.0, 2.0 * t};
    std::complex<double> lnP =
        nu * std::log(x / 2.0) - log_gamma_right_half(nu + 1.0);
    std::complex<double> scaled_pre = std::exp(lnP - std::numbers::pi * t);
    std::complex<double> S = detail::series_sum_dd(nu, x, -1);
    return -2.0 * (scaled_pre * S).imag() /
           (1.0 - std::exp(-2.0 * std::numbers::pi * t));
}

// e^{-z} I_nu(z) by the large-argument expansion, for Re z >= 30 and moderate
// order. Lets integrands form exp(phase + z) * [e^{-z} I_nu(z)] in log space
// where I_nu alone would overflow.
inline std::complex<double> bessel_i_scaled_large(Order nu, std::complex<double> z) {
    if (z.real() < 30.0)
        throw out_of_range_error("bessel_i_scaled_large: requires Re z >= 30");
    std::complex<double> v = nu.value();
    std::complex<double> mu = 4.0 * v * v;
    std::complex<double> sum = 1.0, c = 1.0;
    double cmag_prev = 1.0;
    for (int j = 1; j <= 30; ++j) {
        double odd = static_cast<double>(2 * j - 1);
        c *= -(mu - odd * odd) / (8.0 * j * z);
        double cmag = std::abs(c);
        if (cmag > cmag_prev) break;
        cmag_prev = cmag;
        sum += c;
        if (cmag < 1e-18) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

namespace detail {

inline bool is_integer_order(const Order& o) {
    if (o.kind == Order::Kind::Integer) return true;
    if (o.kind == Order::Kind::Real) return o.nu == std::floor(o.nu);
    return o.t == 0.0;
}

} // namespace detail

// H^(1)_alpha = (J_{-alpha} - e^{-i pi alpha} J_alpha) / (i sin(pi alpha)).
inline std::complex<double> hankel1(Order alpha, double x) {
    if (detail::is_integer_order(alpha))
        throw integer_order_error("hankel1: integer order not supported by this expansion");
    std::complex<double> a = alpha.value();
    std::complex<double> jm = bessel_j(alpha.negated(), x);
    std::complex<double> jp = bessel_j(alpha, x);
    std::complex<double> i{0.0, 1.0};
    return (jm - std::exp(-a * std::numbers::pi * i) * jp) /
           (i * std::sin(a * std::numbers::pi));
}

// H^(2)_alpha = (J_{-alpha} - e^{+i pi alpha} J_alpha) / (-i sin(pi alpha)).
inline std::complex<double> hankel2(Order alpha, double x) {
    if (detail::is_integer_order(alpha))
        throw integer_order_error("hankel2: integer order not supported by this expansion");
    std::complex<double> a = alpha.value();
    std::complex<double> jm = bessel_j(alpha.negated(), x);
    std::complex<double> jp = bessel_j(alpha, x);
    std::complex<double> i{0.0, 1.0};
    return (jm - std::exp(a * std::numbers::pi * i) * jp) /
           (-i * std::sin(a * std::numbers::pi));
}

} // namespace besseltrace::special
