#pragma once

// Geometric sides of the Kuznetsov/Petersson formulas and their diagonal and
// kernel terms:
//   geometric side  sum_c S(m1,m2,c) V(4 pi sqrt(m1 m2)/c) / c
//   G0     = (1/pi) int_R G(t) tanh(pi t) t dt
//   (1/pi) sum_{k>0 even} (k-1) G(k)          (Petersson diagonal)
//   G+(x)  = 4 int_0^inf G(t) tanh(pi t) B_{2it}(x) t dt
//   Ghat(x)= 4 sum_{k>0 even} (k-1) G(k) J_{k-1}(x)

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>

#include "besseltrace/arith.hpp"
#include "besseltrace/bessel.hpp"
#include "besseltrace/bump.hpp"
#include "besseltrace/errors.hpp"
#include "besseltrace/quadrature.hpp"

namespace besseltrace::trace {

struct GeometricSideSpec {
    std::int64_t m1;
    std::int64_t m2;
    transforms::BumpFunction V;
};

struct CRange {
    std::int64_t lo;
    std::int64_t hi; // inclusive; lo > hi means empty
};

// Support [a,b] of V implies 4 pi sqrt(m1 m2)/c in [a,b]; one unit of slack
// on each side absorbs endpoint rounding.
inline CRange c_range(const GeometricSideSpec& spec) {
    double root = 4.0 * std::numbers::pi *
                  std::sqrt(static_cast<double>(spec.m1)) *
                  std::sqrt(static_cast<double>(spec.m2));
    std::int64_t lo = static_cast<std::int64_t>(std::floor(root / spec.V.b)) - 1;
    std::int64_t hi = static_cast<std::int64_t>(std::ceil(root / spec.V.a)) + 1;
    if (lo < 1) lo = 1;
    return {lo, hi};
}

inline double geometric_side(const GeometricSideSpec& spec, arith::KloostermanCache& cache) {
    if (spec.m1 < 1 || spec.m2 < 1)
        throw invalid_value_error("geometric_side: m1,m2 must be >= 1");
    CRange cr = c_range(spec);
    double root = 4.0 * std::numbers::pi *
                  std::sqrt(static_cast<double>(spec.m1)) *
                  std::sqrt(static_cast<double>(spec.m2));
    double s = 0.0, comp = 0.0;
    for (std::int64_t c = cr.lo; c <= cr.hi; ++c) {
        double v = spec.V(root / static_cast<double>(c));
        if (v == 0.0) continue;
        double term = cache.value(spec.m1, spec.m2, c) * v / static_cast<double>(c);
        double y = term - comp;
        double t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    return s;
}

// (1/pi) int_R h(t) tanh(pi t) t dt for even decaying h, via parity doubling.
inline quad::QuadResult kuznetsov_diag(const std::function<double(double)>& h,
                                       const quad::QuadSpec& spec = quad::default_spec_1d()) {
    quad::QuadResult r = quad::integrate_semi_infinite(
        [&](double t) { return h(t) * std::tanh(std::numbers::pi * t) * t; }, 0.0, spec);
    r.value *= 2.0 / std::numbers::pi;
    r.error_estimate *= 2.0 / std::numbers::pi;
    return r;
}

struct TruncatedSum {
    double value = 0.0;
    double tail_bound = 0.0;
    int terms = 0;
};

// (1/pi) sum_{k>0 even} (k-1) h(k); h must decay superpolynomially.
inline TruncatedSum petersson_diag(const std::function<double(int)>& h,
                                   double rel_tail_tol = 1e-12, int k_cap = 20000) {
    TruncatedSum out;
    double s = 0.0;
    int consecutive_small = 0;
    double last = 0.0;
    int k = 2;
    for (; k <= k_cap; k += 2) {
        double term = (k - 1) * h(k);
        s += term;
        last = std::abs(term);
        ++out.terms;
        if (last <= rel_tail_tol * std::max(1e-300, std::abs(s)))
            ++consecutive_small;
        else
            consecutive_small = 0;
        if (consecutive_small >= 3) break;
    }
    if (k > k_cap)
        throw tail_error("petersson_diag: tail not negligible by k_cap");
    out.value = s / std::numbers::pi;
    out.tail_bound = last / std::numbers::pi;
    return out;
}

// G+(x) = 4 int_0^{T_max} h(t) tanh(pi t) B_{2it}(x) t dt, truncation recorded.
inline quad::QuadResult b_plus_kernel(const std::function<double(double)>& h, double x,
                                      double t_max = 30.0,
                                      const quad::QuadSpec& spec = quad::default_spec_1d()) {
    quad::QuadResult r = quad::integrate_1d(
        [&](double t) {
            return h(t) * std::tanh(std::numbers::pi * t) * special::bessel_b(t, x) * t;
        },
        0.0, t_max, spec);
    r.value *= 4.0;
    r.error_estimate *= 4.0;
    r.error_estimate += 4.0 * std::abs(h(t_max)) * t_max; // truncation envelope
    return r;
}

// Ghat(x) = 4 sum_{0<k<=K_max even} (k-1) h(k) J_{k-1}(x).
inline TruncatedSum g_hat_kernel(const std::function<double(int)>& h, double x,
                                 int k_max = 60) {
    TruncatedSum out;
    double s = 0.0;
    double last = 0.0;
    for (int k = 2; k <= k_max; k += 2) {
        double term =
            (k - 1) * h(k) * special::bessel_j(special::Order::integer(k - 1), x).real();
        s += term;
        last = std::abs(term);
        ++out.terms;
    }
    out.value = 4.0 * s;
    out.tail_bound = 4.0 * last;
    return out;
}

} // namespace besseltrace::trace
