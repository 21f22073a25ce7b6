#pragma once

// Smooth compactly supported test functions on the positive reals.

#include <cmath>

#include "besseltrace/errors.hpp"
#include "besseltrace/quadrature.hpp"

namespace besseltrace::transforms {

enum class BumpProfile {
    smooth_exp, // amplitude * exp(-1/((x-a)(b-x))) on (a,b)
};

struct BumpFunction {
    double a;
    double b;
    BumpProfile profile = BumpProfile::smooth_exp;
    double amplitude = 1.0;

    double operator()(double x) const {
        if (x <= a || x >= b) return 0.0;
        double u = (x - a) * (b - x);
        return amplitude * std::exp(-1.0 / u);
    }
};

inline BumpFunction make_bump(double a, double b, double amplitude = 1.0) {
    if (!(a > 0.0) || !(b > a))
        throw invalid_value_error("make_bump: need 0 < a < b");
    return {a, b, BumpProfile::smooth_exp, amplitude};
}

inline double bump_eval(const BumpFunction& f, double x) { return f(x); }

// Rescales the amplitude so the integral over (0,inf) is 1.
inline BumpFunction normalize_weight(const BumpFunction& g,
                                     const quad::QuadSpec& spec = quad::default_spec_1d()) {
    if (g.amplitude == 0.0) throw zero_function_error("normalize_weight: zero amplitude");
    quad::QuadResult mass =
        quad::integrate_1d([&](double x) { return g(x); }, g.a, g.b, spec);
    double m = mass.value.real();
    if (m <= 0.0) throw zero_function_error("normalize_weight: vanishing integral");
    BumpFunction out = g;
    out.amplitude /= m;
    return out;
}

} // namespace besseltrace::transforms
