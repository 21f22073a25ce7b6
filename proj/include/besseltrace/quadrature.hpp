#pragma once

// Deterministic adaptive quadrature built on the Gauss-Kronrod 7-15 pair:
// 1D intervals, semi-infinite rays, tensor-product 2D boxes, symmetric
// principal values, and contour integrals along the imaginary axis.
// Subdivision always splits the worst interval (ties broken by position), so
// identical inputs give bit-identical results at any thread count. A failed
// tolerance is reported through QuadResult::converged, not an exception.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "besseltrace/errors.hpp"

namespace besseltrace::quad {

struct QuadSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_depth = 30;
    long max_evals = 1'000'000;
};

inline QuadSpec default_spec_1d() { return {1e-10, 1e-8, 30, 1'000'000}; }
// 2D cost dominates; the V*W kernel is smooth but oscillatory.
inline QuadSpec default_spec_2d() { return {1e-8, 1e-8, 34, 20'000'000}; }

struct QuadResult {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0;
    long evals = 0;
    bool converged = false;
};

namespace detail {

// QUADPACK 15-point Kronrod nodes and weights with the embedded 7-point Gauss
// rule, on [-1,1].
inline constexpr double gk_x[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

// Full 15-node layout: nodes[0..14] ascending, with Kronrod and (zero-padded)
// Gauss weights aligned.
struct Rule15 {
    double node[15];
    double wk[15];
    double wg[15];

    constexpr Rule15() : node{}, wk{}, wg{} {
        for (int j = 0; j < 7; ++j) {
            node[j] = -gk_x[j];
            node[14 - j] = gk_x[j];
            wk[j] = gk_wk[j];
            wk[14 - j] = gk_wk[j];
        }
        node[7] = 0.0;
        wk[7] = gk_wk[7];
        // Gauss nodes sit at Kronrod indices 1,3,5,7,9,11,13
        for (int g = 0; g < 3; ++g) {
            wg[1 + 2 * g] = gk_wg[g];
            wg[13 - 2 * g] = gk_wg[g];
        }
        wg[7] = gk_wg[3];
    }
};

inline constexpr Rule15 rule15{};

template <class F>
void gk15(const F& f, double a, double b, std::complex<double>& valK, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::complex<double> sK{0.0, 0.0}, sG{0.0, 0.0};
    for (int i = 0; i < 15; ++i) {
        std::complex<double> v = f(c + h * rule15.node[i]);
        sK += rule15.wk[i] * v;
        sG += rule15.wg[i] * v;
    }
    valK = h * sK;
    err = std::abs(h * (sK - sG));
}

struct Segment {
    double a, b;
    std::complex<double> val;
    double err;
    int depth;
};

struct SegmentWorse {
    bool operator()(const Segment& l, const Segment& r) const {
        if (l.err != r.err) return l.err < r.err; // max-heap on error
        if (l.a != r.a) return l.a > r.a;         // ties: leftmost first
        return l.b > r.b;
    }
};

} // namespace detail

template <class F>
QuadResult integrate_1d(const F& f, double a, double b, const QuadSpec& spec) {
    QuadResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    auto fc = [&](double x) -> std::complex<double> { return f(x); };
    std::priority_queue<detail::Segment, std::vector<detail::Segment>, detail::SegmentWorse> heap;
    detail::Segment s{a, b, {}, 0.0, 0};
    detail::gk15(fc, a, b, s.val, s.err);
    res.evals = 15;
    std::complex<double> total = s.val;
    double total_err = s.err;
    heap.push(s);
    auto tol = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
    while (total_err > tol()) {
        const detail::Segment top = heap.top();
        if (top.depth >= spec.max_depth || res.evals + 30 > spec.max_evals) break;
        heap.pop();
        double mid = 0.5 * (top.a + top.b);
        detail::Segment l{top.a, mid, {}, 0.0, top.depth + 1};
        detail::Segment r{mid, top.b, {}, 0.0, top.depth + 1};
        detail::gk15(fc, l.a, l.b, l.val, l.err);
        detail::gk15(fc, r.a, r.b, r.val, r.err);
        res.evals += 30;
        total += (l.val + r.val) - top.val;
        total_err += (l.err + r.err) - top.err;
        heap.push(l);
        heap.push(r);
    }
    res.value = total;
    res.error_estimate = total_err;
    res.converged = total_err <= tol();
    return res;
}

// Integral over [a, infinity) via u = 1/(1 + x - a); the cutoff tail estimate
// |f(x_max)| * x_max is folded into error_estimate.
template <class F>
QuadResult integrate_semi_infinite(const F& f, double a, const QuadSpec& spec) {
    const double u_min = 1e-7;
    auto g = [&](double u) -> std::complex<double> {
        double x = a + (1.0 - u) / u;
        return std::complex<double>(f(x)) / (u * u);
    };
    QuadResult res = integrate_1d(g, u_min, 1.0, spec);
    double x_max = a + (1.0 - u_min) / u_min;
    double tail = std::abs(std::complex<double>(f(x_max))) * std::max(1.0, x_max);
    res.evals += 1;
    res.error_estimate += tail;
    res.converged = res.converged && res.error_estimate <=
                        std::max(spec.abs_tol, spec.rel_tol * std::abs(res.value));
    return res;
}

namespace detail {

struct Box {
    double ax, bx, ay, by;
    std::complex<double> val;
    double err, errx, erry;
    int depth;
};

struct BoxWorse {
    bool operator()(const Box& l, const Box& r) const {
        if (l.err != r.err) return l.err < r.err;
        if (l.ax != r.ax) return l.ax > r.ax;
        if (l.ay != r.ay) return l.ay > r.ay;
        return l.bx > r.bx;
    }
};

template <class F>
void gk15_2d(const F& f, Box& b) {
    const double cx = 0.5 * (b.ax + b.bx), hx = 0.5 * (b.bx - b.ax);
    const double cy = 0.5 * (b.ay + b.by), hy = 0.5 * (b.by - b.ay);
    std::complex<double> rowK[15], rowG[15];
    for (int i = 0; i < 15; ++i) {
        std::complex<double> sk{0.0, 0.0}, sg{0.0, 0.0};
        double x = cx + hx * rule15.node[i];
        for (int j = 0; j < 15; ++j) {
            std::complex<double> v = f(x, cy + hy * rule15.node[j]);
            sk += rule15.wk[j] * v;
            sg += rule15.wg[j] * v;
        }
        rowK[i] = sk;
        rowG[i] = sg;
    }
    std::complex<double> KK{0, 0}, GK{0, 0}, KG{0, 0};
    for (int i = 0; i < 15; ++i) {
        KK += rule15.wk[i] * rowK[i];
        GK += rule15.wg[i] * rowK[i];
        KG += rule15.wk[i] * rowG[i];
    }
    double scale = hx * hy;
    b.val = scale * KK;
    b.errx = std::abs(scale * (KK - GK));
    b.erry = std::abs(scale * (KK - KG));
    b.err = b.errx + b.erry;
}

} // namespace detail

template <class F>
QuadResult integrate_2d(const F& f, double ax, double bx, double ay, double by,
                        const QuadSpec& spec) {
    QuadResult res;
    if (ax == bx || ay == by) {
        res.converged = true;
        return res;
    }
    std::priority_queue<detail::Box, std::vector<detail::Box>, detail::BoxWorse> heap;
    detail::Box b{ax, bx, ay, by, {}, 0.0, 0.0, 0.0, 0};
    detail::gk15_2d(f, b);
    res.evals = 225;
    std::complex<double> total = b.val;
    double total_err = b.err;
    heap.push(b);
    auto tol = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
    while (total_err > tol()) {
        const detail::Box top = heap.top();
        if (top.depth >= spec.max_depth || res.evals + 450 > spec.max_evals) break;
        heap.pop();
        detail::Box l = top, r = top;
        if (top.errx >= top.erry) {
            double mid = 0.5 * (top.ax + top.bx);
            l.bx = mid;
            r.ax = mid;
        } else {
            double mid = 0.5 * (top.ay + top.by);
            l.by = mid;
            r.ay = mid;
        }
        l.depth = r.depth = top.depth + 1;
        detail::gk15_2d(f, l);
        detail::gk15_2d(f, r);
        res.evals += 450;
        total += (l.val + r.val) - top.val;
        total_err += (l.err + r.err) - top.err;
        heap.push(l);
        heap.push(r);
    }
    res.value = total;
    res.error_estimate = total_err;
    res.converged = total_err <= tol();
    return res;
}

// PV integral of f over [center-halfwidth, center+halfwidth] through a simple
// 1/x singularity at center: symmetric epsilon exclusion with Richardson
// extrapolation over an epsilon ladder (error expansion in odd powers).
template <class F>
QuadResult principal_value(const F& f, double center, double halfwidth,
                           const QuadSpec& spec) {
    if (halfwidth <= 0.0) throw invalid_value_error("principal_value: halfwidth > 0");
    constexpr int kLadder = 8;
    QuadResult res;
    double eps = halfwidth / 4.0;
    QuadResult right = integrate_1d(f, center + eps, center + halfwidth, spec);
    QuadResult left = integrate_1d(f, center - halfwidth, center - eps, spec);
    res.evals = right.evals + left.evals;
    double quad_err = right.error_estimate + left.error_estimate;
    bool conv = right.converged && left.converged;
    std::complex<double> base = right.value + left.value;
    std::vector<std::complex<double>> g{base};
    for (int j = 1; j <= kLadder; ++j) {
        double e_new = eps / 2.0;
        QuadResult r2 = integrate_1d(f, center + e_new, center + eps, spec);
        QuadResult l2 = integrate_1d(f, center - eps, center - e_new, spec);
        res.evals += r2.evals + l2.evals;
        quad_err += r2.error_estimate + l2.error_estimate;
        conv = conv && r2.converged && l2.converged;
        base += r2.value + l2.value;
        g.push_back(base);
        eps = e_new;
    }
    // Neville elimination of the eps, eps^3, eps^5, ... error terms
    // (halving ladder: factors 2, 8, 32, ...).
    std::vector<std::complex<double>> row = g;
    double extrap_resid = 0.0;
    for (int lvl = 0; lvl + 1 < static_cast<int>(row.size()); ++lvl) {
        double factor = std::pow(2.0, 2 * lvl + 1);
        std::vector<std::complex<double>> next;
        for (std::size_t i = 0; i + 1 < row.size(); ++i)
            next.push_back((factor * row[i + 1] - row[i]) / (factor - 1.0));
        extrap_resid = std::abs(next.back() - row.back());
        row = std::move(next);
    }
    res.value = row.back();
    res.error_estimate = quad_err + extrap_resid;
    res.converged =
        conv && res.error_estimate <=
                    std::max(spec.abs_tol * 10.0, spec.rel_tol * std::abs(res.value));
    return res;
}

enum class ContourSegment { full, upper, lower };

namespace detail {

struct ContourPiece {
    std::complex<double> value{0.0, 0.0};
    double err = 0.0;
    long evals = 0;
    bool conv = true;

    void absorb(const QuadResult& r) {
        value += r.value;
        err += r.error_estimate;
        evals += r.evals;
        conv = conv && r.converged;
    }
};

} // namespace detail

// Radius of the indentation semicircle around t = 0.
inline constexpr double contour_indent_radius = 0.5;

// Contour integral of f along the imaginary axis with the origin indented
// into the right half plane (where exp(-c/t)-type factors die off):
//   full:  t from -i*cutoff to +i*cutoff
//   upper: t from 0 to +i*cutoff       lower: t from 0 to -i*cutoff
// The half contours start at the origin and leave it along the positive real
// axis, then swing to the imaginary axis on the arc |t| = r0; the full
// contour keeps only the arc. f must be analytic inside the indentation
// half-disk (away from t = 0), which holds for the Bessel-product integrands
// this serves. The real segment is parametrized x = s^2 to absorb a possible
// x^{-1/2} endpoint.
template <class F>
QuadResult contour_imag_axis(const F& f, double cutoff, const QuadSpec& spec,
                             ContourSegment segment = ContourSegment::full) {
    const double r0 = std::min(contour_indent_radius, cutoff / 4.0);
    if (!(cutoff > r0))
        throw invalid_value_error("contour_imag_axis: cutoff too small");
    const std::complex<double> i{0.0, 1.0};
    detail::ContourPiece out;

    auto arc = [&](double theta_lo, double theta_hi) {
        return integrate_1d(
            [&](double th) -> std::complex<double> {
                std::complex<double> t = r0 * std::exp(i * th);
                return f(t) * i * t;
            },
            theta_lo, theta_hi, spec);
    };
    auto axis = [&](int sigma) { // path from sigma*i*r0 to sigma*i*cutoff
        QuadResult r = integrate_1d(
            [&](double u) -> std::complex<double> {
                return f(std::complex<double>{0.0, sigma * u});
            },
            r0, cutoff, spec);
        r.value *= static_cast<double>(sigma) * i;
        return r;
    };
    auto real_stub = [&] { // path from 0 to r0 on the real axis, x = s^2
        const double s_min = 1e-9;
        return integrate_1d(
            [&](double s) -> std::complex<double> {
                return f(std::complex<double>{s * s, 0.0}) * 2.0 * s;
            },
            s_min, std::sqrt(r0), spec);
    };

    switch (segment) {
        case ContourSegment::full:
            out.absorb(arc(-std::numbers::pi / 2.0, std::numbers::pi / 2.0));
            out.absorb(axis(+1));
            {
                QuadResult down = axis(-1);
                down.value = -down.value; // traversed from -i*cutoff upward
                out.absorb(down);
            }
            break;
        case ContourSegment::upper:
            out.absorb(real_stub());
            out.absorb(arc(0.0, std::numbers::pi / 2.0));
            out.absorb(axis(+1));
            break;
        case ContourSegment::lower:
            out.absorb(real_stub());
            out.absorb(arc(0.0, -std::numbers::pi / 2.0));
            out.absorb(axis(-1));
            break;
    }
    QuadResult res;
    res.value = out.value;
    res.error_estimate = out.err;
    res.evals = out.evals;
    res.converged = out.conv;
    return res;
}

} // namespace besseltrace::quad
