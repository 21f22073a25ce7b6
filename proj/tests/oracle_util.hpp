#pragma once

// Test-only oracles, independent of the library implementation paths:
//  - 50-digit ascending Bessel series (boost::multiprecision) with a
//    Stirling log-gamma for complex order,
//  - brute-force Kloosterman sums and residue-class enumeration,
//  - Romberg integration as a second quadrature method.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace btest {

using bf = boost::multiprecision::cpp_bin_float_50;
using cbf = boost::multiprecision::cpp_complex_50;

inline bf bf_pi() { return boost::math::constants::pi<bf>(); }

// Bernoulli numbers B_2..B_30 as exact rationals.
inline cbf bernoulli_2k(int k) {
    static const std::pair<long long, long long> frac[15] = {
        {1, 6},       {-1, 30},         {1, 42},          {-1, 30},
        {5, 66},      {-691, 2730},     {7, 6},           {-3617, 510},
        {43867, 798}, {-174611, 330},   {854513, 138},    {-236364091, 2730},
        {8553103, 6}, {-23749461029, 870}, {8615841276005LL, 14322},
    };
    return cbf(bf(frac[k - 1].first) / bf(frac[k - 1].second));
}

// log Gamma via Stirling with a recurrence shift; Re z > 0.
inline cbf lngamma_bf(cbf z) {
    const int shift = 40;
    cbf acc = 0;
    for (int j = 0; j < shift; ++j) {
        acc += log(z);
        z += 1;
    }
    cbf s = (z - cbf(0.5)) * log(z) - z + cbf(0.5) * log(2 * cbf(bf_pi()));
    cbf zpow = z;
    for (int k = 1; k <= 15; ++k) {
        s += bernoulli_2k(k) / (cbf(2 * k) * cbf(2 * k - 1) * zpow);
        zpow *= z * z;
    }
    return s - acc;
}

inline cbf gamma_bf(cbf z) { return exp(lngamma_bf(z)); }

// Ascending series for J (sign -1) or I (sign +1), complex order and argument.
inline cbf bessel_series_bf(cbf nu, cbf z, int sign) {
    cbf pre = exp(nu * log(z / 2) - lngamma_bf(nu + 1));
    cbf q = (z / 2) * (z / 2);
    if (sign < 0) q = -q;
    cbf term = 1, sum = 1;
    bf maxmag = 1;
    for (int m = 1; m <= 400; ++m) {
        term *= q / (cbf(m) * (nu + cbf(m)));
        sum += term;
        bf mag = abs(term);
        if (mag > maxmag) maxmag = mag;
        if (mag < maxmag * bf(1e-60) && m > 10) break;
    }
    return pre * sum;
}

inline cbf bessel_j_bf(cbf nu, cbf z) { return bessel_series_bf(nu, z, -1); }
inline cbf bessel_i_bf(cbf nu, cbf z) { return bessel_series_bf(nu, z, +1); }

inline std::complex<double> to_cd(cbf z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// B_{2it}(x) = -Im(J_{2it}(x)) / sinh(pi t) at 50 digits.
inline double bessel_b_bf(double t, double x) {
    cbf j = bessel_j_bf(cbf(0, 2 * bf(t)), cbf(bf(x)));
    return static_cast<double>(-j.imag() / sinh(bf_pi() * bf(t)));
}

// d/dnu J_nu(x) at nu=0 gives the t->0 limit of B:
//   B_0(x) = -(2/pi) sum (-1)^m (x/2)^{2m} (log(x/2) + gamma - H_m) / (m!)^2
inline double bessel_b_t0_series(double x) {
    bf gamma_e("0.57721566490153286060651209008240243104215933593992");
    bf L = log(bf(x) / 2);
    bf term = 1, H = 0, s = 0;
    for (int m = 0; m <= 120; ++m) {
        if (m > 0) {
            term *= (bf(x) / 2) * (bf(x) / 2) / (bf(m) * bf(m));
            H += bf(1) / m;
        }
        bf add = term * (L + gamma_e - H);
        s += (m % 2 == 0) ? add : -add;
        if (m > x && abs(term) < bf(1e-60)) break;
    }
    return static_cast<double>(-2 / bf_pi() * s);
}

// ---------------------------------------------------------------------------
// integer oracles
// ---------------------------------------------------------------------------

// S(a,b,c) as a full complex exponential sum.
inline std::complex<double> kloosterman_brute(long long a, long long b, long long c) {
    if (c == 1) return {1.0, 0.0};
    std::complex<double> s{0.0, 0.0};
    for (long long x = 1; x < c; ++x) {
        if (std::gcd(x, c) != 1) continue;
        long long xbar = 0;
        for (long long y = 1; y < c; ++y)
            if ((x * y) % c == 1) { xbar = y; break; }
        double phase = 2.0 * std::numbers::pi *
                       static_cast<double>((a * xbar + b * x) % c) / static_cast<double>(c);
        s += std::polar(1.0, phase);
    }
    return s;
}

// Distinct classes of (x,y) with c2 x + c1 y = n, gcd(x,c1)=gcd(y,c2)=1,
// found by scanning |x| <= bound; classes keyed by (x mod c1, y mod c2).
inline std::set<std::pair<long long, long long>> xclasses_brute(long long c1, long long c2,
                                                                long long n,
                                                                long long bound) {
    std::set<std::pair<long long, long long>> classes;
    auto norm = [](long long v, long long m) { return ((v % m) + m) % m; };
    for (long long x = -bound; x <= bound; ++x) {
        if (std::gcd(((x % c1) + c1) % c1, c1) != 1) continue;
        long long rem = n - c2 * x;
        if (rem % c1 != 0) continue;
        long long y = rem / c1;
        if (std::gcd(((y % c2) + c2) % c2, c2) != 1) continue;
        classes.insert({norm(x, c1), norm(y, c2)});
    }
    return classes;
}

inline long long phi_brute(long long n) {
    long long cnt = 0;
    for (long long k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) ++cnt;
    return cnt;
}

// f_n(m) = sum over units s mod n of e(s m / n), evaluated literally.
inline double ramanujan_brute(long long n, long long m) {
    double s = 0.0;
    for (long long k = 0; k < n; ++k) {
        if (std::gcd(k, n) != 1 && n > 1) continue;
        s += std::cos(2.0 * std::numbers::pi * static_cast<double>((m % n + n) % n) *
                      static_cast<double>(k) / static_cast<double>(n));
    }
    return n == 1 ? 1.0 : s;
}

// ---------------------------------------------------------------------------
// Romberg integration (independent of the Gauss-Kronrod path)
// ---------------------------------------------------------------------------

inline std::complex<double> romberg(const std::function<std::complex<double>(double)>& f,
                                    double a, double b, int levels = 18) {
    std::vector<std::vector<std::complex<double>>> R(levels);
    double h = b - a;
    R[0] = {0.5 * h * (f(a) + f(b))};
    for (int i = 1; i < levels; ++i) {
        h *= 0.5;
        std::complex<double> s{0.0, 0.0};
        long long pts = 1LL << (i - 1);
        for (long long k = 0; k < pts; ++k) s += f(a + (2 * k + 1) * h);
        R[i].resize(i + 1);
        R[i][0] = 0.5 * R[i - 1][0] + h * s;
        double p4 = 1.0;
        for (int j = 1; j <= i; ++j) {
            p4 *= 4.0;
            R[i][j] = (p4 * R[i][j - 1] - R[i - 1][j - 1]) / (p4 - 1.0);
        }
    }
    return R[levels - 1][levels - 1];
}

} // namespace btest
