#pragma once

// Riemann zeta for complex s by Euler-Maclaurin:
//   zeta(s) = sum_{n<N} n^-s + N^{1-s}/(s-1) + N^-s/2
//           + sum_k B_{2k}/(2k)! * (s)_{2k-1} * N^{-s-2k+1}.
// Validated envelope: Re s >= 1/2, |Im s| <= 50 (relative error ~1e-13 or
// better there); the formula itself is usable on a wider region.

#include <cmath>
#include <complex>

#include "besseltrace/errors.hpp"

namespace besseltrace::special {

namespace detail {

// B_2 .. B_28
inline constexpr double bernoulli2k[14] = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
};

} // namespace detail

// N = 0 selects the automatic truncation.
inline std::complex<double> zeta(std::complex<double> s, int N = 0) {
    if (s == std::complex<double>(1.0, 0.0))
        throw pole_error("zeta: pole at s = 1");
    if (N <= 0) N = 24 + static_cast<int>(1.3 * std::abs(s.imag()));
    std::complex<double> sum = 0.0;
    for (int n = 1; n < N; ++n)
        sum += std::exp(-s * std::log(static_cast<double>(n)));
    double Nd = static_cast<double>(N);
    std::complex<double> Nms = std::exp(-s * std::log(Nd)); // N^-s
    sum += Nms * Nd / (s - 1.0);
    sum += 0.5 * Nms;
    // Correction terms: B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    std::complex<double> poch = s;          // rising product up to s+2k-2
    double fact = 2.0;                      // (2k)!
    std::complex<double> npow = Nms / Nd;   // N^{-s-2k+1}
    for (int k = 1; k <= 14; ++k) {
        sum += detail::bernoulli2k[k - 1] / fact * poch * npow;
        poch *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        npow /= Nd * Nd;
    }
    return sum;
}

} // namespace besseltrace::special
