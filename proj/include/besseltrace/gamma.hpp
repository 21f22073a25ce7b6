#pragma once

// Complex Gamma via the Lanczos approximation (g = 607/128, 15 terms,
// Godfrey's coefficient set), with the reflection formula for Re z < 1/2.

#include <cmath>
#include <complex>
#include <numbers>

#include "besseltrace/errors.hpp"

namespace besseltrace::special {

namespace detail {

inline constexpr double lanczos_g = 607.0 / 128.0;

inline constexpr double lanczos_c[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

inline bool is_nonpositive_integer(std::complex<double> z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Valid for Re z >= 1/2.
inline std::complex<double> log_gamma_core(std::complex<double> z) {
    std::complex<double> zm1 = z - 1.0;
    std::complex<double> a = lanczos_c[0];
    for (int k = 1; k < 15; ++k) a += lanczos_c[k] / (zm1 + static_cast<double>(k));
    std::complex<double> t = zm1 + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (zm1 + 0.5) * std::log(t) - t +
           std::log(a);
}

} // namespace detail

inline std::complex<double> gamma_complex(std::complex<double> z) {
    using namespace detail;
    if (is_nonpositive_integer(z))
        throw pole_error("gamma_complex: pole at nonpositive integer");
    if (z.real() >= 0.5) return std::exp(log_gamma_core(z));
    // Gamma(z) = pi / (sin(pi z) Gamma(1-z))
    std::complex<double> s = std::sin(std::numbers::pi * z);
    return std::numbers::pi / (s * std::exp(log_gamma_core(1.0 - z)));
}

// log Gamma on Re z >= 1/2 (principal branch of the Lanczos form). Used to
// build Gamma ratios without overflow.
inline std::complex<double> log_gamma_right_half(std::complex<double> z) {
    if (z.real() < 0.5)
        throw out_of_range_error("log_gamma_right_half: requires Re z >= 1/2");
    if (detail::is_nonpositive_integer(z))
        throw pole_error("log_gamma_right_half: pole");
    return detail::log_gamma_core(z);
}

} // namespace besseltrace::special
