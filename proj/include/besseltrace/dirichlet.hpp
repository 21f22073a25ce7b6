#pragma once

// Truncated Dirichlet series against their closed forms: the Ramanujan-sum
// series L(s) = sum f_c(l-l')/c^{s+1}, the phi-weighted variant with a
// coprimality constraint, the divisor-function zeta product, and the
// Eisenstein coefficient eta.

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "besseltrace/arith.hpp"
#include "besseltrace/errors.hpp"
#include "besseltrace/gamma.hpp"
#include "besseltrace/zeta.hpp"

namespace besseltrace {

namespace detail {

struct KahanComplex {
    std::complex<double> sum{0.0, 0.0};
    std::complex<double> comp{0.0, 0.0};

    void add(std::complex<double> term) {
        std::complex<double> y = term - comp;
        std::complex<double> t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

// f_c(m) from a smallest-prime-factor table covering c.
inline int64_t ramanujan_from_spf(const std::vector<int32_t>& spf, int64_t c, int64_t m) {
    int64_t g = std::gcd(c, std::llabs(m));
    int64_t q = c / g;
    // mu(q), requiring q squarefree
    int mu = 1;
    int64_t phi_c = 1, phi_q = 1;
    {
        int64_t v = q;
        while (v > 1) {
            int64_t p = spf[v];
            int e = 0;
            while (v % p == 0) { v /= p; ++e; }
            if (e > 1) return 0;
            mu = -mu;
            phi_q *= (p - 1);
        }
    }
    {
        int64_t v = c;
        while (v > 1) {
            int64_t p = spf[v];
            int64_t pe = 1;
            int e = 0;
            while (v % p == 0) { v /= p; ++e; }
            for (int i = 1; i < e; ++i) pe *= p;
            phi_c *= pe * (p - 1);
        }
    }
    return mu * (phi_c / phi_q);
}

} // namespace detail

namespace arith {

struct SeriesCheck {
    std::complex<double> truncated;
    std::complex<double> closed;
};

// L(s) = sum_c f_c(l-l') / c^{s+1} against
//   (1/zeta(1+s)) sum_{r | (l-l')} r^{-s}        (l != l')
//   zeta(s)/zeta(s+1)                            (l = l').
inline SeriesCheck dirichlet_series_check(int64_t l, int64_t lp, std::complex<double> s,
                                          int64_t N) {
    if (l < 1 || lp < 1) throw invalid_value_error("dirichlet_series_check: l,lp >= 1");
    if (N < 1) throw invalid_value_error("dirichlet_series_check: N >= 1");
    if (s.real() <= 1.0)
        throw divergent_parameter_error("dirichlet_series_check: Re(s) must be > 1");
    int64_t m = l - lp;
    auto spf = spf_sieve(N);
    besseltrace::detail::KahanComplex acc;
    std::complex<double> sp1 = s + 1.0;
    for (int64_t c = 1; c <= N; ++c) {
        int64_t f = besseltrace::detail::ramanujan_from_spf(spf, c, m);
        if (f == 0) continue;
        acc.add(static_cast<double>(f) *
                std::exp(-sp1 * std::log(static_cast<double>(c))));
    }
    std::complex<double> closed;
    if (m == 0) {
        closed = special::zeta(s) / special::zeta(s + 1.0);
    } else {
        std::complex<double> dsum = 0.0;
        for (int64_t r : divisors(std::llabs(m)))
            dsum += std::exp(-s * std::log(static_cast<double>(r)));
        closed = dsum / special::zeta(s + 1.0);
    }
    return {acc.sum + acc.comp, closed};
}

// m = 0: sum_{(c1, n/d)=1} phi(d c1)/(d c1)^{s+1} against
//        Z(d,s) L(s,chi0)/L(s+1,chi0), chi0 the trivial character mod n.
// m != 0: the same series with f_{d c1}(m), and the paper's stated closed
//         form Z(d,s) M(s); both are returned without asserting equality.
inline SeriesCheck phi_dirichlet_check(int64_t n, int64_t d, int64_t m,
                                       std::complex<double> s, int64_t N) {
    if (n < 1 || d < 1) throw invalid_value_error("phi_dirichlet_check: n,d >= 1");
    if (n % d != 0) throw not_a_divisor_error("phi_dirichlet_check: d must divide n");
    if (s.real() <= 1.0)
        throw divergent_parameter_error("phi_dirichlet_check: Re(s) must be > 1");
    int64_t q = n / d;
    auto spf = spf_sieve(d * N);
    besseltrace::detail::KahanComplex acc;
    std::complex<double> sp1 = s + 1.0;
    for (int64_t c1 = 1; c1 <= N; ++c1) {
        if (std::gcd(c1, q) != 1) continue;
        int64_t dc = d * c1;
        int64_t f = m == 0 ? [&] {
            int64_t v = dc, phi = 1;
            while (v > 1) {
                int64_t p = spf[v];
                int64_t pe = 1;
                int e = 0;
                while (v % p == 0) { v /= p; ++e; }
                for (int i = 1; i < e; ++i) pe *= p;
                phi *= pe * (p - 1);
            }
            return phi;
        }()
                            : besseltrace::detail::ramanujan_from_spf(spf, dc, m);
        if (f == 0) continue;
        acc.add(static_cast<double>(f) *
                std::exp(-sp1 * std::log(static_cast<double>(dc))));
    }
    std::complex<double> closed;
    if (m == 0) {
        std::complex<double> ratio = special::zeta(s) / special::zeta(s + 1.0);
        for (auto [p, e] : factorize(n)) {
            (void)e;
            double pd = static_cast<double>(p);
            ratio *= (1.0 - std::exp(-s * std::log(pd))) /
                     (1.0 - std::exp(-(s + 1.0) * std::log(pd)));
        }
        closed = z_factor(d, n, s) * ratio;
    } else {
        std::complex<double> lsum = 0.0;
        for (int64_t ell : divisors(n)) {
            if (moebius(ell) == 0) continue;
            lsum += std::exp(-sp1 * std::log(static_cast<double>(ell)));
        }
        std::complex<double> dsum = 0.0;
        for (int64_t dm : divisors(std::llabs(m)))
            dsum += static_cast<double>(moebius(dm)) *
                    std::exp(-sp1 * std::log(static_cast<double>(dm)));
        closed = z_factor(d, n, s) * lsum * dsum / special::zeta(s + 1.0);
    }
    return {acc.sum + acc.comp, closed};
}

} // namespace arith

namespace special {

// tau_it(n) = sum_{ab=n} (a/b)^{it}; the (a,b) <-> (b,a) pairing makes it real.
inline std::complex<double> tau_it(int64_t n, double t) {
    if (n < 1) throw invalid_value_error("tau_it: n must be >= 1");
    double s = 0.0;
    for (int64_t a : arith::divisors(n)) {
        int64_t b = n / a;
        s += std::cos(t * (std::log(static_cast<double>(a)) -
                           std::log(static_cast<double>(b))));
    }
    return {s, 0.0};
}

struct EtaCoefficient {
    int64_t l;
    double t;
    std::complex<double> value;
};

// eta(l, 1/2+it) = 2 pi^{1+it} cosh(pi t)^{-1/2} tau_it(l) / (Gamma(1/2+it) zeta(1+2it))
inline EtaCoefficient eta_coeff(int64_t l, double t) {
    if (t == 0.0)
        throw undefined_at_zero_error("eta_coeff: undefined at t = 0 (zeta pole)");
    std::complex<double> i{0.0, 1.0};
    std::complex<double> pi_pow =
        std::exp((1.0 + i * t) * std::log(std::numbers::pi));
    std::complex<double> num =
        2.0 * pi_pow / std::sqrt(std::cosh(std::numbers::pi * t)) * tau_it(l, t);
    std::complex<double> den =
        gamma_complex({0.5, t}) * zeta({1.0, 2.0 * t});
    return {l, t, num / den};
}

// sum_{n<=N} tau_iT(n) tau_it(n) n^{-s} against
// prod_{+-,+-} zeta(s +- iT +- it) / zeta(2s).
inline arith::SeriesCheck ramanujan_zeta_identity(double T, double t,
                                                  std::complex<double> s, int64_t N) {
    if (s.real() <= 1.0)
        throw divergent_parameter_error("ramanujan_zeta_identity: Re(s) must be > 1");
    if (N < 1) throw invalid_value_error("ramanujan_zeta_identity: N >= 1");
    std::vector<double> logs(static_cast<std::size_t>(N) + 1, 0.0);
    for (int64_t k = 1; k <= N; ++k)
        logs[static_cast<std::size_t>(k)] = std::log(static_cast<double>(k));
    std::vector<double> tauT(static_cast<std::size_t>(N) + 1, 0.0);
    std::vector<double> taut(static_cast<std::size_t>(N) + 1, 0.0);
    for (int64_t a = 1; a <= N; ++a) {
        for (int64_t b = 1; a * b <= N; ++b) {
            double L = logs[static_cast<std::size_t>(a)] - logs[static_cast<std::size_t>(b)];
            tauT[static_cast<std::size_t>(a * b)] += std::cos(T * L);
            taut[static_cast<std::size_t>(a * b)] += std::cos(t * L);
        }
    }
    besseltrace::detail::KahanComplex acc;
    for (int64_t k = 1; k <= N; ++k)
        acc.add(tauT[static_cast<std::size_t>(k)] * taut[static_cast<std::size_t>(k)] *
                std::exp(-s * logs[static_cast<std::size_t>(k)]));
    std::complex<double> i{0.0, 1.0};
    std::complex<double> closed = zeta(s + i * T + i * t) * zeta(s + i * T - i * t) *
                                  zeta(s - i * T + i * t) * zeta(s - i * T - i * t) /
                                  zeta(2.0 * s);
    return {acc.sum + acc.comp, closed};
}

} // namespace special

} // namespace besseltrace
