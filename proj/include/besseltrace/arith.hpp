#pragma once

// Exact integer arithmetic: multiplicative functions, Kloosterman and
// Ramanujan sums, and the residue-class sets X(c1,c2,n), Y(c1,c2,n) with the
// bijection (x,y) -> (r1,r2) between them.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <shared_mutex>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "besseltrace/errors.hpp"

namespace besseltrace::arith {

using std::int64_t;

// Value in [0, modulus).
struct Residue {
    int64_t value = 0;
    int64_t modulus = 1;

    friend bool operator==(const Residue&, const Residue&) = default;
};

inline int64_t normalize_mod(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// ---------------------------------------------------------------------------
// gcd / modular inverse
// ---------------------------------------------------------------------------

inline int64_t gcd_i64(int64_t a, int64_t b) {
    return std::gcd(a, b);
}

// Inverse of a modulo c via extended Euclid. c >= 1; throws if gcd(a,c) != 1.
inline Residue mod_inverse(int64_t a, int64_t c) {
    if (c < 1) throw invalid_value_error("mod_inverse: modulus must be positive");
    if (c == 1) return {0, 1};
    a = normalize_mod(a, c);
    int64_t r0 = c, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
        int64_t q = r0 / r1;
        int64_t r2 = r0 - q * r1;
        int64_t t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1)
        throw not_coprime_error("mod_inverse: gcd(" + std::to_string(a) + "," +
                                std::to_string(c) + ") = " + std::to_string(r0));
    return {normalize_mod(t0, c), c};
}

// ---------------------------------------------------------------------------
// Factorization (trial division, 2-3-5 wheel) and multiplicative functions
// ---------------------------------------------------------------------------

struct PrimePower {
    int64_t p;
    int e;
};

inline std::vector<PrimePower> factorize(int64_t n) {
    if (n < 1) throw invalid_value_error("factorize: n must be >= 1");
    std::vector<PrimePower> f;
    for (int64_t p : {int64_t{2}, int64_t{3}, int64_t{5}}) {
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) f.push_back({p, e});
    }
    static constexpr int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    int64_t p = 7;
    int wi = 0;
    while (p * p <= n) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.push_back({p, e});
        }
        p += wheel[wi];
        wi = (wi + 1) & 7;
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

inline int64_t euler_phi(int64_t n) {
    int64_t phi = 1;
    for (auto [p, e] : factorize(n)) {
        int64_t pe = 1;
        for (int i = 1; i < e; ++i) pe *= p;
        phi *= pe * (p - 1);
    }
    return phi;
}

inline int moebius(int64_t n) {
    auto f = factorize(n);
    for (auto [p, e] : f)
        if (e > 1) return 0;
    return f.size() % 2 == 0 ? 1 : -1;
}

inline std::vector<int64_t> divisors(int64_t n) {
    std::vector<int64_t> ds{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t m = ds.size();
        int64_t pe = 1;
        for (int i = 0; i < e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < m; ++j) ds.push_back(ds[j] * pe);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

// Smallest-prime-factor sieve, for bulk factorization in the series checks.
inline std::vector<int32_t> spf_sieve(int64_t n) {
    std::vector<int32_t> spf(n + 1, 0);
    for (int64_t i = 2; i <= n; ++i) {
        if (spf[i] == 0) {
            for (int64_t j = i; j <= n; j += i)
                if (spf[j] == 0) spf[j] = static_cast<int32_t>(i);
        }
    }
    return spf;
}

// ---------------------------------------------------------------------------
// Ramanujan sums f_l(m), by the closed form and by the divisor sum
// ---------------------------------------------------------------------------

// mu(l/(l,m)) * phi(l) / phi(l/(l,m)); exact integers throughout.
inline int64_t ramanujan_closed(int64_t l, int64_t m) {
    if (l < 1) throw invalid_value_error("ramanujan_closed: l must be >= 1");
    int64_t g = std::gcd(l, std::abs(m));
    int64_t q = l / g;
    int mu = moebius(q);
    if (mu == 0) return 0;
    int64_t phi_l = euler_phi(l);
    int64_t phi_q = euler_phi(q);
    return mu * (phi_l / phi_q);
}

// sum over r | (m,n) of mu(n/r) * r.
inline int64_t ramanujan_divisor(int64_t n, int64_t m) {
    if (n < 1) throw invalid_value_error("ramanujan_divisor: n must be >= 1");
    int64_t g = std::gcd(n, std::abs(m));
    int64_t s = 0;
    for (int64_t r : divisors(g))
        s += moebius(n / r) * r;
    return s;
}

// ---------------------------------------------------------------------------
// X(c1,c2,n), Y(c1,c2,n), and the bijection
// ---------------------------------------------------------------------------

// One representative of a class of pairs (x,y) with c2*x + c1*y = n,
// gcd(x,c1) = gcd(y,c2) = 1; x normalized to [0,c1), y the exact solution.
struct XClass {
    int64_t x;
    int64_t y;
    int64_t c1;
    int64_t c2;
    int64_t n;
};

struct RPair {
    Residue r1;
    Residue r2;
};

inline std::vector<XClass> enumerate_X(int64_t c1, int64_t c2, int64_t n) {
    if (c1 < 1 || c2 < 1) throw invalid_value_error("enumerate_X: c1,c2 must be >= 1");
    std::vector<XClass> out;
    for (int64_t x = 0; x < c1; ++x) {
        if (std::gcd(x, c1) != 1) continue;
        __int128 rem = (__int128)n - (__int128)c2 * x;
        if (rem % c1 != 0) continue;
        int64_t y = static_cast<int64_t>(rem / c1);
        if (std::gcd(y, c2) != 1) continue;
        out.push_back({x, y, c1, c2, n});
    }
    return out;
}

// Classes r in (Z/n)* with (c1/d)r + (c2/d) = 0 mod n/d and not 0 mod n/d'
// for any proper divisor d' of d, where d = (c1,c2). Empty if d does not
// divide n. n must be nonzero; residues are taken mod |n|.
inline std::vector<Residue> enumerate_Y(int64_t c1, int64_t c2, int64_t n) {
    if (c1 < 1 || c2 < 1) throw invalid_value_error("enumerate_Y: c1,c2 must be >= 1");
    if (n == 0) throw invalid_value_error("enumerate_Y: n must be nonzero");
    int64_t m = std::abs(n);
    int64_t d = std::gcd(c1, c2);
    if (m % d != 0) return {};
    int64_t A = c1 / d, B = c2 / d, M = m / d;
    auto dd = divisors(d);
    std::vector<Residue> out;
    for (int64_t r = 0; r < m; ++r) {
        if (std::gcd(r, m) != 1) continue;
        __int128 v = (__int128)A * r + B;
        if (v % M != 0) continue;
        bool ok = true;
        for (int64_t dp : dd) {
            if (dp == d) continue;
            if (v % (m / dp) == 0) { ok = false; break; }
        }
        if (ok) out.push_back({r, m});
    }
    return out;
}

// (x,y) -> (r1,r2), r1 = (n*xbar - c2)/c1 mod n, r2 = (n*ybar - c1)/c2 mod n.
inline RPair bijection_r(const XClass& cls) {
    if (cls.n == 0) throw invalid_value_error("bijection_r: n must be nonzero");
    int64_t m = std::abs(cls.n);
    int64_t xb = mod_inverse(cls.x, cls.c1).value;
    int64_t yb = mod_inverse(normalize_mod(cls.y, cls.c2), cls.c2).value;
    __int128 num1 = (__int128)cls.n * xb - cls.c2;
    __int128 num2 = (__int128)cls.n * yb - cls.c1;
    if (num1 % cls.c1 != 0 || num2 % cls.c2 != 0)
        throw inexact_division_error("bijection_r: division not exact (contract violation)");
    int64_t r1 = static_cast<int64_t>(((num1 / cls.c1) % m + m) % m);
    int64_t r2 = static_cast<int64_t>(((num2 / cls.c2) % m + m) % m);
    return {{r1, m}, {r2, m}};
}

// ---------------------------------------------------------------------------
// Kloosterman sums
// ---------------------------------------------------------------------------

namespace detail {

// S(a,b,c) summed over ascending units x, with Kahan compensation. The key
// (a,b) must already be reduced mod c. Shared by direct and cached paths so
// cached values reproduce fresh computation bit for bit.
inline double kloosterman_sum_reduced(int64_t a, int64_t b, int64_t c) {
    if (c == 1) return 1.0; // single (empty-modulus) term e(0)
    const double two_pi = 2.0 * std::numbers::pi;
    double s = 0.0, comp = 0.0;
    for (int64_t x = 1; x < c; ++x) {
        if (std::gcd(x, c) != 1) continue;
        int64_t xb = mod_inverse(x, c).value;
        int64_t k = static_cast<int64_t>(((__int128)a * xb + (__int128)b * x) % c);
        double term = std::cos(two_pi * static_cast<double>(k) / static_cast<double>(c));
        double t = s + term;
        if (std::fabs(s) >= std::fabs(term))
            comp += (s - t) + term;
        else
            comp += (term - t) + s;
        s = t;
    }
    return s + comp;
}

} // namespace detail

// Direct evaluation, no cache.
inline double kloosterman_direct(int64_t a, int64_t b, int64_t c) {
    if (c < 1) throw invalid_value_error("kloosterman: c must be >= 1");
    if (c >= (int64_t{1} << 31))
        throw out_of_range_error("kloosterman: c must be < 2^31");
    return detail::kloosterman_sum_reduced(normalize_mod(a, c), normalize_mod(b, c), c);
}

// Memoized S(a,b,c) keyed by (a mod c, b mod c, c). Rows are stored densely
// per (a,c): row[b] for all b mod c. Safe for concurrent readers; values do
// not depend on which thread computed them. No eviction - the experiment's
// c-range bounds the size.
class KloostermanCache {
public:
    double value(int64_t a, int64_t b, int64_t c) {
        if (c < 1) throw invalid_value_error("kloosterman: c must be >= 1");
        if (c >= (int64_t{1} << 31))
            throw out_of_range_error("kloosterman: c must be < 2^31");
        a = normalize_mod(a, c);
        b = normalize_mod(b, c);
        Shard& sh = shard(a, c);
        {
            std::shared_lock lk(sh.mtx);
            auto it = sh.rows.find(key(a, c));
            if (it != sh.rows.end()) {
                double v = it->second[static_cast<std::size_t>(b)];
                if (!std::isnan(v)) return v;
            }
        }
        std::unique_lock lk(sh.mtx);
        auto& row = sh.rows.try_emplace(key(a, c)).first->second;
        if (row.empty()) row.assign(static_cast<std::size_t>(c), nan_);
        double& slot = row[static_cast<std::size_t>(b)];
        if (std::isnan(slot)) slot = detail::kloosterman_sum_reduced(a, b, c);
        return slot;
    }

    // Computes full rows S(a, . , c) for every c in [c_lo, c_hi], in parallel.
    // After this, lookups in the range never compute.
    void prefill(int64_t a, int64_t c_lo, int64_t c_hi, int threads) {
        if (c_lo < 1) c_lo = 1;
        if (c_hi < c_lo) return;
        std::vector<int64_t> cs;
        for (int64_t c = c_lo; c <= c_hi; ++c) cs.push_back(c);
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= cs.size()) break;
                fill_row(a, cs[i]);
            }
        };
        if (threads <= 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (int i = 0; i < threads; ++i) pool.emplace_back(work);
            for (auto& t : pool) t.join();
        }
    }

    std::size_t rows_cached() const {
        std::size_t n = 0;
        for (const auto& sh : shards_) {
            std::shared_lock lk(sh.mtx);
            n += sh.rows.size();
        }
        return n;
    }

private:
    static constexpr int kShards = 64;
    static constexpr double nan_ = std::numeric_limits<double>::quiet_NaN();

    struct Shard {
        mutable std::shared_mutex mtx;
        std::unordered_map<std::uint64_t, std::vector<double>> rows;
    };

    Shard shards_[kShards];

    static std::uint64_t key(int64_t a, int64_t c) {
        return (static_cast<std::uint64_t>(c) << 31) | static_cast<std::uint64_t>(a);
    }

    Shard& shard(int64_t a, int64_t c) {
        return shards_[static_cast<std::size_t>((c * 0x9e3779b9ull + a) % kShards)];
    }

    // Builds the whole row for (a,c): units, inverses and a cosine table once,
    // then O(c) per residue b. Values match kloosterman_sum_reduced exactly:
    // same term order, same compensation, same cos arguments.
    void fill_row(int64_t a, int64_t c) {
        Shard& sh = shard(normalize_mod(a, c), c);
        {
            std::shared_lock lk(sh.mtx);
            auto it = sh.rows.find(key(normalize_mod(a, c), c));
            if (it != sh.rows.end() && !it->second.empty() && !std::isnan(it->second[0])) {
                bool full = true;
                for (double v : it->second)
                    if (std::isnan(v)) { full = false; break; }
                if (full) return;
            }
        }
        int64_t ar = normalize_mod(a, c);
        std::vector<double> row(static_cast<std::size_t>(c), 0.0);
        if (c == 1) {
            row[0] = 1.0;
        } else {
            const double two_pi = 2.0 * std::numbers::pi;
            std::vector<int32_t> units, e_of_unit;
            units.reserve(static_cast<std::size_t>(c));
            for (int64_t x = 1; x < c; ++x) {
                if (std::gcd(x, c) != 1) continue;
                units.push_back(static_cast<int32_t>(x));
                int64_t xb = mod_inverse(x, c).value;
                e_of_unit.push_back(static_cast<int32_t>(((__int128)ar * xb) % c));
            }
            std::vector<double> ct(static_cast<std::size_t>(c));
            for (int64_t k = 0; k < c; ++k)
                ct[static_cast<std::size_t>(k)] =
                    std::cos(two_pi * static_cast<double>(k) / static_cast<double>(c));
            for (int64_t b = 0; b < c; ++b) {
                double s = 0.0, comp = 0.0;
                int64_t bx = 0;      // b*x mod c, advanced with x
                int64_t x_prev = 0;
                for (std::size_t j = 0; j < units.size(); ++j) {
                    int64_t x = units[j];
                    bx += (x - x_prev) * b % c;
                    bx %= c;
                    x_prev = x;
                    int64_t k = e_of_unit[j] + bx;
                    if (k >= c) k -= c;
                    double term = ct[static_cast<std::size_t>(k)];
                    double t = s + term;
                    if (std::fabs(s) >= std::fabs(term))
                        comp += (s - t) + term;
                    else
                        comp += (term - t) + s;
                    s = t;
                }
                row[static_cast<std::size_t>(b)] = s + comp;
            }
        }
        std::unique_lock lk(sh.mtx);
        sh.rows[key(ar, c)] = std::move(row);
    }
};

inline double kloosterman(int64_t a, int64_t b, int64_t c, KloostermanCache& cache) {
    return cache.value(a, b, c);
}

// ---------------------------------------------------------------------------
// Z(d,s), R(n,d)
// ---------------------------------------------------------------------------

// Z(d,s) = sum over d' supported on primes p|d with p not dividing n/d of
// phi(d'd)/(d'd)^{1+s}, evaluated as a finite Euler product:
//   prod_{p^a || d} (1-1/p) p^{-a s} * [ 1/(1-p^{-s}) if p not | n/d ].
inline std::complex<double> z_factor(int64_t d, int64_t n, std::complex<double> s) {
    if (d < 1 || n < 1) throw invalid_value_error("z_factor: d,n must be >= 1");
    if (n % d != 0) throw not_a_divisor_error("z_factor: d must divide n");
    if (s.real() <= 0.0)
        throw divergent_parameter_error("z_factor: Re(s) must be > 0");
    std::complex<double> z = 1.0;
    int64_t q = n / d;
    for (auto [p, a] : factorize(d)) {
        double pd = static_cast<double>(p);
        std::complex<double> p_ms = std::exp(-s * std::log(pd));     // p^{-s}
        std::complex<double> p_mas = std::exp(-(double)a * s * std::log(pd));
        std::complex<double> factor = (1.0 - 1.0 / pd) * p_mas;
        if (q % p != 0) factor /= (1.0 - p_ms);
        z *= factor;
    }
    return z;
}

// R(n,d) = Z(d,1) * prod_{p|n} 1/(1+1/p); sums to 1 over d|n.
inline double r_weight(int64_t n, int64_t d) {
    if (n < 1) throw invalid_value_error("r_weight: n must be >= 1");
    if (d < 1 || n % d != 0) throw not_a_divisor_error("r_weight: d must divide n");
    double z = z_factor(d, n, 1.0).real();
    for (auto [p, e] : factorize(n)) {
        (void)e;
        z /= (1.0 + 1.0 / static_cast<double>(p));
    }
    return z;
}

} // namespace besseltrace::arith
