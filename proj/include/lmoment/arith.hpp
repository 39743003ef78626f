#pragma once
// Elementary multiplicative number theory over 64-bit integers: factorization,
// divisor sums, Ramanujan and Kloosterman sums, primitive roots.
// Everything here is exact integer arithmetic except the trigonometric sums.

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lmoment {

using cx = std::complex<double>;

inline constexpr double PI = 3.14159265358979323846264338327950288;

// e(x) = exp(2*pi*i*x)
inline cx e2pi(double x) {
    return {std::cos(2.0 * PI * x), std::sin(2.0 * PI * x)};
}

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
    if (m == 0) throw std::invalid_argument("powmod: zero modulus");
    uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// inverse of a mod m for gcd(a,m)=1, extended Euclid
inline uint64_t invmod(uint64_t a, uint64_t m) {
    a %= m;
    if (a == 0) throw std::invalid_argument("invmod: argument shares a factor with the modulus");
    int64_t t = 0, nt = 1;
    int64_t r = static_cast<int64_t>(m), nr = static_cast<int64_t>(a);
    while (nr != 0) {
        int64_t qq = r / nr;
        std::swap(t -= qq * nt, nt);
        std::swap(r -= qq * nr, nr);
    }
    if (r != 1) throw std::invalid_argument("invmod: argument shares a factor with the modulus");
    if (t < 0) t += static_cast<int64_t>(m);
    return static_cast<uint64_t>(t);
}

struct Factorization {
    uint64_t n = 1;
    // (prime, exponent), primes increasing
    std::vector<std::pair<uint64_t, int>> factors;
};

// Trial division. Fine for the sizes we use (moduli and divisor arguments
// stay well below 1e12).
inline Factorization factorize(uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    Factorization f;
    f.n = n;
    uint64_t m = n;
    for (uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) { m /= p; ++e; }
            f.factors.emplace_back(p, e);
        }
    }
    if (m > 1) f.factors.emplace_back(m, 1);
    return f;
}

inline bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2))
        if (n % p == 0) return false;
    return true;
}

inline uint64_t euler_phi(const Factorization& f) {
    uint64_t r = 1;
    for (auto [p, e] : f.factors) {
        r *= p - 1;
        for (int i = 1; i < e; ++i) r *= p;
    }
    return r;
}

inline uint64_t euler_phi(uint64_t n) { return euler_phi(factorize(n)); }

// 0 unless n is squarefree
inline int mobius(const Factorization& f) {
    for (auto [p, e] : f.factors)
        if (e > 1) return 0;
    return (f.factors.size() % 2 == 0) ? 1 : -1;
}

inline int mobius(uint64_t n) { return mobius(factorize(n)); }

inline std::vector<uint64_t> divisors(uint64_t n) {
    Factorization f = factorize(n);
    std::vector<uint64_t> ds{1};
    for (auto [p, e] : f.factors) {
        size_t sz = ds.size();
        uint64_t pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < sz; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

// sigma_lambda(n) = sum_{d|n} d^lambda with complex exponent
inline cx divisor_sigma(cx lambda, uint64_t n) {
    cx s = 0.0;
    for (uint64_t d : divisors(n))
        s += std::exp(lambda * std::log(static_cast<double>(d)));
    return s;
}

// Ramanujan sum c_l(n) = sum_{d | gcd(l,n)} d * mu(l/d); exact integer.
// n may be negative or zero; c_l(0) = phi(l).
inline int64_t ramanujan_sum(uint64_t l, int64_t n) {
    if (l == 0) throw std::invalid_argument("ramanujan_sum: l must be positive");
    uint64_t na = static_cast<uint64_t>(n < 0 ? -n : n) % l;
    uint64_t g = na == 0 ? l : std::gcd(l, na);
    int64_t s = 0;
    for (uint64_t d : divisors(g)) {
        int mu = mobius(l / d);
        s += mu * static_cast<int64_t>(d);
    }
    return s;
}

// Inverses of all residues coprime to c, for repeated Kloosterman evaluation.
struct InverseTable {
    uint64_t c = 0;
    std::vector<uint32_t> inv;  // inv[x] = x^{-1} mod c, or 0 when gcd(x,c) > 1

    explicit InverseTable(uint64_t modulus) : c(modulus), inv(modulus, 0) {
        if (c == 0 || c > 0xFFFFFFFFull)
            throw std::invalid_argument("InverseTable: modulus out of range");
        for (uint64_t x = 1; x < c; ++x) {
            if (std::gcd(x, c) != 1) continue;
            inv[x] = static_cast<uint32_t>(invmod(x, c));
        }
    }
};

// S(m,n;c) = sum_{x mod c, (x,c)=1} e((m x + n xbar)/c).  Real by x -> -x
// pairing, so we accumulate cosines only.
inline double kloosterman(int64_t m, int64_t n, const InverseTable& tab) {
    uint64_t c = tab.c;
    if (c == 1) return 1.0;
    uint64_t mm = static_cast<uint64_t>(((m % static_cast<int64_t>(c)) + static_cast<int64_t>(c)) % static_cast<int64_t>(c));
    uint64_t nn = static_cast<uint64_t>(((n % static_cast<int64_t>(c)) + static_cast<int64_t>(c)) % static_cast<int64_t>(c));
    double s = 0.0;
    for (uint64_t x = 1; x < c; ++x) {
        if (tab.inv[x] == 0) continue;
        uint64_t a = (mulmod(mm, x, c) + mulmod(nn, tab.inv[x], c)) % c;
        s += std::cos(2.0 * PI * static_cast<double>(a) / static_cast<double>(c));
    }
    return s;
}

inline double kloosterman(int64_t m, int64_t n, uint64_t c) {
    InverseTable tab(c);
    return kloosterman(m, n, tab);
}

// Smallest primitive root mod prime q.
inline uint64_t primitive_root(uint64_t q) {
    if (!is_prime(q)) throw std::invalid_argument("primitive_root: modulus must be prime");
    if (q == 2) return 1;
    Factorization f = factorize(q - 1);
    for (uint64_t g = 2; g < q; ++g) {
        bool ok = true;
        for (auto [p, e] : f.factors) {
            (void)e;
            if (powmod(g, (q - 1) / p, q) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root: none found");
}

// d(n) for all n <= limit by divisor-count sieve
inline std::vector<uint32_t> divisor_count_sieve(uint64_t limit) {
    std::vector<uint32_t> d(limit + 1, 0);
    for (uint64_t i = 1; i <= limit; ++i)
        for (uint64_t j = i; j <= limit; j += i) ++d[j];
    return d;
}

// sigma_lambda(n) for all n <= limit; O(limit log limit) over complex doubles
inline std::vector<cx> divisor_sigma_sieve(cx lambda, uint64_t limit) {
    std::vector<cx> s(limit + 1, cx(0.0));
    for (uint64_t d = 1; d <= limit; ++d) {
        cx dp = std::exp(lambda * std::log(static_cast<double>(d)));
        for (uint64_t j = d; j <= limit; j += d) s[j] += dp;
    }
    return s;
}

}  // namespace lmoment
