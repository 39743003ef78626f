#pragma once
// Dirichlet characters mod a prime q, indexed by the exponent j against a
// fixed primitive root g: chi_j(g^k) = e(jk/(q-1)).  chi_j is even iff j is
// even, and every chi_j with j != 0 is primitive.  L-values for all j at a
// fixed s come from one Hurwitz-zeta pass plus a length-(q-1) DFT over the
// discrete log.

#include <array>
#include <complex>
#include <cstdint>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lmoment/arith.hpp"
#include "lmoment/cache.hpp"
#include "lmoment/parallel.hpp"
#include "lmoment/special.hpp"

namespace lmoment {

struct CharacterTable {
    uint64_t q = 0;
    uint64_t g = 0;                 // primitive root
    std::vector<int32_t> ind;       // ind[a] = discrete log of a base g; ind[0] = -1
    std::vector<uint64_t> g_pow;    // g_pow[k] = g^k mod q, k in [0, q-1)

    // not an aggregate: construction goes through build(), otherwise
    // CharacterTable(13) would parenthesized-aggregate-initialize a table
    // with no root and empty index vectors
    CharacterTable() = default;

    static CharacterTable build(uint64_t q) {
        if (!is_prime(q) || q <= 3)
            throw std::invalid_argument("CharacterTable: modulus must be a prime > 3");
        CharacterTable t;
        t.q = q;
        t.g = primitive_root(q);
        t.ind.assign(q, -1);
        t.g_pow.assign(q - 1, 1);
        uint64_t x = 1;
        for (uint64_t k = 0; k < q - 1; ++k) {
            t.g_pow[k] = x;
            t.ind[x] = static_cast<int32_t>(k);
            x = mulmod(x, t.g, q);
        }
        return t;
    }

    uint64_t order() const { return q - 1; }

    // chi_j(a); 0 when q | a
    cx chi(int64_t j, int64_t a) const {
        int64_t r = a % static_cast<int64_t>(q);
        if (r < 0) r += q;
        if (r == 0) return 0.0;
        int64_t n = static_cast<int64_t>(q) - 1;
        int64_t jm = ((j % n) + n) % n;
        int64_t e = jm * static_cast<int64_t>(ind[r]) % n;
        return e2pi(static_cast<double>(e) / static_cast<double>(n));
    }

    int parity(int64_t j) const { return static_cast<int>(((j % 2) + 2) % 2); }

    // index of the conjugate character
    int64_t conj_index(int64_t j) const {
        int64_t n = static_cast<int64_t>(q) - 1;
        return ((n - j % n) % n + n) % n;
    }
};

// (number of primitive characters, number of even primitive characters)
inline std::pair<uint64_t, uint64_t> count_primitive(uint64_t q) {
    if (!is_prime(q) || q <= 3)
        throw std::invalid_argument("count_primitive: modulus must be a prime > 3");
    return {q - 2, (q - 3) / 2};
}

// ---------------------------------------------------------------------------
// DFT with the e(+nk/N) sign convention: y[k] = sum_n x[n] e(nk/N).

namespace detail {

// in-place radix-2, length a power of two; sign = +1 gives e(+nk/N)
inline void fft_pow2(std::vector<cx>& a, int sign) {
    size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        double ang = sign * 2.0 * PI / static_cast<double>(len);
        cx wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            cx w = 1.0;
            for (size_t k = 0; k < len / 2; ++k) {
                cx u = a[i + k], v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

}  // namespace detail

inline std::vector<cx> dft_naive(const std::vector<cx>& x) {
    size_t n = x.size();
    std::vector<cx> y(n, cx(0.0));
    for (size_t k = 0; k < n; ++k) {
        cx acc = 0.0;
        for (size_t m = 0; m < n; ++m) {
            // exact angle reduction: m*k mod n stays in int64 for our sizes
            uint64_t e = (m * k) % n;
            acc += x[m] * e2pi(static_cast<double>(e) / static_cast<double>(n));
        }
        y[k] = acc;
    }
    return y;
}

// Bluestein: works for any length via chirp multiplication and a power-of-two
// convolution.  Chirp angles use n^2 mod 2N reduced in exact integers.
inline std::vector<cx> dft_bluestein(const std::vector<cx>& x) {
    size_t n = x.size();
    if (n == 0) return {};
    size_t m = 1;
    while (m < 2 * n + 1) m <<= 1;
    std::vector<cx> chirp(n);
    for (size_t k = 0; k < n; ++k) {
        uint64_t e = (static_cast<unsigned __int128>(k) * k) % (2 * n);
        chirp[k] = e2pi(0.5 * static_cast<double>(e) / static_cast<double>(n));
    }
    // y[k] = chirp[k] * sum_n (x[n] chirp[n]) conj(chirp[k-n]), chirp even in
    // its index, realized as a circular convolution of length m >= 2n-1
    std::vector<cx> a(m, cx(0.0)), b(m, cx(0.0));
    for (size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
    b[0] = std::conj(chirp[0]);
    for (size_t k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);
    detail::fft_pow2(a, +1);
    detail::fft_pow2(b, +1);
    for (size_t k = 0; k < m; ++k) a[k] *= b[k];
    detail::fft_pow2(a, -1);
    std::vector<cx> y(n);
    for (size_t k = 0; k < n; ++k)
        y[k] = chirp[k] * a[k] / static_cast<double>(m);
    return y;
}

inline constexpr size_t DFT_NAIVE_CUTOFF = 512;

inline std::vector<cx> dft(const std::vector<cx>& x) {
    return x.size() < DFT_NAIVE_CUTOFF ? dft_naive(x) : dft_bluestein(x);
}

// ---------------------------------------------------------------------------
// Gauss sums and the functional-equation factors.

// tau(chi_j) = sum_a chi_j(a) e(a/q), direct
inline cx gauss_sum(const CharacterTable& t, int64_t j) {
    if (j % static_cast<int64_t>(t.order()) == 0)
        throw std::invalid_argument("gauss_sum: principal character");
    cx s = 0.0;
    for (uint64_t k = 0; k < t.order(); ++k)
        s += t.chi(j, static_cast<int64_t>(t.g_pow[k])) *
             e2pi(static_cast<double>(t.g_pow[k]) / static_cast<double>(t.q));
    return s;
}

// all tau(chi_j) at once: tau_j = DFT_k[ e(g^k/q) ](j).  Entry j = 0 is the
// principal sum, equal to -1; callers skip it.
inline std::vector<cx> gauss_sum_all(const CharacterTable& t) {
    std::vector<cx> v(t.order());
    for (uint64_t k = 0; k < t.order(); ++k)
        v[k] = e2pi(static_cast<double>(t.g_pow[k]) / static_cast<double>(t.q));
    return dft(v);
}

// epsilon(chi) = i^{-a} q^{-1/2} tau(chi), a = parity
inline cx epsilon_factor(const CharacterTable& t, int64_t j) {
    cx i_pow = t.parity(j) == 0 ? cx(1.0, 0.0) : cx(0.0, -1.0);
    return i_pow * gauss_sum(t, j) / std::sqrt(static_cast<double>(t.q));
}

// X(s) with s = 1/2 + u: the asymmetric-form quotient
//   (q/pi)^{-u} Gamma((1/2 - u + a)/2) / Gamma((1/2 + u + a)/2)
// so that L(s, chi) = epsilon(chi) X(s) L(1-s, conj chi).
inline cx x_factor(cx s, int parity, uint64_t q) {
    cx u = s - 0.5;
    double a = static_cast<double>(parity);
    return cpow(static_cast<double>(q) / PI, -u) *
           gamma_ratio((0.5 - u + a) / 2.0, (0.5 + u + a) / 2.0);
}

// product of X(1/2 + xi) over the four shifts
inline cx x_factor4(const std::array<cx, 4>& shifts, int parity, uint64_t q) {
    cx p = 1.0;
    for (cx xi : shifts) p *= x_factor(0.5 + xi, parity, q);
    return p;
}

// completed L: Lambda(s, chi) = (q/pi)^{(s+a)/2} Gamma((s+a)/2) L(s, chi)
inline cx completed_lambda(cx s, int parity, uint64_t q, cx l_value) {
    double a = static_cast<double>(parity);
    return cpow(static_cast<double>(q) / PI, (s + a) / 2.0) *
           std::exp(log_gamma((s + a) / 2.0)) * l_value;
}

// ---------------------------------------------------------------------------
// L(s, chi_j) for every j at once:
//   L(s, chi_j) = q^{-s} sum_{a=1}^{q-1} chi_j(a) zeta(s, a/q)
//               = q^{-s} DFT_k[ zeta(s, g^k/q) ](j).
// Entry j = 0 comes out as zeta(s)(1 - q^{-s}) automatically.

inline std::vector<cx> l_value_grid(const CharacterTable& t, cx s) {
    uint64_t n = t.order();
    std::vector<cx> w(n);
    parallel_for(n, [&](size_t k) {
        double a = static_cast<double>(t.g_pow[k]) / static_cast<double>(t.q);
        w[k] = hurwitz_zeta(s, a);
    });
    std::vector<cx> y = dft(w);
    cx scale = cpow(static_cast<double>(t.q), -s);
    for (cx& v : y) v *= scale;
    return y;
}

// Memoizing wrapper keyed on the exact bit pattern of s; grids are expensive
// and the stencil evaluations revisit the same s many times.
class GridCache {
  public:
    explicit GridCache(const CharacterTable& t, DiskCache disk = DiskCache())
        : table_(t), disk_(std::move(disk)) {}

    const std::vector<cx>& get(cx s) {
        auto key = std::make_pair(bits(s.real()), bits(s.imag()));
        std::lock_guard<std::mutex> lock(mu_);
        auto it = store_.find(key);
        if (it == store_.end()) {
            std::string dkey = "lgrid:q=" + std::to_string(table_.q) +
                               ";sre=" + hex_double(s.real()) + ";sim=" + hex_double(s.imag());
            std::vector<cx> row;
            if (!disk_.load_complex(dkey, row) || row.size() != table_.order()) {
                row = l_value_grid(table_, s);
                disk_.store_complex(dkey, row);
            }
            it = store_.emplace(key, std::move(row)).first;
        }
        return it->second;
    }

    const CharacterTable& table() const { return table_; }

  private:
    static uint64_t bits(double x) {
        uint64_t u;
        static_assert(sizeof(u) == sizeof(x));
        std::memcpy(&u, &x, sizeof(u));
        return u;
    }

    const CharacterTable& table_;
    DiskCache disk_;
    std::map<std::pair<uint64_t, uint64_t>, std::vector<cx>> store_;
    std::mutex mu_;
};

// ---------------------------------------------------------------------------
// Orthogonality of primitive even characters:
//   sum_{chi even primitive} chi(a) conj(chi)(b)
//     = 1/2 sum_{d | (q, a-b)} phi(d) mu(q/d) + 1/2 sum_{d | (q, a+b)} ...
// and 0 when (ab, q) > 1.  The odd variant subtracts the a+b part.

struct OrthogonalityResult {
    cx brute;        // direct character sum
    double closed;   // divisor-sum evaluation (a half-integer)
};

inline double orthogonality_closed(uint64_t q, int64_t a, int64_t b, int parity) {
    auto reduce = [&](int64_t v) {
        int64_t r = v % static_cast<int64_t>(q);
        return r < 0 ? r + static_cast<int64_t>(q) : r;
    };
    if (reduce(a) == 0 || reduce(b) == 0) return 0.0;
    double s = 0.0;
    for (uint64_t d : divisors(q)) {
        int mu = mobius(q / d);
        if (mu == 0) continue;
        double phi_mu = static_cast<double>(euler_phi(d)) * mu;
        if (reduce(a - b) % static_cast<int64_t>(d) == 0) s += 0.5 * phi_mu;
        double sign = parity == 0 ? 1.0 : -1.0;
        if (reduce(a + b) % static_cast<int64_t>(d) == 0) s += sign * 0.5 * phi_mu;
    }
    return s;
}

inline OrthogonalityResult orthogonality_even(const CharacterTable& t, int64_t a, int64_t b) {
    OrthogonalityResult r{};
    cx acc = 0.0;
    for (uint64_t j = 2; j < t.order(); j += 2)
        acc += t.chi(static_cast<int64_t>(j), a) * std::conj(t.chi(static_cast<int64_t>(j), b));
    r.brute = acc;
    r.closed = orthogonality_closed(t.q, a, b, 0);
    return r;
}

inline OrthogonalityResult orthogonality_odd(const CharacterTable& t, int64_t a, int64_t b) {
    OrthogonalityResult r{};
    cx acc = 0.0;
    for (uint64_t j = 1; j < t.order(); j += 2)
        acc += t.chi(static_cast<int64_t>(j), a) * std::conj(t.chi(static_cast<int64_t>(j), b));
    r.brute = acc;
    r.closed = orthogonality_closed(t.q, a, b, 1);
    return r;
}

}  // namespace lmoment
