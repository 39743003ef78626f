#pragma once
// The twisted divisor Dirichlet series D(s, la, h/l) = sum sigma_la(n) e(nh/l) n^{-s},
// its meromorphic continuation through Hurwitz zetas, and its functional
// equation.  l stays small (the double sum is O(l^2) Hurwitz evaluations).

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lmoment/arith.hpp"
#include "lmoment/contour.hpp"
#include "lmoment/special.hpp"

namespace lmoment {

struct EstermannPoint {
    cx s;
    cx lambda;
    int64_t h = 0;   // numerator of the twist, reduced mod l
    uint64_t l = 1;  // denominator, coprime to h

    EstermannPoint(cx s_, cx lambda_, int64_t h_, uint64_t l_)
        : s(s_), lambda(lambda_), l(l_) {
        if (l == 0) throw std::invalid_argument("EstermannPoint: l must be positive");
        int64_t r = h_ % static_cast<int64_t>(l);
        if (r < 0) r += static_cast<int64_t>(l);
        h = r;
        if (l > 1 && std::gcd(static_cast<uint64_t>(h), l) != 1)
            throw std::invalid_argument("EstermannPoint: h must be coprime to l");
    }
};

// truncated defining series; the oracle side of every comparison
inline cx estermann_series(const EstermannPoint& p, uint64_t n_max) {
    std::vector<cx> sig = divisor_sigma_sieve(p.lambda, n_max);
    cx acc = 0.0;
    for (uint64_t n = 1; n <= n_max; ++n) {
        double frac = static_cast<double>((static_cast<unsigned __int128>(p.h) * n) % p.l) /
                      static_cast<double>(p.l);
        acc += sig[n] * e2pi(frac) * cpow(static_cast<double>(n), -p.s);
    }
    return acc;
}

// continuation: D(s, la, h/l) = l^{la-2s} sum_{j,r=1}^{l} e(jrh/l)
//   zeta(s-la, j/l) zeta(s, r/l).
// Rejects the poles s = 1, s = 1+la and (to keep the two poles separated)
// |la| < 1e-6; perturb lambda slightly to evaluate near la = 0.
inline cx estermann_D(const EstermannPoint& p) {
    if (std::abs(p.s - cx(1.0)) < 1e-6)
        throw std::domain_error("estermann_D: pole at s = 1");
    if (std::abs(p.s - (1.0 + p.lambda)) < 1e-6)
        throw std::domain_error("estermann_D: pole at s = 1 + lambda");
    if (std::abs(p.lambda) < 1e-6)
        throw std::domain_error("estermann_D: lambda too close to 0, perturb it");
    uint64_t l = p.l;
    // cache the two Hurwitz rows
    std::vector<cx> za(l + 1), zb(l + 1);
    for (uint64_t j = 1; j <= l; ++j) {
        double a = static_cast<double>(j) / static_cast<double>(l);
        za[j] = hurwitz_zeta(p.s - p.lambda, a);
        zb[j] = hurwitz_zeta(p.s, a);
    }
    cx acc = 0.0;
    for (uint64_t j = 1; j <= l; ++j)
        for (uint64_t r = 1; r <= l; ++r) {
            uint64_t e = (j * r % l) * static_cast<uint64_t>(p.h) % l;
            acc += e2pi(static_cast<double>(e) / static_cast<double>(l)) * za[j] * zb[r];
        }
    return cpow(static_cast<double>(l), p.lambda - 2.0 * p.s) * acc;
}

// residues of D at s = 1 and s = 1 + lambda
inline cx estermann_residue_at_1(const EstermannPoint& p) {
    return cpow(static_cast<double>(p.l), -1.0 + p.lambda) * riemann_zeta(1.0 - p.lambda);
}

inline cx estermann_residue_at_1_plus_lambda(const EstermannPoint& p) {
    return cpow(static_cast<double>(p.l), -1.0 - p.lambda) * riemann_zeta(1.0 + p.lambda);
}

// residue computed numerically: (1/2*pi*i) contour circle of D around the pole
inline cx estermann_residue_numeric(const EstermannPoint& p, cx pole, double radius = 0.05,
                                    int nodes = 64) {
    return contour_integral_circle(
        [&](cx s) { return estermann_D({s, p.lambda, p.h, p.l}); }, pole, radius, nodes);
}

// Functional equation at s = 1/2 + sp:
//   D(1/2+sp, la, h/l) = 2 (2 pi)^{-1-la+2 sp} Gamma(1/2-sp) Gamma(1/2+la-sp)
//     l^{la-2 sp} [ D(1/2-sp, -la, hbar/l) cos(pi la/2)
//                  + D(1/2-sp, -la, -hbar/l) sin(pi(sp - la/2)) ]
// with h hbar = 1 mod l.  Returns both sides.
struct EstermannFePair {
    cx lhs, rhs;
    double abs_residual() const { return std::abs(lhs - rhs); }
};

inline EstermannFePair verify_estermann_fe(const EstermannPoint& p) {
    cx sp = p.s - 0.5;
    cx la = p.lambda;
    int64_t hbar = p.l == 1 ? 0 : static_cast<int64_t>(invmod(static_cast<uint64_t>(p.h), p.l));
    EstermannFePair r;
    r.lhs = estermann_D(p);
    cx pref = 2.0 * cpow(2.0 * PI, -1.0 - la + 2.0 * sp) *
              std::exp(log_gamma(0.5 - sp) + log_gamma(0.5 + la - sp)) *
              cpow(static_cast<double>(p.l), la - 2.0 * sp);
    cx d_plus = estermann_D({0.5 - sp, -la, hbar, p.l});
    cx d_minus = estermann_D({0.5 - sp, -la, -hbar, p.l});
    cx ang = PI * (sp - la / 2.0);
    r.rhs = pref * (d_plus * std::cos(PI * la / 2.0) + d_minus * std::sin(ang));
    return r;
}

}  // namespace lmoment
