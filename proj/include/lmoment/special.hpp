#pragma once
// Complex special functions tuned for the ranges this project actually hits:
// |Im s| <= ~60 on zeta lines, |z| <= ~120 for gamma ratios.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "lmoment/arith.hpp"

namespace lmoment {

// x^w for real x > 0
inline cx cpow(double x, cx w) {
    if (x <= 0.0) throw std::domain_error("cpow: base must be positive");
    return std::exp(w * std::log(x));
}

namespace detail {

// B_{2k} for k = 1..12
inline constexpr double BERN2K[12] = {
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0,
    -174611.0 / 330.0, 854513.0 / 138.0, -236364091.0 / 2730.0};

inline bool is_nonpositive_integer(cx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace detail

// log Gamma(z), principal branch up to a fixed multiple of 2*pi*i along the
// recurrence path.  Callers only ever exponentiate differences, so the branch
// constant cancels; do not feed this to anything that needs arg continuity.
inline cx log_gamma(cx z) {
    if (detail::is_nonpositive_integer(z))
        throw std::domain_error("log_gamma: pole at z = " + std::to_string(z.real()));
    cx shift = 0.0;
    while (std::abs(z) < 16.0) {
        shift -= std::log(z);
        z += 1.0;
    }
    // Stirling: (z - 1/2) log z - z + log(2 pi)/2 + sum B_2k / (2k(2k-1) z^{2k-1})
    cx lg = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * PI);
    cx zi2 = 1.0 / (z * z);
    cx zpow = 1.0 / z;
    for (int k = 1; k <= 10; ++k) {
        lg += detail::BERN2K[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * zpow;
        zpow *= zi2;
    }
    return lg + shift;
}

// Gamma(num)/Gamma(den) through log differences
inline cx gamma_ratio(cx num, cx den) {
    return std::exp(log_gamma(num) - log_gamma(den));
}

// Hurwitz zeta(s, a) for a > 0, s != 1, by Euler-Maclaurin.  Direct sum to
// N = max(30, 1.5 |Im s|) then 12 Bernoulli correction terms; good to about
// 1e-12 relative for |Im s| <= 50.  For Re s < 0 the direct terms grow like
// n^{-Re s}, so a long shift only adds cancellation roundoff; a short one
// already puts the Bernoulli tail far below it.
inline cx hurwitz_zeta(cx s, double a) {
    if (a <= 0.0) throw std::domain_error("hurwitz_zeta: a must be positive");
    if (std::abs(s - cx(1.0)) < 1e-12)
        throw std::domain_error("hurwitz_zeta: pole at s = 1");
    int floor_n = s.real() < 0.0 ? 10 : 30;
    int N = std::max(floor_n, static_cast<int>(std::ceil(1.5 * std::abs(s.imag()))));
    cx sum = 0.0;
    for (int n = 0; n < N; ++n)
        sum += std::exp(-s * std::log(a + n));
    double z = a + N;
    cx zs = std::exp(-s * std::log(z));        // z^{-s}
    sum += zs * z / (s - 1.0);                 // z^{1-s}/(s-1)
    sum += 0.5 * zs;
    // sum_k B_{2k}/(2k)! * (s)_{2k-1} * z^{-s-2k+1}
    cx poch = s;                               // (s)_1
    double fact = 2.0;                         // (2k)!
    cx zp = zs / z;                            // z^{-s-1}
    for (int k = 1; k <= 12; ++k) {
        sum += detail::BERN2K[k - 1] / fact * poch * zp;
        poch *= (s + cx(2.0 * k - 1.0)) * (s + cx(2.0 * k));
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        zp /= z * z;
    }
    return sum;
}

// Riemann zeta.  In the left half-plane the Euler-Maclaurin sum cancels badly
// relative to |zeta(s)| (small near the trivial zeros), so reflect through
// zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s), where every factor
// is evaluated to near machine precision.
inline cx riemann_zeta(cx s) {
    if (s.real() < 0.0) {
        cx pref = std::exp(s * std::log(cx(2.0)) + (s - 1.0) * std::log(cx(PI)) +
                           log_gamma(1.0 - s)) *
                  std::sin(0.5 * PI * s);
        return pref * hurwitz_zeta(1.0 - s, 1.0);
    }
    return hurwitz_zeta(s, 1.0);
}

// zeta with the Euler factor at q removed: zeta_q(s) = zeta(s) (1 - q^{-s})
inline cx zeta_q(cx s, uint64_t q) {
    return riemann_zeta(s) * (1.0 - cpow(static_cast<double>(q), -s));
}

}  // namespace lmoment
