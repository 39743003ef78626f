#pragma once
// Approximate functional equation for the shifted divisor function:
//   sigma_la(n) = sum_l c_l(n) l^{-1+la} f_la(l/sqrt(n))
//               + n^la sum_l c_l(n) l^{-1-la} f_{-la}(l/sqrt(n)),
// with the smoothing kernel
//   f_la(x) = (1/2*pi*i) int_(a) x^{-w} zeta(1-la+w) G(w)/w dw,  a > |Re la|.
// Also the fixed-modulus Dirichlet-series identities the same machinery is
// fed through.  Every truncated comparison carries a certified tail bound;
// the bounds use divisor swaps rather than raw termwise estimates, otherwise
// they would be orders of magnitude too loose to certify 1e-6.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lmoment/arith.hpp"
#include "lmoment/contour.hpp"
#include "lmoment/gweight.hpp"
#include "lmoment/parallel.hpp"
#include "lmoment/special.hpp"

namespace lmoment {

// single evaluation of the kernel
inline cx f_lambda(double x, cx la, const GWeight& G,
                   const ContourSpec& spec = {1.0, 8.0, 4097}) {
    if (!(x > 0.0)) throw std::domain_error("f_lambda: x must be positive");
    if (spec.re_line <= std::abs(la.real()))
        throw std::invalid_argument("f_lambda: contour line must exceed |Re lambda|");
    return contour_integral(
        [&](cx w) { return cpow(x, -w) * riemann_zeta(1.0 - la + w) * G(w) / w; }, spec);
}

// Batched kernel on a fixed contour: nodes and zeta/G weights are computed
// once, each evaluation is one pass over the nodes.
class FLambdaKernel {
  public:
    FLambdaKernel(cx la, const GWeight& G, const ContourSpec& spec = {1.0, 8.0, 4097})
        : a_(spec.re_line) {
        spec.validate();
        if (spec.re_line <= std::abs(la.real()))
            throw std::invalid_argument("FLambdaKernel: contour line must exceed |Re lambda|");
        double h = 2.0 * spec.height / (spec.nodes - 1);
        t_.resize(spec.nodes);
        w_.resize(spec.nodes);
        for (int j = 0; j < spec.nodes; ++j) {
            double t = -spec.height + h * j;
            cx w(spec.re_line, t);
            double tw = (j == 0 || j == spec.nodes - 1) ? 0.5 : 1.0;
            t_[j] = t;
            w_[j] = riemann_zeta(1.0 - la + w) * G(w) / w * tw * (h / (2.0 * PI));
        }
    }

    cx operator()(double x) const {
        if (!(x > 0.0)) throw std::domain_error("FLambdaKernel: x must be positive");
        double u = std::log(x);
        cx acc = 0.0;
        for (size_t j = 0; j < w_.size(); ++j)
            acc += w_[j] * cx(std::cos(t_[j] * u), -std::sin(t_[j] * u));
        return acc * std::exp(-a_ * u);
    }

  private:
    double a_;
    std::vector<double> t_;
    std::vector<cx> w_;
};

// Kernel tabulated on a uniform grid in u = log x with cubic Lagrange
// interpolation, for inner loops that evaluate it millions of times.  Node
// sums are paid once per grid point, in parallel.
class FLambdaTable {
  public:
    FLambdaTable(cx la, const GWeight& G, double u_min, double u_max, double spacing = 5e-4,
                 const ContourSpec& spec = {1.0, 8.0, 4097}) {
        FLambdaKernel kernel(la, G, spec);
        u0_ = u_min - 0.1;
        double u1 = u_max + 0.1;
        h_ = spacing;
        size_t n = static_cast<size_t>(std::ceil((u1 - u0_) / h_)) + 1;
        vals_.resize(n);
        parallel_for(n, [&](size_t i) {
            vals_[i] = kernel(std::exp(u0_ + h_ * static_cast<double>(i)));
        });
    }

    cx operator()(double u) const {
        double t = (u - u0_) / h_;
        auto n = static_cast<ptrdiff_t>(vals_.size());
        auto i = static_cast<ptrdiff_t>(std::floor(t));
        if (i < 1 || i + 2 >= n)
            throw std::domain_error("FLambdaTable: argument outside tabulated range");
        double f = t - static_cast<double>(i);
        double wm = -f * (f - 1.0) * (f - 2.0) / 6.0;
        double w0 = (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0;
        double w1 = -(f + 1.0) * f * (f - 2.0) / 2.0;
        double w2 = (f + 1.0) * f * (f - 1.0) / 6.0;
        return wm * vals_[i - 1] + w0 * vals_[i] + w1 * vals_[i + 1] + w2 * vals_[i + 2];
    }

    cx at_x(double x) const { return (*this)(std::log(x)); }

  private:
    double u0_ = 0.0, h_ = 1.0;
    std::vector<cx> vals_;
};

namespace detail {

// smallest-prime-factor sieve, index 0..n
inline std::vector<uint32_t> spf_sieve(uint64_t n) {
    std::vector<uint32_t> spf(n + 1, 0);
    for (uint64_t i = 2; i <= n; ++i) {
        if (spf[i] != 0) continue;
        for (uint64_t j = i; j <= n; j += i)
            if (spf[j] == 0) spf[j] = static_cast<uint32_t>(i);
    }
    return spf;
}

// c_l(n) = mu(l/g) phi(l) / phi(l/g) with g = gcd(l, n), zero unless l/g is
// squarefree; both phi values read off one spf factorization pass.
inline double ramanujan_from_spf(const std::vector<uint32_t>& spf, uint64_t l, uint64_t n) {
    if (l == 1) return 1.0;
    uint64_t g = std::gcd(l, n);
    uint64_t m = l / g;
    double phi_l = 1.0, phi_m = 1.0;
    int mu_m = 1;
    uint64_t rest = l;
    while (rest > 1) {
        uint64_t p = spf[rest];
        int e_l = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e_l;
        }
        int e_m = 0;
        while (m % p == 0) {
            m /= p;
            ++e_m;
        }
        if (e_m >= 2) return 0.0;
        double pd = static_cast<double>(p);
        phi_l *= (pd - 1.0) * std::pow(pd, e_l - 1);
        if (e_m == 1) {
            mu_m = -mu_m;
            phi_m *= pd - 1.0;
        }
    }
    return static_cast<double>(mu_m) * phi_l / phi_m;
}

}  // namespace detail

struct DivisorAfeResult {
    cx direct;        // sum of the two kernel sums
    cx expected;      // sigma_la(n)
    double residual = 0.0;
    double tail_bound = 0.0;  // estimated size of the dropped l > l_max tail
};

// Verify the divisor AFE at one n.  With the plain Gaussian weight the kernel
// obeys |f_la(x)| <= (1.48/log x) exp(-log(x)^2/4) for x >= e^2, |Re la| <= 1/2
// (contour moved right to Re w = log(x)/2, crossing nothing), so
// l_max ~ e^10.2 sqrt(n) certifies a truncation tail below 1e-6.
inline DivisorAfeResult verify_divisor_afe(uint64_t n, cx la, const GWeight& G,
                                           uint64_t l_max,
                                           const ContourSpec& spec = {1.0, 8.0, 4097}) {
    if (n == 0) throw std::invalid_argument("verify_divisor_afe: n must be positive");
    double sq = std::sqrt(static_cast<double>(n));
    double u_min = std::log(1.0 / sq), u_max = std::log(static_cast<double>(l_max) / sq);
    FLambdaTable fpos(la, G, u_min, u_max, 5e-4, spec);
    FLambdaTable fneg(-la, G, u_min, u_max, 5e-4, spec);
    std::vector<uint32_t> spf = detail::spf_sieve(l_max);
    cx npow = cpow(static_cast<double>(n), la);
    cx total = parallel_sum<cx>(l_max, [&](size_t idx) {
        uint64_t l = idx + 1;
        double cld = detail::ramanujan_from_spf(spf, l, n);
        if (cld == 0.0) return cx(0.0);
        double u = std::log(static_cast<double>(l) / sq);
        cx t1 = cld * cpow(static_cast<double>(l), -1.0 + la) * fpos(u);
        cx t2 = npow * cld * cpow(static_cast<double>(l), -1.0 - la) * fneg(u);
        return t1 + t2;
    });
    DivisorAfeResult r;
    r.direct = total;
    r.expected = divisor_sigma(la, n);
    r.residual = std::abs(total - r.expected);
    // Tail over l > l_max.  |c_l(n)| <= sigma_1(n), and with a = Re la the
    // integral comparison sum_{l>L} l^{-1+-a} exp(-log(l/sqrt n)^2/4) <=
    // n^{+-a/2} e^{a^2} sqrt(pi) erfc(lx/2 -+ a) gives, for both kernel sums,
    //   tail <= (1.48/lx) sigma_1(n) n^{a/2} e^{a^2} sqrt(pi)
    //           [erfc(lx/2-a) + erfc(lx/2+a)],  lx = log(l_max/sqrt n).
    // Valid only for the plain Gaussian weight (polynomial factors would
    // break the kernel bound) and lx >= 2.
    double lx = u_max, a = la.real();
    if (G.zeros.empty() && lx >= 2.0 && std::abs(a) <= 0.5) {
        double sig1 = std::abs(divisor_sigma(cx(1.0, 0.0), n));
        r.tail_bound = (1.48 / lx) * sig1 * std::pow(static_cast<double>(n), 0.5 * a) *
                       std::exp(a * a) * std::sqrt(PI) *
                       (std::erfc(0.5 * lx - a) + std::erfc(0.5 * lx + a));
    } else {
        r.tail_bound = 1e300;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Dirichlet-series identities at a fixed modulus d (1 or prime):
//
//  (1) sum_{n = 0 mod d} sigma_la(n) n^{-s}
//        = zeta(s) zeta(s-la) d^{-s} sum_{bc = d} mu(b) b^{-(s-la)} sigma_la(c)
//  (2) sigma_al(n) = zeta(1-al) sum_l c_l(n) l^{-(1-al)}         (Re al < 0)
//  (3) sum_l l^{-(2+la)} sum*_{h mod l} sum_{n = 0 mod d} e(nh/l) n^{-s}
//        = zeta(s) zeta(1+la+s) / (d^s zeta(2+la)) (1 + d^{-1-la} - d^{-1-la-s})

struct IdentityCheck {
    cx numeric;
    cx closed;
    double tail_bound = 0.0;
    double residual() const { return std::abs(numeric - closed); }
};

namespace detail {

// sum_{m > y} m^{-e} for e > 1, valid for any y >= 0
inline double zeta_tail(double y, double e) {
    if (y < 1.0) return riemann_zeta(cx(e)).real();
    return std::pow(y, -e) + std::pow(y, 1.0 - e) / (e - 1.0);
}

}  // namespace detail

inline IdentityCheck divisor_multiple_identity(cx s, cx la, uint64_t d, uint64_t n_max) {
    if (d != 1 && !is_prime(d))
        throw std::invalid_argument("divisor_multiple_identity: d must be 1 or prime");
    std::vector<cx> sig = divisor_sigma_sieve(la, n_max);
    cx acc = parallel_sum<cx>(n_max / d, [&](size_t idx) {
        uint64_t n = (idx + 1) * d;
        return sig[n] * cpow(static_cast<double>(n), -s);
    });
    IdentityCheck r;
    r.numeric = acc;
    cx factor = 0.0;
    for (uint64_t b : divisors(d)) {
        uint64_t c = d / b;
        factor += static_cast<double>(mobius(b)) * cpow(static_cast<double>(b), -(s - la)) *
                  divisor_sigma(la, c);
    }
    r.closed = riemann_zeta(s) * riemann_zeta(s - la) * cpow(static_cast<double>(d), -s) * factor;
    // tail over all n > N via the divisor swap sigma_la(n) = sum_{uv=n} u^la:
    //   sum_{uv > N} u^{a-sg} v^{-sg}
    //     <= N^{1-sg}/(sg-1) sum_{u<=N} u^{a-1} + N^{-sg} sum_{u<=N} u^a
    //        + zeta(sg) * tail_{u>N}(u^{a-sg})
    double sg = s.real(), a = la.real();
    if (sg > 1.0 && sg - a > 1.0) {
        double N = static_cast<double>(n_max);
        double su_am1 = 1.0 + (a > 1e-9 ? (std::pow(N, a) - 1.0) / a : std::log(N) + 1.0);
        double su_a = 1.0 + (std::pow(N, 1.0 + a) - 1.0) / (1.0 + a);
        double zs = riemann_zeta(cx(sg)).real();
        r.tail_bound = std::pow(N, 1.0 - sg) / (sg - 1.0) * su_am1 +
                       std::pow(N, -sg) * su_a + zs * detail::zeta_tail(N, sg - a);
    } else {
        r.tail_bound = 1e300;
    }
    return r;
}

inline IdentityCheck ramanujan_expansion_identity(cx al, uint64_t n, uint64_t l_max) {
    if (al.real() >= 0.0)
        throw std::invalid_argument("ramanujan_expansion_identity: Re alpha must be negative");
    cx acc = parallel_sum<cx>(l_max, [&](size_t idx) {
        uint64_t l = idx + 1;
        int64_t cl = ramanujan_sum(l, static_cast<int64_t>(n));
        if (cl == 0) return cx(0.0);
        return static_cast<double>(cl) * cpow(static_cast<double>(l), -(1.0 - al));
    });
    IdentityCheck r;
    r.numeric = riemann_zeta(1.0 - al) * acc;
    r.closed = divisor_sigma(al, n);
    // |c_l(n)| <= sigma_1(gcd(l, n)): group the tail by g = gcd(l, n), so
    //   tail <= |zeta(1-al)| sum_{g|n} sigma_1(g) sum_{l > L, g|l} l^{-expo}
    double expo = 1.0 - al.real();  // > 1
    double zl = std::abs(riemann_zeta(1.0 - al));
    double L = static_cast<double>(l_max);
    double tail = 0.0;
    for (uint64_t g : divisors(n)) {
        double gd = static_cast<double>(g);
        double s1g = std::abs(divisor_sigma(cx(1.0, 0.0), g));
        tail += s1g * std::pow(gd, -expo) * detail::zeta_tail(L / gd, expo);
    }
    r.tail_bound = zl * tail;
    return r;
}

// Identity (3).  Summing e(nh/l) over reduced h gives c_l(n), and the inner
// n-series is evaluated in closed form on progressions:
//   sum_{n = 0 mod d} c_l(n) n^{-s} = (dl)^{-s} sum_{r=1}^{l} c_l(dr) zeta(s, r/l),
// exact for Re s > 1, so the only truncation is in l.
inline IdentityCheck progression_twist_identity(cx s, cx la, uint64_t d, uint64_t l_max) {
    if (d != 1 && !is_prime(d))
        throw std::invalid_argument("progression_twist_identity: d must be 1 or prime");
    double sg = s.real(), el = 2.0 + la.real();
    if (sg <= 1.0) throw std::invalid_argument("progression_twist_identity: need Re s > 1");
    cx acc = parallel_sum<cx>(l_max, [&](size_t idx) {
        uint64_t l = idx + 1;
        cx inner = 0.0;
        for (uint64_t rr = 1; rr <= l; ++rr) {
            int64_t cl = ramanujan_sum(l, static_cast<int64_t>(d * rr));
            if (cl == 0) continue;
            inner += static_cast<double>(cl) * hurwitz_zeta(s, static_cast<double>(rr) / l);
        }
        inner *= cpow(static_cast<double>(d) * static_cast<double>(l), -s);
        return inner * cpow(static_cast<double>(l), -(2.0 + la));
    });
    IdentityCheck r;
    r.numeric = acc;
    cx dm = cpow(static_cast<double>(d), -1.0 - la);
    r.closed = riemann_zeta(s) * riemann_zeta(1.0 + la + s) /
               (cpow(static_cast<double>(d), s) * riemann_zeta(2.0 + la)) *
               (1.0 + dm - dm * cpow(static_cast<double>(d), -s));
    // l-tail.  With A_l = sum_{n=0 mod d} c_l(n) n^{-s} written through
    // c_l(n) = sum_{d'|(l,n)} d' mu(l/d'),
    //   |A_l| <= zeta(sg) [ d^{-sg} sigma_{1-sg}(l) + 1_{d|l} d^{1-sg} sigma_{1-sg}(l) ],
    // and sum_{l>L} l^{-el} sigma_{1-sg}(l) telescopes through the divisor swap:
    //   T(L) = L^{-el} zeta(sg-1) + L^{1-el} zeta(sg) / (el-1).
    if (sg > 2.0 && el > 1.0) {
        double L = static_cast<double>(l_max), dd = static_cast<double>(d);
        double zs = riemann_zeta(cx(sg)).real();
        double zs1 = riemann_zeta(cx(sg - 1.0)).real();
        auto T = [&](double Lf) {
            return std::pow(Lf, -el) * zs1 + std::pow(Lf, 1.0 - el) * zs / (el - 1.0);
        };
        double t_all = T(L);
        double t_div = (d == 1) ? t_all : zs1 * std::pow(dd, -el) * detail::zeta_tail(L / dd, el);
        r.tail_bound = zs * (std::pow(dd, -sg) * t_all + std::pow(dd, 1.0 - sg) * t_div);
    } else {
        r.tail_bound = 1e300;
    }
    return r;
}

}  // namespace lmoment
