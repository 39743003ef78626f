#pragma once
// Shifted fourth moments of L(1/2, chi) mod prime q, two independent routes:
//   moment_even / moment_odd: straight character sums over L-value grids;
//   moment_via_divisor_sum: the smoothed double divisor sum obtained by
//     expanding each L-product through its approximate functional equation
//     and averaging over even primitive characters.
// Agreement between the two is one of the principal correctness checks.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lmoment/arith.hpp"
#include "lmoment/characters.hpp"
#include "lmoment/contour.hpp"
#include "lmoment/gweight.hpp"
#include "lmoment/parallel.hpp"
#include "lmoment/special.hpp"

namespace lmoment {

// g(s) = pi^{-2s} prod_xi Gamma((1/2 + xi + s + a)/2) / Gamma((1/2 + xi + a)/2)
// with a the parity; the archimedean factor of the four-fold functional
// equation, normalized so g(0) = 1.
inline cx g_factor(cx s, const ShiftTuple& sh, int parity) {
    double a = static_cast<double>(parity);
    cx p = cpow(PI, -2.0 * s);
    for (cx xi : sh.as_array())
        p *= gamma_ratio((0.5 + xi + s + a) / 2.0, (0.5 + xi + a) / 2.0);
    return p;
}

// V(x) = (1/2*pi*i) int_(c) G(s)/s g(s) x^{-s} ds.  Tends to 1 as x -> 0 and
// decays faster than any power as x -> infinity.
inline cx v_weight(double x, const ShiftTuple& sh, int parity, const GWeight& G,
                   const ContourSpec& spec = {1.0, 8.0, 4097}) {
    if (!(x > 0.0)) throw std::domain_error("v_weight: x must be positive");
    return contour_integral(
        [&](cx s) { return G(s) / s * g_factor(s, sh, parity) * cpow(x, -s); }, spec);
}

// Uniform-grid cubic interpolation of V on u = log x.  Table build samples
// the contour integrand once per grid node (exact phases, parallel over
// nodes); evaluation is O(1).  Spacing 5e-4 keeps the interpolation bias far
// below the 1e-8 comparisons downstream.
class VTable {
  public:
    VTable(const ShiftTuple& sh, int parity, const GWeight& G, double u_min, double u_max,
           double spacing = 5e-4, const ContourSpec& spec = {1.0, 8.0, 4097}) {
        spec.validate();
        u0_ = u_min - 0.1;
        double u1 = u_max + 0.1;
        h_ = spacing;
        size_t n = static_cast<size_t>(std::ceil((u1 - u0_) / h_)) + 1;
        vals_.resize(n);
        // contour samples shared by every node
        double ch = 2.0 * spec.height / (spec.nodes - 1);
        std::vector<cx> s_nodes(spec.nodes), w_nodes(spec.nodes);
        for (int j = 0; j < spec.nodes; ++j) {
            cx s(spec.re_line, -spec.height + ch * j);
            double tw = (j == 0 || j == spec.nodes - 1) ? 0.5 : 1.0;
            s_nodes[j] = s;
            w_nodes[j] = G(s) / s * g_factor(s, sh, parity) * tw * (ch / (2.0 * PI));
        }
        parallel_for(n, [&](size_t i) {
            double u = u0_ + h_ * static_cast<double>(i);
            cx acc = 0.0;
            for (int j = 0; j < spec.nodes; ++j)
                acc += w_nodes[j] * std::exp(-s_nodes[j] * u);
            vals_[i] = acc;
        });
    }

    // cubic Lagrange through the four surrounding nodes; exact on cubics, so
    // the interpolation bias is O(h^4)
    cx operator()(double u) const {
        double t = (u - u0_) / h_;
        auto n = static_cast<ptrdiff_t>(vals_.size());
        auto i = static_cast<ptrdiff_t>(std::floor(t));
        if (i < 1 || i + 2 >= n)
            throw std::domain_error("VTable: argument outside tabulated range");
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

// ---------------------------------------------------------------------------
// Character-sum route.

// (2/phi*(q)) sum over primitive even chi of
//   L(1/2+a, chi) L(1/2+b, chi) L(1/2+g, conj chi) L(1/2+d, conj chi)
inline cx moment_even(GridCache& cache, const ShiftTuple& sh) {
    const CharacterTable& t = cache.table();
    const std::vector<cx>& ga = cache.get(0.5 + sh.alpha);
    const std::vector<cx>& gb = cache.get(0.5 + sh.beta);
    const std::vector<cx>& gg = cache.get(0.5 + sh.gamma);
    const std::vector<cx>& gd = cache.get(0.5 + sh.delta);
    uint64_t n = t.order();
    cx acc = 0.0;
    for (uint64_t j = 2; j < n; j += 2) {
        uint64_t jc = n - j;
        acc += ga[j] * gb[j] * gg[jc] * gd[jc];
    }
    return acc * (2.0 / static_cast<double>(t.q - 2));
}

inline cx moment_even(const CharacterTable& t, const ShiftTuple& sh) {
    GridCache cache(t);
    return moment_even(cache, sh);
}

inline cx moment_odd(GridCache& cache, const ShiftTuple& sh) {
    const CharacterTable& t = cache.table();
    const std::vector<cx>& ga = cache.get(0.5 + sh.alpha);
    const std::vector<cx>& gb = cache.get(0.5 + sh.beta);
    const std::vector<cx>& gg = cache.get(0.5 + sh.gamma);
    const std::vector<cx>& gd = cache.get(0.5 + sh.delta);
    uint64_t n = t.order();
    cx acc = 0.0;
    for (uint64_t j = 1; j < n; j += 2) {
        uint64_t jc = n - j;
        acc += ga[j] * gb[j] * gg[jc] * gd[jc];
    }
    return acc * (2.0 / static_cast<double>(t.q - 2));
}

// (1/phi*(q)) sum over all primitive chi of |L(1/2, chi)|^4
inline double fourth_moment(const CharacterTable& t) {
    std::vector<cx> grid = l_value_grid(t, cx(0.5, 0.0));
    double acc = 0.0;
    for (uint64_t j = 1; j < t.order(); ++j) {
        double m2 = std::norm(grid[j]);
        acc += m2 * m2;
    }
    return acc / static_cast<double>(t.q - 2);
}

// ---------------------------------------------------------------------------
// Divisor-sum route.  Averaging the AFE over even primitive characters turns
// the moment into
//   A1(sh) + X4(sh) A1(-sh),
// where A1 collects sigma_{alpha-beta}(m) sigma_{gamma-delta}(n) weighted by
// m^{-1/2-alpha} n^{-1/2-gamma} V(mn/q^2) over (mn, q) = 1, and the
// orthogonality relation reduces the character average to the three sums
//   all (m, n), m = n mod q, m = -n mod q:
//   A1 = [ (q-1)(S_cong+ + S_cong-) - 2 S_all ] / (q-2).

namespace detail {

struct A1Terms {
    cx s_all, s_plus, s_minus;
};

// coefficient arrays a[m] = sigma_{la}(m) m^{-1/2-sa}, zeroed at multiples of q
inline std::vector<cx> coefficient_array(cx la, cx sa, uint64_t limit, uint64_t q) {
    std::vector<cx> a = divisor_sigma_sieve(la, limit);
    a[0] = 0.0;
    for (uint64_t m = 1; m <= limit; ++m) {
        if (m % q == 0) { a[m] = 0.0; continue; }
        a[m] *= std::exp((-0.5 - sa) * std::log(static_cast<double>(m)));
    }
    return a;
}

inline A1Terms a1_sums(const ShiftTuple& sh, uint64_t q, const GWeight& G, double cutoff,
                       const ContourSpec& spec) {
    uint64_t X = static_cast<uint64_t>(std::floor(cutoff * static_cast<double>(q) * static_cast<double>(q)));
    if (X < 1) throw std::invalid_argument("a1_sums: cutoff too small");
    std::vector<cx> A = coefficient_array(sh.alpha - sh.beta, sh.alpha, X, q);
    std::vector<cx> B = coefficient_array(sh.gamma - sh.delta, sh.gamma, X, q);
    std::vector<double> lg(X + 1, 0.0);
    for (uint64_t m = 1; m <= X; ++m) lg[m] = std::log(static_cast<double>(m));
    double l2q = 2.0 * std::log(static_cast<double>(q));
    VTable V(sh, 0, G, -l2q, std::log(cutoff) + 1e-9, 5e-4, spec);

    A1Terms r;
    // all pairs mn <= X, split over m for determinism-friendly blocks
    r.s_all = parallel_sum_strided<cx>(X, [&](size_t idx) {
        uint64_t m = idx + 1;
        if (A[m] == cx(0.0)) return cx(0.0);
        uint64_t nmax = X / m;
        cx acc = 0.0;
        for (uint64_t n = 1; n <= nmax; ++n) {
            if (B[n] == cx(0.0)) continue;
            acc += B[n] * V(lg[m] + lg[n] - l2q);
        }
        return A[m] * acc;
    });
    // m = n (mod q): n runs over m mod q, m mod q + q, ...  A[m] != 0 already
    // forces (m, q) = 1, so the start residue is never 0.
    r.s_plus = parallel_sum_strided<cx>(X, [&](size_t idx) {
        uint64_t m = idx + 1;
        if (A[m] == cx(0.0)) return cx(0.0);
        uint64_t nmax = X / m;
        cx acc = 0.0;
        for (uint64_t n = m % q; n <= nmax; n += q) {
            if (B[n] == cx(0.0)) continue;
            acc += B[n] * V(lg[m] + lg[n] - l2q);
        }
        return A[m] * acc;
    });
    // m = -n (mod q): n = f q - m
    r.s_minus = parallel_sum_strided<cx>(X, [&](size_t idx) {
        uint64_t m = idx + 1;
        if (A[m] == cx(0.0)) return cx(0.0);
        uint64_t nmax = X / m;
        cx acc = 0.0;
        for (uint64_t n = q - m % q; n <= nmax; n += q) {
            if (B[n] == cx(0.0)) continue;
            acc += B[n] * V(lg[m] + lg[n] - l2q);
        }
        return A[m] * acc;
    });
    return r;
}

}  // namespace detail

// A1 piece for one sign of the shifts
inline cx a1_divisor_sum(const ShiftTuple& sh, uint64_t q, const GWeight& G, double cutoff,
                         const ContourSpec& spec = {1.0, 8.0, 4097}) {
    detail::A1Terms t = detail::a1_sums(sh, q, G, cutoff, spec);
    double qm1 = static_cast<double>(q - 1), qm2 = static_cast<double>(q - 2);
    return (qm1 * (t.s_plus + t.s_minus) - 2.0 * t.s_all) / qm2;
}

// the full even moment through the divisor-sum route; cutoff counts products
// mn up to cutoff * q^2
inline cx moment_via_divisor_sum(uint64_t q, const ShiftTuple& sh, const GWeight& G,
                                 double cutoff = 40.0,
                                 const ContourSpec& spec = {1.0, 8.0, 4097}) {
    if (!is_prime(q) || q <= 3)
        throw std::invalid_argument("moment_via_divisor_sum: modulus must be a prime > 3");
    sh.validate();
    cx direct = a1_divisor_sum(sh, q, G, cutoff, spec);
    cx dual = a1_divisor_sum(sh.negated(), q, G, cutoff, spec);
    cx x4 = x_factor4(sh.as_array(), 0, q);
    return direct + x4 * dual;
}

// diagonal m = n portion of S_all; its comparison against the leading
// zeta-product is a report-only diagnostic
inline cx diagonal_divisor_sum(const ShiftTuple& sh, uint64_t q, const GWeight& G,
                               double cutoff = 40.0,
                               const ContourSpec& spec = {1.0, 8.0, 4097}) {
    uint64_t X = static_cast<uint64_t>(std::floor(cutoff * static_cast<double>(q) * static_cast<double>(q)));
    uint64_t mmax = static_cast<uint64_t>(std::floor(std::sqrt(static_cast<double>(X))));
    std::vector<cx> A = detail::coefficient_array(sh.alpha - sh.beta, sh.alpha, mmax, q);
    std::vector<cx> B = detail::coefficient_array(sh.gamma - sh.delta, sh.gamma, mmax, q);
    double l2q = 2.0 * std::log(static_cast<double>(q));
    VTable V(sh, 0, G, -l2q, std::log(cutoff) + 1e-9, 5e-4, spec);
    cx acc = 0.0;
    for (uint64_t m = 1; m <= mmax; ++m) {
        if (A[m] == cx(0.0)) continue;
        acc += A[m] * B[m] * V(2.0 * std::log(static_cast<double>(m)) - l2q);
    }
    return acc;
}

struct MomentReport {
    uint64_t q = 0;
    int parity = 0;
    ShiftTuple shifts;
    cx moment;        // character-sum value
    cx reference;     // conjectured main term (or second route)
    double abs_dev = 0.0;
    double rel_dev = 0.0;
    double runtime_ms = 0.0;
};

}  // namespace lmoment
