#pragma once
// Shift tuples and the even entire weight G(s) = Q(s) exp(s^2) used inside
// the smoothing integrals.  Q is an even polynomial given by its prescribed
// zero pairs +-z; zeros are placed to cancel poles that would otherwise
// contribute unwanted residues when contours are moved.

#include <array>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmoment/arith.hpp"

namespace lmoment {

struct ShiftTuple {
    cx alpha, beta, gamma, delta;

    std::array<cx, 4> as_array() const { return {alpha, beta, gamma, delta}; }

    ShiftTuple negated() const { return {-alpha, -beta, -gamma, -delta}; }

    // sums pairing the first group {alpha,beta} with the second {gamma,delta}
    std::array<cx, 4> cross_sums() const {
        return {alpha + gamma, alpha + delta, beta + gamma, beta + delta};
    }

    double max_abs() const {
        double m = 0.0;
        for (cx v : as_array()) m = std::max(m, std::abs(v));
        return m;
    }

    void validate(double bound = 0.2) const {
        if (max_abs() > bound)
            throw std::invalid_argument("ShiftTuple: shift exceeds |.| <= " + std::to_string(bound));
    }
};

// G(s) = exp(s^2) * prod_i (1 - s^2 / z_i^2); G(0) = 1 and G even by
// construction.  zeros lists one representative per +-z pair.
struct GWeight {
    std::vector<cx> zeros;

    cx operator()(cx s) const {
        cx q = 1.0;
        cx s2 = s * s;
        for (cx z : zeros) q *= 1.0 - s2 / (z * z);
        return q * std::exp(s2);
    }
};

// Weight with no polynomial factor: G(s) = exp(s^2).  The default for the
// series-side smoothing, where no residue cancellation is needed.
inline GWeight bare_weight() { return GWeight{}; }

// Zeros at +-(alpha+gamma)/2 and +-(beta+delta)/2 only: the minimal set that
// kills the off-line poles met when the two main-term integrals are folded
// into one another.
inline GWeight assembly_weight(const ShiftTuple& sh, double min_sep = 1e-3) {
    cx zag = 0.5 * (sh.alpha + sh.gamma);
    cx zbd = 0.5 * (sh.beta + sh.delta);
    if (std::abs(zag) < 0.5 * min_sep || std::abs(zbd) < 0.5 * min_sep)
        throw std::invalid_argument("assembly_weight: shift pair sum too close to zero");
    return GWeight{{zag, zbd}};
}

// Full prescribed-zero weight: pair-sum zeros 2s = -(xi+eta) for xi in
// {alpha,beta}, eta in {gamma,delta}, plus zeros at s = 1/2+xi and 1/2-xi for
// every shift.  Degree 24 in s.
inline GWeight build_G(const ShiftTuple& sh, double min_sep = 1e-3) {
    sh.validate();
    GWeight g;
    for (cx xi : {sh.alpha, sh.beta})
        for (cx eta : {sh.gamma, sh.delta}) {
            if (std::abs(xi + eta) < min_sep)
                throw std::invalid_argument("build_G: pair sum below separation floor");
            g.zeros.push_back(0.5 * (xi + eta));
        }
    for (cx xi : sh.as_array()) {
        g.zeros.push_back(0.5 + xi);
        g.zeros.push_back(0.5 - xi);
    }
    return g;
}

// Random shift tuple usable by every downstream routine: all |shift| <= bound,
// every cross sum, same-group difference and the full four-sum at least
// min_sep away from 0.
template <typename Rng>
ShiftTuple random_admissible_shifts(Rng& rng, double bound = 0.2, double min_sep = 1e-3) {
    std::uniform_real_distribution<double> u(-bound * 0.7, bound * 0.7);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        ShiftTuple sh{cx(u(rng), 0.3 * u(rng)), cx(u(rng), 0.3 * u(rng)),
                      cx(u(rng), 0.3 * u(rng)), cx(u(rng), 0.3 * u(rng))};
        if (sh.max_abs() > bound) continue;
        auto a = sh.as_array();
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i)
            for (int j = 0; j < 4 && ok; ++j) {
                if (i != j && std::abs(a[i] - a[j]) < min_sep) ok = false;
                if (std::abs(a[i] + a[j]) < min_sep) ok = false;
            }
        cx four = a[0] + a[1] + a[2] + a[3];
        if (std::abs(four) < min_sep) ok = false;
        if (ok) return sh;
    }
    throw std::runtime_error("random_admissible_shifts: rejection sampling failed");
}

}  // namespace lmoment
