#pragma once
// Quadrature for (1/2*pi*i) integrals over truncated vertical lines and small
// circles.  Line truncation relies on the integrand decaying like exp(-t^2)
// (every integrand we use carries an exp(s^2) factor), so modest heights
// suffice; node counts are chosen by the doubling tests.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

#include "lmoment/arith.hpp"

namespace lmoment {

struct ContourSpec {
    double re_line = 1.0;   // real part of the vertical line
    double height = 8.0;    // integrate t in [-height, height]
    int nodes = 4097;       // total sample count, >= 16

    void validate() const {
        if (!(height > 0.0)) throw std::invalid_argument("ContourSpec: height must be positive");
        if (nodes < 16) throw std::invalid_argument("ContourSpec: nodes must be at least 16");
    }

    ContourSpec doubled() const { return {re_line, height, 2 * nodes - 1}; }
};

// (1/2*pi*i) * integral over the truncated line Re s = re_line, trapezoid rule.
template <typename F>
cx contour_integral(F&& f, const ContourSpec& spec) {
    spec.validate();
    double h = 2.0 * spec.height / (spec.nodes - 1);
    cx acc = 0.0;
    for (int j = 0; j < spec.nodes; ++j) {
        double t = -spec.height + h * j;
        cx v = f(cx(spec.re_line, t));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::runtime_error("contour_integral: non-finite sample at t = " + std::to_string(t));
        double w = (j == 0 || j == spec.nodes - 1) ? 0.5 : 1.0;
        acc += w * v;
    }
    // ds = i dt, so the 1/(2*pi*i) cancels the i and leaves h/(2*pi)
    return acc * (h / (2.0 * PI));
}

// (1/2*pi*i) * closed circle integral around center; equally spaced nodes,
// spectrally accurate for meromorphic integrands.
template <typename F>
cx contour_integral_circle(F&& f, cx center, double radius, int nodes) {
    if (!(radius > 0.0)) throw std::invalid_argument("contour_integral_circle: radius must be positive");
    if (nodes < 8) throw std::invalid_argument("contour_integral_circle: nodes must be at least 8");
    cx acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
        cx w = e2pi(static_cast<double>(j) / nodes);
        cx v = f(center + radius * w);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::runtime_error("contour_integral_circle: non-finite sample");
        acc += v * w;
    }
    return acc * (radius / static_cast<double>(nodes));
}

}  // namespace lmoment
