#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "lmoment/expsums.hpp"
#include "lmoment/rng.hpp"
#include "golden_values.hpp"

using namespace lmoment;

TEST_CASE("three-variable exponential sum: closed form on full enumerations", "[expsums]") {
    for (uint64_t q : {5ull, 7ull, 11ull}) {
        for (int64_t x = 0; x < static_cast<int64_t>(q); ++x)
            for (int64_t y = 0; y < static_cast<int64_t>(q); ++y)
                for (int64_t z = 0; z < static_cast<int64_t>(q); ++z) {
                    cx brute = t_sum_brute(x, y, z, q);
                    cx closed = t_sum_closed(x, y, z, q);
                    CHECK(std::abs(brute - closed) <= 1e-6);
                }
    }
    CHECK_THROWS_AS(t_sum_brute(1, 1, 1, 8), std::invalid_argument);
    CHECK_THROWS_AS(t_sum_brute(1, 1, 1, 101), std::invalid_argument);  // loop cap
    CHECK_THROWS_AS(t_sum_closed(1, 1, 1, 9), std::invalid_argument);
}

TEST_CASE("three-variable exponential sum: size bounds by regime", "[expsums]") {
    for (uint64_t q : {5ull, 7ull, 11ull, 13ull}) {
        for (int64_t x = 0; x < static_cast<int64_t>(q); ++x)
            for (int64_t y = 0; y < static_cast<int64_t>(q); ++y)
                for (int64_t z = 0; z < static_cast<int64_t>(q); ++z) {
                    double v = std::abs(t_sum_closed(x, y, z, q));
                    CHECK(v <= t_sum_hard_bound(x, y, z, q) + 1e-9);
                }
        // the degenerate z=0, x=-y case actually attains q^2 - it is not slack
        cx attained = t_sum_closed(1, static_cast<int64_t>(q) - 1, 0, q);
        CHECK(std::abs(attained) >= static_cast<double>(q * q) - static_cast<double>(2 * q));
    }

    // soft envelope at a larger modulus: ratio diagnostics stay below 10
    Rng rng(600);
    uint64_t q = 499;
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        int64_t x = static_cast<int64_t>(rng.uniform_int(0, q - 1));
        int64_t y = static_cast<int64_t>(rng.uniform_int(0, q - 1));
        int64_t z = static_cast<int64_t>(rng.uniform_int(0, q - 1));
        double ratio = std::abs(t_sum_closed(x, y, z, q)) / t_sum_envelope(x, y, z, q);
        worst = std::max(worst, ratio);
    }
    CHECK(worst <= 10.0);
}

TEST_CASE("bump window normalization and support", "[expsums]") {
    SmoothBump W;
    CHECK(W(1.5) == 1.0);
    CHECK(W(1.0) == 0.0);
    CHECK(W(2.0) == 0.0);
    CHECK(W(0.5) == 0.0);
    CHECK(W(1.2) > 0.0);
    CHECK(W(1.2) < 1.0);
    CHECK(W(1.3) == Catch::Approx(W(1.7)).margin(1e-14));  // symmetric about 3/2
}

TEST_CASE("smoothed inverse sums: frozen regression value and bound fields", "[expsums]") {
    SklResult r = s_kl_scan(50.0, 50.0, 101);
    CHECK(std::abs(r.value - 176.655975184544) <= 1e-9 * 176.655975184544);
    CHECK(r.bound_linear == Catch::Approx(50.0 * std::sqrt(101.0)).margin(1e-9));
    CHECK(r.bound_bilinear ==
          Catch::Approx(std::sqrt(50.0) * std::pow(101.0, 0.75) + std::sqrt(50.0) * 50.0)
              .margin(1e-9));
    CHECK(r.ratio_linear == Catch::Approx(r.value / r.bound_linear).margin(1e-12));
    CHECK(r.ratio_bilinear == Catch::Approx(r.value / r.bound_bilinear).margin(1e-12));
    CHECK(r.value < r.trivial);  // cancellation actually happened
    CHECK(r.ratio_linear <= 10.0);
    CHECK(r.ratio_bilinear <= 10.0);

    CHECK_THROWS_AS(s_kl_scan(10.0, 10.0, 12), std::invalid_argument);
    CHECK_THROWS_AS(s_kl_scan(1e6, 10.0, 101), std::invalid_argument);
    CHECK_THROWS_AS(s_kl_scan(10.0, 1e6, 101), std::invalid_argument);
}

TEST_CASE("divisor counts in progressions: exact references and cancellation", "[expsums]") {
    DivisorApResult r = divisor_ap_residual(100, 5, 1);
    CHECK(r.class_sum == golden::DIVISOR_AP_CLASS_SUM);
    CHECK(r.coprime_sum == golden::DIVISOR_AP_COPRIME_SUM);
    CHECK(std::abs(r.residual -
                   (static_cast<double>(r.class_sum) - static_cast<double>(r.coprime_sum) / 4.0)) <=
          1e-12);

    // residuals over all reduced classes sum to zero exactly
    for (uint64_t q : {5ull, 7ull}) {
        double acc = 0.0;
        int64_t coprime = 0;
        for (uint64_t m = 1; m < q; ++m) {
            DivisorApResult c = divisor_ap_residual(2000, q, m);
            acc += c.residual;
            coprime = c.coprime_sum;
        }
        CHECK(std::abs(acc) <= 1e-9 * static_cast<double>(coprime));
    }

    CHECK_THROWS_AS(divisor_ap_residual(100, 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(divisor_ap_residual(100, 5, 10), std::invalid_argument);
}
