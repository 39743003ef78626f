#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numeric>

#include "lmoment/arith.hpp"
#include "golden_values.hpp"

using namespace lmoment;

TEST_CASE("modular arithmetic near the 64-bit edge", "[arith]") {
    CHECK(mulmod(3, 4, 7) == 5);
    uint64_t big = 0xFFFFFFFFFFFFFFC5ull;  // largest 64-bit prime
    CHECK(mulmod(big - 1, big - 1, big) == 1);
    CHECK(powmod(2, big - 1, big) == 1);  // Fermat
    CHECK(powmod(0, 0, 5) == 1);
    CHECK(powmod(7, 0, 13) == 1);
    CHECK_THROWS_AS(powmod(2, 3, 0), std::invalid_argument);

    for (uint64_t m : {5ull, 97ull, 101ull, 65537ull})
        for (uint64_t a = 1; a < std::min<uint64_t>(m, 50); ++a)
            CHECK(mulmod(a, invmod(a, m), m) == 1);
    CHECK_THROWS_AS(invmod(6, 9), std::invalid_argument);
    CHECK_THROWS_AS(invmod(0, 7), std::invalid_argument);
}

TEST_CASE("factorization and the multiplicative toolbox", "[arith]") {
    Factorization f = factorize(360);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0] == std::pair<uint64_t, int>{2, 3});
    CHECK(f.factors[1] == std::pair<uint64_t, int>{3, 2});
    CHECK(f.factors[2] == std::pair<uint64_t, int>{5, 1});
    CHECK(factorize(1).factors.empty());
    CHECK_THROWS_AS(factorize(0), std::invalid_argument);

    CHECK(euler_phi(uint64_t{1}) == 1);
    CHECK(euler_phi(uint64_t{12}) == 4);
    CHECK(euler_phi(uint64_t{97}) == 96);
    CHECK(euler_phi(uint64_t{360}) == 96);

    CHECK(mobius(uint64_t{1}) == 1);
    CHECK(mobius(uint64_t{6}) == 1);
    CHECK(mobius(uint64_t{30}) == -1);
    CHECK(mobius(uint64_t{12}) == 0);

    auto ds = divisors(60);
    REQUIRE(ds.size() == 12);
    CHECK(ds.front() == 1);
    CHECK(ds.back() == 60);
    CHECK(std::is_sorted(ds.begin(), ds.end()));

    // phi as a divisor sum: sum_{d|n} phi(d) = n
    for (uint64_t n : {1ull, 2ull, 36ull, 97ull, 360ull}) {
        uint64_t acc = 0;
        for (uint64_t d : divisors(n)) acc += euler_phi(d);
        CHECK(acc == n);
    }

    CHECK(is_prime(2));
    CHECK(is_prime(101));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1001));
}

TEST_CASE("divisor sigma agrees with integer specializations", "[arith]") {
    // lambda = 0 counts divisors, lambda = 1 sums them
    CHECK(divisor_sigma(cx(0.0), 12).real() == Catch::Approx(6.0).margin(1e-12));
    CHECK(divisor_sigma(cx(1.0), 12).real() == Catch::Approx(28.0).margin(1e-11));
    CHECK(divisor_sigma(cx(0.0), 1).real() == Catch::Approx(1.0).margin(1e-15));
    // multiplicative on coprime arguments
    cx la(0.3, 0.2);
    cx lhs = divisor_sigma(la, 8 * 9);
    cx rhs = divisor_sigma(la, 8) * divisor_sigma(la, 9);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
}

TEST_CASE("ramanujan sums match the root-of-unity definition", "[arith]") {
    for (uint64_t l = 1; l <= 36; ++l) {
        for (int64_t n = -5; n <= 40; ++n) {
            double direct = 0.0;
            for (uint64_t a = 1; a <= l; ++a) {
                if (std::gcd(a, l) != 1) continue;
                direct += std::cos(2.0 * PI * static_cast<double>(a) *
                                   static_cast<double>(n) / static_cast<double>(l));
            }
            double got = static_cast<double>(ramanujan_sum(l, n));
            CHECK(std::abs(got - direct) <= 1e-8);
        }
    }
    // closed specializations
    CHECK(ramanujan_sum(1, 7) == 1);
    CHECK(ramanujan_sum(12, 0) == static_cast<int64_t>(euler_phi(uint64_t{12})));
    for (uint64_t p : {2ull, 3ull, 5ull, 13ull}) {
        CHECK(ramanujan_sum(p, static_cast<int64_t>(p)) == static_cast<int64_t>(p) - 1);
        CHECK(ramanujan_sum(p, 1) == -1);
    }
    CHECK_THROWS_AS(ramanujan_sum(0, 3), std::invalid_argument);
}

TEST_CASE("kloosterman sums: frozen value, symmetry, Weil bound", "[arith]") {
    InverseTable tab(101);
    CHECK(kloosterman(50, 50, tab) ==
          Catch::Approx(golden::KLOOSTERMAN_50_50_101).margin(1e-9));

    // S(m,n;c) = S(n,m;c); S(1,0;p) = mu-like -1
    for (int64_t m : {1, 2, 7})
        for (int64_t n : {3, 50}) {
            CHECK(kloosterman(m, n, tab) == Catch::Approx(kloosterman(n, m, tab)).margin(1e-9));
        }
    CHECK(kloosterman(1, 0, tab) == Catch::Approx(-1.0).margin(1e-9));

    // Weil: |S(m,n;p)| <= 2 sqrt(p) for p not dividing mn
    for (uint64_t p : {11ull, 13ull, 101ull}) {
        InverseTable t2(p);
        for (int64_t m = 1; m <= 5; ++m)
            for (int64_t n = 1; n <= 5; ++n)
                CHECK(std::abs(kloosterman(m, n, t2)) <= 2.0 * std::sqrt(static_cast<double>(p)) + 1e-9);
    }

    // composite modulus against the raw definition
    uint64_t c = 12;
    for (int64_t m = 0; m < 4; ++m)
        for (int64_t n = 0; n < 4; ++n) {
            cx direct = 0.0;
            for (uint64_t x = 1; x < c; ++x) {
                if (std::gcd(x, c) != 1) continue;
                uint64_t xb = invmod(x, c);
                direct += e2pi(static_cast<double>((m * static_cast<int64_t>(x) +
                                                    n * static_cast<int64_t>(xb)) % static_cast<int64_t>(c)) /
                               static_cast<double>(c));
            }
            CHECK(kloosterman(m, n, c) == Catch::Approx(direct.real()).margin(1e-9));
            CHECK(std::abs(direct.imag()) <= 1e-9);
        }

    CHECK(kloosterman(3, 4, uint64_t{1}) == 1.0);
    CHECK_THROWS_AS(InverseTable(0), std::invalid_argument);
}

TEST_CASE("inverse table marks non-units with zero", "[arith]") {
    InverseTable tab(12);
    CHECK(tab.inv[5] == 5);  // 5*5 = 25 = 1 mod 12
    CHECK(tab.inv[4] == 0);
    CHECK(tab.inv[6] == 0);
    for (uint64_t x = 1; x < 12; ++x)
        if (std::gcd(x, uint64_t{12}) == 1) CHECK(mulmod(x, tab.inv[x], 12) == 1);
}

TEST_CASE("primitive roots generate the full unit group", "[arith]") {
    CHECK(primitive_root(5) == 2);
    CHECK(primitive_root(7) == 3);
    CHECK(primitive_root(13) == 2);
    CHECK(primitive_root(101) == 2);
    CHECK_THROWS_AS(primitive_root(12), std::invalid_argument);

    for (uint64_t q = 5; q <= 199; ++q) {
        if (!is_prime(q)) continue;
        uint64_t g = primitive_root(q);
        // order of g is exactly q-1: no proper divisor d of q-1 has g^d = 1
        for (uint64_t d : divisors(q - 1)) {
            if (d == q - 1) continue;
            CHECK(powmod(g, d, q) != 1);
        }
        CHECK(powmod(g, q - 1, q) == 1);
    }
}

TEST_CASE("sieves agree with per-n evaluation", "[arith]") {
    uint64_t limit = 300;
    auto dc = divisor_count_sieve(limit);
    cx la(0.3, -0.2);
    auto ss = divisor_sigma_sieve(la, limit);
    for (uint64_t n = 1; n <= limit; ++n) {
        CHECK(dc[n] == divisors(n).size());
        CHECK(std::abs(ss[n] - divisor_sigma(la, n)) <= 1e-12 * std::abs(ss[n]) + 1e-14);
    }
}

TEST_CASE("unit-circle exponential basics", "[arith]") {
    CHECK(std::abs(e2pi(0.25) - cx(0.0, 1.0)) <= 1e-15);
    CHECK(std::abs(e2pi(0.5) - cx(-1.0, 0.0)) <= 1e-15);
    cx acc = 0.0;
    for (int k = 0; k < 7; ++k) acc += e2pi(k / 7.0);
    CHECK(std::abs(acc) <= 1e-14);
}
