// Acceptance gate.  Runs the thirteen release criteria end to end and prints
// exactly one PASS/FAIL line per criterion, with the measured quantities on
// the same line.  Exit status 0 iff every criterion passes.  All tolerances
// are pinned here in code.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "lmoment/characters.hpp"
#include "lmoment/divisor_afe.hpp"
#include "lmoment/estermann.hpp"
#include "lmoment/expsums.hpp"
#include "lmoment/main_terms.hpp"
#include "lmoment/moments.hpp"
#include "lmoment/rng.hpp"

using namespace lmoment;
namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.3g", v);
    return b;
}

int g_failures = 0;

void report(int k, const char* name, bool pass, const std::string& detail) {
    std::printf("AC%d %s: %s (%s)\n", k, name, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double nonpos_int_dist(cx z) {
    double k = std::min(std::round(z.real()), 0.0);
    return std::abs(z - cx(k, 0.0));
}

std::pair<cx, cx> sample_threeterm_point(Rng& rng) {
    for (;;) {
        cx a = rng.complex_in_box(-0.8, 0.9, -0.8, 0.8);
        cx b = rng.complex_in_box(-0.8, 0.9, -0.8, 0.8);
        const cx combos[] = {a,       b,       a + b,          1.0 - a - b,
                             1.0 - a, 1.0 - b, a / 2.0,        b / 2.0,
                             (a + b) / 2.0,    (1.0 - a - b) / 2.0,
                             (1.0 + a) / 2.0,  (1.0 + b) / 2.0};
        bool ok = true;
        for (cx z : combos)
            if (nonpos_int_dist(z) < 0.05) {
                ok = false;
                break;
            }
        if (ok) return {a, b};
    }
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

int main() {
    // 1: Gauss-sum modulus sqrt(q) for every nonprincipal character, q in [5, 199]
    {
        double worst = 0.0;
        for (uint64_t q = 5; q <= 199; ++q) {
            if (!is_prime(q)) continue;
            CharacterTable t = CharacterTable::build(q);
            std::vector<cx> tau = gauss_sum_all(t);
            double rq = std::sqrt(static_cast<double>(q));
            for (uint64_t j = 1; j < t.order(); ++j)
                worst = std::max(worst, std::abs(std::abs(tau[j]) - rq));
        }
        report(1, "gauss-sum-modulus", worst <= 1e-9, "max | |tau|-sqrt(q) | = " + fmt(worst));
    }

    // 2: character orthogonality equals the closed count exactly after rounding,
    //    all residue pairs, both parities, every prime q <= 97
    {
        bool ok = true;
        uint64_t pairs = 0;
        for (uint64_t q = 5; q <= 97; ++q) {
            if (!is_prime(q)) continue;
            CharacterTable t = CharacterTable::build(q);
            for (int64_t a = 1; a < static_cast<int64_t>(q) && ok; ++a)
                for (int64_t b = 1; b < static_cast<int64_t>(q) && ok; ++b) {
                    OrthogonalityResult e = orthogonality_even(t, a, b);
                    OrthogonalityResult o = orthogonality_odd(t, a, b);
                    ++pairs;
                    if (std::llround(2.0 * e.brute.real()) != std::llround(2.0 * e.closed) ||
                        std::abs(e.brute.imag()) > 1e-9 ||
                        std::llround(2.0 * o.brute.real()) != std::llround(2.0 * o.closed) ||
                        std::abs(o.brute.imag()) > 1e-9)
                        ok = false;
                }
            if (!ok) break;
        }
        report(2, "orthogonality-exact", ok, std::to_string(pairs) + " residue pairs checked");
    }

    // 3: completed functional equation at s = 0.4 + 1.2i, all nonprincipal
    //    characters, q in {13, 29, 61}
    {
        double worst = 0.0;
        const cx s(0.4, 1.2);
        for (uint64_t q : {13ull, 29ull, 61ull}) {
            CharacterTable t = CharacterTable::build(q);
            std::vector<cx> Ls = l_value_grid(t, s);
            std::vector<cx> L1 = l_value_grid(t, 1.0 - s);
            for (int64_t j = 1; j < static_cast<int64_t>(t.order()); ++j) {
                cx lhs = completed_lambda(s, t.parity(j), q, Ls[j]);
                cx rhs = epsilon_factor(t, j) *
                         completed_lambda(1.0 - s, t.parity(j), q, L1[t.conj_index(j)]);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        }
        report(3, "completed-functional-equation", worst <= 1e-9,
               "max abs residual " + fmt(worst));
    }

    // 4: smoothed divisor-sum route reproduces the brute-force moment to 1e-6
    //    relative, three random admissible shift tuples each at q in {13, 29}
    {
        double worst = 0.0;
        GWeight bare = bare_weight();
        for (uint64_t q : {13ull, 29ull}) {
            CharacterTable t = CharacterTable::build(q);
            GridCache grid(t);
            Rng rng(11);
            for (int k = 0; k < 3; ++k) {
                ShiftTuple sh = random_admissible_shifts(rng.engine());
                cx brute = moment_even(grid, sh);
                cx series = moment_via_divisor_sum(q, sh, bare, 240.0);
                worst = std::max(worst, std::abs(series - brute) / std::abs(brute));
            }
        }
        report(4, "averaged-afe-route", worst <= 1e-6, "max rel dev " + fmt(worst));
    }

    // 5: brute-force moment against the closed main-term value at zero shifts:
    //    relative deviation strictly decreasing over q = 101..1009 and <= 0.05
    //    at q = 1009
    {
        const uint64_t qs[] = {101, 211, 401, 601, 1009};
        double dev[5];
        std::string detail = "deviations";
        for (int i = 0; i < 5; ++i) {
            CharacterTable t = CharacterTable::build(qs[i]);
            GridCache grid(t);
            cx m = moment_even(grid, ShiftTuple{});
            double c = conjecture_at_zero(qs[i], 0, 1.0).value;
            dev[i] = std::abs(m - c) / std::abs(c);
            detail += " " + fmt(dev[i]);
        }
        bool decreasing = dev[0] > dev[1] && dev[1] > dev[2] && dev[2] > dev[3] &&
                          dev[3] > dev[4];
        bool small_end = dev[4] <= 0.05;
        detail += std::string("; strictly decreasing: ") + (decreasing ? "yes" : "no");
        detail += std::string("; q=1009 deviation <= 0.05: ") + (small_end ? "yes" : "no");
        report(5, "moment-main-term-trend", decreasing && small_end, detail);
    }

    // 6: degree-4 fit in log q recovers the leading coefficient 1/(2 pi^2)
    //    within 1% over 12 primes in [101, 2003]
    {
        const std::vector<uint64_t> qs = {101,  151,  211,  307,  401,  503,
                                          601,  751,  1009, 1259, 1511, 2003};
        std::vector<double> vals(qs.size());
        for (size_t i = 0; i < qs.size(); ++i)
            vals[i] = conjecture_at_zero(qs[i], 0, 1.0, /*use_zeta_q=*/false).value;
        C4Fit fit = fit_c4(qs, vals);
        double rel = std::abs(fit.c4 - C4_REFERENCE) / C4_REFERENCE;
        report(6, "leading-coefficient-fit", rel <= 0.01,
               "c4 = " + fmt(fit.c4) + ", rel err " + fmt(rel));
    }

    // 7: the three gamma-function identities at 200 seeded points each,
    //    relative error <= 1e-10, zero failures
    {
        Rng rng(911);
        double w1 = 0.0, w2 = 0.0;
        for (int i = 0; i < 200; ++i) {
            auto [a, b] = sample_threeterm_point(rng);
            w1 = std::max(w1, gamma_threeterm(a, b).rel_residual());
            w2 = std::max(w2, gamma_threeterm_odd(a, b).rel_residual());
        }
        Rng rq(912);
        double w3 = 0.0;
        for (int i = 0; i < 200; ++i) {
            double a = rq.uniform(0.1, 0.9);
            double r0 = rq.uniform(0.1, 2.0);
            w3 = std::max(w3, besselgamma_pair(a, r0).rel_residual());
        }
        double w = std::max(w1, std::max(w2, w3));
        report(7, "gamma-identities", w <= 1e-10,
               "max rel residual " + fmt(w) + " over 3 x 200 points");
    }

    // 8: main-term assembly |I + I_dual - U| <= 1e-8 at q=101 for three shift
    //    tuples; pointwise integrand reflection and the product-form identity
    //    <= 1e-10 at 100 points each
    {
        const uint64_t q = 101;
        Rng rng(101);
        double worst_asm = 0.0;
        for (int k = 0; k < 3; ++k) {
            ShiftTuple sh = random_admissible_shifts(rng.engine());
            AssemblyResult ar = verify_half_assembly(sh, q, assembly_weight(sh));
            worst_asm = std::max(worst_asm, std::abs(ar.I_direct + ar.I_dual - ar.U));
        }
        Rng rc(102);
        double worst_claim = 0.0;
        for (int i = 0; i < 100; ++i) {
            ShiftTuple sh = random_admissible_shifts(rc.engine());
            double tim = rc.uniform(0.25, 3.0) * (i % 2 == 0 ? 1.0 : -1.0);
            cx s(rc.uniform(-0.2, 0.7), tim);
            worst_claim = std::max(worst_claim, claim_identity(s, sh, q).rel_residual());
        }
        Rng rb(103);
        double worst_b = 0.0;
        for (int i = 0; i < 100; ++i) {
            cx v = rb.complex_in_box(-0.15, 0.15, -0.3, 0.3);
            cx al = rb.complex_in_box(-0.1, 0.1, -0.04, 0.04);
            cx ga = rb.complex_in_box(-0.1, 0.1, -0.04, 0.04);
            worst_b = std::max(worst_b, butter_identity(v, al, ga).rel_residual());
        }
        bool ok = worst_asm <= 1e-8 && worst_claim <= 1e-10 && worst_b <= 1e-10;
        report(8, "main-term-assembly", ok,
               "assembly " + fmt(worst_asm) + ", pointwise " + fmt(worst_claim) +
                   ", product form " + fmt(worst_b));
    }

    // 9: periodic divisor series: analytic continuation vs direct series at 30
    //    seeded points, functional equation at 10 seeded points, and both pole
    //    residues by contour circles, all <= 1e-8
    {
        Rng rng(930);
        double worst_series = 0.0;
        for (int i = 0; i < 30; ++i) {
            uint64_t l = rng.uniform_int(2, 12);
            uint64_t h = rng.uniform_int(1, l - 1);
            while (std::gcd(h, l) != 1) h = rng.uniform_int(1, l - 1);
            cx la = rng.complex_in_box(-0.3, 0.3, -0.2, 0.2);
            while (std::abs(la) < 0.02) la = rng.complex_in_box(-0.3, 0.3, -0.2, 0.2);
            EstermannPoint p{cx(rng.uniform(3.3, 3.8), rng.uniform(-0.5, 0.5)), la,
                             static_cast<int64_t>(h), l};
            cx series = estermann_series(p, 3000000);
            worst_series =
                std::max(worst_series, std::abs(estermann_D(p) - series) / std::abs(series));
        }
        Rng rf(931);
        double worst_fe = 0.0;
        for (int i = 0; i < 10; ++i) {
            uint64_t l = rf.uniform_int(2, 13);
            uint64_t h = rf.uniform_int(1, l - 1);
            while (std::gcd(h, l) != 1) h = rf.uniform_int(1, l - 1);
            cx s, la;
            do {  // keep clear of the two poles at 1 and 1 + lambda
                s = rf.complex_in_box(0.2, 0.8, -1.0, 1.0);
                la = rf.complex_in_box(-0.3, 0.3, -0.2, 0.2);
            } while (std::abs(la) < 0.02 || std::abs(s - cx(1.0, 0.0)) < 0.15 ||
                     std::abs(s - (1.0 + la)) < 0.15);
            EstermannPoint p{s, la, static_cast<int64_t>(h), l};
            worst_fe = std::max(worst_fe, verify_estermann_fe(p).abs_residual());
        }
        double worst_res = 0.0;
        const std::pair<int64_t, uint64_t> hl[] = {{2, 7}, {1, 5}, {3, 8}};
        for (auto [h, l] : hl) {
            EstermannPoint p{cx(0.0, 0.0), cx(0.3, 0.2), h, l};
            worst_res = std::max(
                worst_res, std::abs(estermann_residue_numeric(p, cx(1.0, 0.0)) -
                                    estermann_residue_at_1(p)));
            worst_res = std::max(
                worst_res, std::abs(estermann_residue_numeric(p, cx(1.0, 0.0) + p.lambda) -
                                    estermann_residue_at_1_plus_lambda(p)));
        }
        bool ok = worst_series <= 1e-8 && worst_fe <= 1e-8 && worst_res <= 1e-8;
        report(9, "periodic-divisor-series", ok,
               "continuation " + fmt(worst_series) + ", reflection " + fmt(worst_fe) +
                   ", residues " + fmt(worst_res));
    }

    // 10: paired-residue exponential sum: closed form equals brute force on the
    //     full triple enumeration for q in {5, 7, 11, 13}, and the hard bound
    //     holds everywhere
    {
        double worst_eq = 0.0, worst_ratio = 0.0;
        for (uint64_t q : {5ull, 7ull, 11ull, 13ull})
            for (int64_t x = 0; x < static_cast<int64_t>(q); ++x)
                for (int64_t y = 0; y < static_cast<int64_t>(q); ++y)
                    for (int64_t z = 0; z < static_cast<int64_t>(q); ++z) {
                        cx closed = t_sum_closed(x, y, z, q);
                        worst_eq = std::max(worst_eq,
                                            std::abs(t_sum_brute(x, y, z, q) - closed));
                        worst_ratio = std::max(
                            worst_ratio, std::abs(closed) / t_sum_hard_bound(x, y, z, q));
                    }
        bool ok = worst_eq <= 1e-6 && worst_ratio <= 1.0 + 1e-9;
        report(10, "paired-residue-sum", ok,
               "max |brute-closed| " + fmt(worst_eq) + ", max |closed|/bound " +
                   fmt(worst_ratio));
    }

    // 11: truncated divisor-function expansion over scaled Ramanujan sums:
    //     residual <= 1e-6 at 20 seeded (n <= 500, lambda) pairs
    {
        Rng rng(1100);
        GWeight bare = bare_weight();
        double worst = 0.0, worst_tail = 0.0;
        for (int i = 0; i < 20; ++i) {
            uint64_t n = rng.uniform_int(1, 500);
            cx la = rng.complex_in_box(-0.3, 0.3, -0.3, 0.3);
            auto l_max = static_cast<uint64_t>(
                std::ceil(std::exp(10.2) * std::sqrt(static_cast<double>(n))));
            DivisorAfeResult r = verify_divisor_afe(n, la, bare, l_max);
            worst = std::max(worst, r.residual);
            worst_tail = std::max(worst_tail, r.tail_bound);
        }
        report(11, "divisor-afe", worst <= 1e-6,
               "max residual " + fmt(worst) + ", max certified tail " + fmt(worst_tail));
    }

    // 12: the four fixed-modulus Dirichlet-series identities, 10 seeded
    //     parameter sets each, residual and certified tail both <= 1e-6
    {
        double worst = 0.0, worst_tail = 0.0;
        {
            Rng rng(1210);
            for (int i = 0; i < 10; ++i) {
                cx s = rng.complex_in_box(2.5, 2.9, -0.5, 0.5);
                cx la = rng.complex_in_box(0.05, 0.3, -0.2, 0.2);
                uint64_t d = rng.uniform_int(0, 1) == 0 ? 11 : 13;
                IdentityCheck r = divisor_multiple_identity(s, la, d, 1000000);
                worst = std::max(worst, r.residual());
                worst_tail = std::max(worst_tail, r.tail_bound);
            }
        }
        {
            Rng rng(1220);
            for (int i = 0; i < 10; ++i) {
                cx al = rng.complex_in_box(-2.0, -1.4, -0.5, 0.5);
                uint64_t n = rng.uniform_int(1, 5000);
                IdentityCheck r = ramanujan_expansion_identity(al, n, 1000000);
                worst = std::max(worst, r.residual());
                worst_tail = std::max(worst_tail, r.tail_bound);
            }
        }
        {
            Rng rng(1230);
            for (int i = 0; i < 10; ++i) {
                cx s = rng.complex_in_box(2.2, 2.5, -0.5, 0.5);
                cx la = rng.complex_in_box(0.4, 0.65, -0.2, 0.2);
                uint64_t d = rng.uniform_int(0, 1) == 0 ? 11 : 13;
                IdentityCheck r = progression_twist_identity(s, la, d, 4096);
                worst = std::max(worst, r.residual());
                worst_tail = std::max(worst_tail, r.tail_bound);
            }
        }
        {
            Rng rng(1240);
            for (int i = 0; i < 10; ++i) {
                cx v = rng.complex_in_box(2.8, 3.2, -0.5, 0.5);
                cx la = rng.complex_in_box(-0.05, 0.05, -0.05, 0.05);
                cx nu = rng.complex_in_box(-0.05, 0.05, -0.05, 0.05);
                SeriesVsClosed r = ramanujan_sigma_identity(v, la, nu, 1000000);
                worst = std::max(worst, std::abs(r.series - r.closed));
                worst_tail = std::max(worst_tail, r.tail_bound);
            }
        }
        bool ok = worst <= 1e-6 && worst_tail <= 1e-6;
        report(12, "dirichlet-series-identities", ok,
               "max residual " + fmt(worst) + ", max certified tail " + fmt(worst_tail));
    }

    // 13: thread count never changes a byte of driver CSV output
    {
        fs::path dir =
            fs::temp_directory_path() / ("lmoment_acceptance_" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir);
        fs::path f1 = dir / "threads1.csv";
        fs::path f3 = dir / "threads3.csv";
        const std::string cli = LMOMENT_CLI_PATH;
        auto run = [&](const char* env, const fs::path& out) {
            std::string cmd = std::string(env) + " \"" + cli + "\" moment --q 101 --out \"" +
                              out.string() + "\" > /dev/null 2>&1";
            int status = std::system(cmd.c_str());
            return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        };
        int s1 = run("LMOMENT_THREADS=1", f1);
        int s3 = run("LMOMENT_THREADS=3", f3);
        std::string a = slurp(f1), b = slurp(f3);
        bool ok = s1 == 0 && s3 == 0 && !a.empty() && a == b;
        report(13, "thread-count-determinism", ok,
               std::string("exit codes ") + std::to_string(s1) + "/" + std::to_string(s3) +
                   ", csv bytes " + (a == b && !a.empty() ? "identical" : "differ"));
    }

    std::printf("%d of 13 criteria passed\n", 13 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
