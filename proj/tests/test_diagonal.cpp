#include "oracles.hpp"

#include "sqfl/analytic.hpp"
#include "sqfl/diagonal.hpp"
#include "sqfl/error.hpp"
#include "sqfl/sieve.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace sqfl;
using std::numbers::pi;

namespace {

const ZetaConstants& zc()
{
    static const ZetaConstants z = ZetaConstants::compute();
    return z;
}

// Plain partial sum sum_{n <= N} S(n theta)^2, no tail treatment.
double brute_inner(double theta, std::uint64_t N)
{
    long double s = 0;
    for (std::uint64_t n = N; n >= 1; --n) {
        const long double a = n * static_cast<long double>(theta);
        const long double v = std::sin(pi * a) / (pi * a);
        s += v * v;
    }
    return static_cast<double>(s);
}

} // namespace

TEST_CASE("inner_sinc_sum examples")
{
    const double tol = 1e-9;
    CHECK(std::fabs(inner_sinc_sum(1.0, tol).value) <= tol);
    CHECK(std::fabs(inner_sinc_sum(0.5, tol).value - 0.5) <= 2 * tol);
    CHECK(std::fabs(inner_sinc_sum(2.0, tol).value) <= tol);
    // brute force with the plain tail bound 1/(pi^2 theta^2 N)
    const std::uint64_t N = 2000000;
    CHECK(std::fabs(brute_inner(0.5, N) - 0.5) <= 1 / (pi * pi * 0.25 * N));
}

TEST_CASE("Poisson oracle for random theta in (0, 1]")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> th(0.0, 1.0);
    const double tol = 1e-8;
    for (int i = 0; i < 100; ++i) {
        double theta = th(rng);
        if (theta == 0)
            theta = 0.5;
        const auto r = inner_sinc_sum(theta, tol);
        const double exact = (1 / theta - 1) / 2;
        REQUIRE(std::fabs(r.value - exact) <= 2 * tol);
        REQUIRE(std::fabs(r.value - exact) <= r.tail_bound + 1e-13 * (1 + exact));
        REQUIRE(r.tail_bound <= tol);
    }
}

TEST_CASE("inner_sinc_sum above theta = 1 against the closed form")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> th(1.0, 40.0);
    for (int i = 0; i < 100; ++i) {
        const double theta = th(rng);
        const auto r = inner_sinc_sum(theta, 1e-10);
        REQUIRE(std::fabs(r.value - oracle::sinc_sq_sum(theta)) <= r.tail_bound + 1e-14);
    }
    for (double theta : {1.5, 2.5, 3.0, 7.0, 10.25})
        CHECK(std::fabs(inner_sinc_sum(theta, 1e-12).value - oracle::sinc_sq_sum(theta)) <= 1e-12);
}

TEST_CASE("inner_sinc_sum errors")
{
    CHECK_THROWS_AS(inner_sinc_sum(0.0, 1e-6), Error);
    try {
        inner_sinc_sum(1e-6, 1e-12);
        FAIL("expected budget error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::budget);
    }
}

TEST_CASE("diagonal_sum at H = 1, X = 8")
{
    const auto p = DiagonalParams::make(1, 0, 8);
    CHECK(p.b_max == 2);
    const auto sieve = SieveTable::build(2);
    const auto r = diagonal_sum(p, sieve, zc());
    const double theta = std::pow(2.0, -1.5);
    const double expect = 2 * (0 + 0.125 * (1 / theta - 1) / 2);
    CHECK(std::fabs(r.value - expect) < 1e-14);
    const double brute = 2 * (brute_inner(1.0, 1000) + 0.125 * brute_inner(theta, 4000000));
    CHECK(std::fabs(r.value - brute) <= 2 * 0.125 / (pi * pi * theta * theta * 4000000));
    CHECK(r.value >= 0);
    CHECK(r.truncation_bound >= 0);
}

TEST_CASE("DiagonalParams preconditions")
{
    CHECK_THROWS_AS(DiagonalParams::make(10, 0.067, 8, 1e-2), Error);
    CHECK_THROWS_AS(DiagonalParams::make(10, -1, 1e9), Error);
    CHECK_THROWS_AS(DiagonalParams::make(1e6, 0.067, 1), Error);
    const auto p = DiagonalParams::make(1000, 0.067, 1e12);
    CHECK_THROWS_AS(diagonal_sum(p, SieveTable::build(10), zc()), Error);
}

TEST_CASE("certified truncation")
{
    for (double H : {100.0, 10000.0}) {
        const auto p = DiagonalParams::make(H, 0.067, 1e15);
        const auto sieve = SieveTable::build(p.b_max);
        const auto a = diagonal_sum(p, sieve, zc());
        auto q = p;
        q.tail_tol = p.tail_tol / 10;
        const auto b = diagonal_sum(q, sieve, zc());
        CHECK(std::fabs(a.value - b.value) < a.truncation_bound);
        CHECK(b.truncation_bound <= a.truncation_bound);
    }
}

TEST_CASE("extra b beyond the cut add the exact theta <= 1 mass")
{
    // Doubling b_max adds sum_{B < b <= 2B} mu^2(b) (H b^-3/2 - H^2 b^-3): real
    // positive mass, not truncation noise.
    const double H = 1000;
    const std::uint64_t B = 100000;
    const auto sieve = SieveTable::build(2 * B);
    const auto flags = oracle::squarefree_flags(2 * B);
    const auto extra = diagonal_partial(H, B, 2 * B, sieve, 1e-8);
    long double expect = 0;
    for (std::uint64_t b = 2 * B; b > B; --b)
        if (flags[b])
            expect += H / (b * std::sqrt(static_cast<long double>(b))) - H * H / std::pow(static_cast<long double>(b), 3);
    CHECK(std::fabs(extra.value - static_cast<double>(expect)) < 1e-10 * extra.value);
    CHECK(extra.value > 0);
}

TEST_CASE("big-b tail follows the H^(1 + lambda/2) / X^(1/6) shape")
{
    // 2 H^2 sum_{b > b_max} ... is about (12/pi^2) H / sqrt(b_max), which is
    // (12/pi^2) times the shape. The constant 1.25 covers it on this grid.
    for (double H : {10.0, 100.0, 1000.0})
        for (double X : {1e12, 1e15, 1e18}) {
            const auto p = DiagonalParams::make(H, kDefaultLambda, X);
            const std::uint64_t limit = std::max(p.b_max, saturation_cut(H));
            const auto sieve = SieveTable::build(limit);
            const auto cut = diagonal_sum(p, sieve, zc());
            const auto full = diagonal_saturated(H, sieve, zc());
            const double tail = full.value - cut.value;
            CHECK(tail >= 0);
            CHECK(tail <= 1.25 * cut.big_b_shape);
        }
}

TEST_CASE("saturated diagonal")
{
    const auto sieve = SieveTable::build(saturation_cut(1e4));
    // exact at H = 1: every b has theta <= 1, so the sum is H c_lead - H^2 zeta(3)/zeta(6)
    const auto one = diagonal_saturated(1, sieve, zc());
    const double z6 = std::pow(pi, 6) / 945;
    CHECK(std::fabs(one.value - (zc().z32 / zc().z3 - zc().z3 / z6)) < 1e-12);

    // scaling law: value / H^(2/3) constant within 5% across H in {10^2, 10^3, 10^4}
    double lo = 1e300, hi = 0;
    for (double H : {1e2, 1e3, 1e4}) {
        const double r = diagonal_saturated(H, sieve, zc()).value / std::pow(H, 2.0 / 3.0);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK(hi / lo - 1 <= 0.05);
}

TEST_CASE("diagonal at H = 10^3, X = H^9 against the residue constant")
{
    const auto p = DiagonalParams::make(1000, kDefaultLambda, 1e27);
    const auto sieve = SieveTable::build(p.b_max);
    const auto r = diagonal_sum(p, sieve, zc());
    // (4/3) zeta(4/3)/zeta(2) I H^(2/3) fits; the zeta(4) variant does not.
    CHECK(r.rel_err_residue <= 0.05);
    CHECK(r.rel_err_zeta4 > 0.05);
    // c_conj alone misses by the factor 4/3.
    CHECK(std::fabs(r.value / r.prediction - 4.0 / 3.0) < 0.01);
}

TEST_CASE("rel_err <= 0.05 against c_conj at H = 10^3 (known to fail)" * doctest::should_fail())
{
    const auto p = DiagonalParams::make(1000, kDefaultLambda, 1e27);
    const auto sieve = SieveTable::build(p.b_max);
    CHECK(diagonal_sum(p, sieve, zc()).rel_err <= 0.05);
}

TEST_CASE("diagonal versus variance")
{
    const auto sieve = SieveTable::build(5000);
    const auto a = diagonal_vs_variance(100000000, Rational(10, 1), sieve, zc());
    CHECK(a.ratio >= 0.5);
    CHECK(a.ratio <= 2.0);
    const auto big = SieveTable::build(3000);
    const auto b = diagonal_vs_variance(10000000000ull, Rational(30, 1), SieveTable::build(4000), zc());
    CHECK(std::fabs(b.ratio - 1) < std::fabs(a.ratio - 1));
    const auto c = diagonal_vs_variance(100000000, Rational(1, 1), big, zc());
    CHECK(c.diag > 0);
    CHECK(c.var > 0);
}
