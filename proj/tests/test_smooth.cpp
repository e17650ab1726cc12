#include "oracles.hpp"

#include "sqfl/error.hpp"
#include "sqfl/smooth.hpp"

#include <doctest.h>

#include <cmath>

using namespace sqfl;

namespace {

SmoothWeightSpec spec_of(int k, double X, double L, WeightSign s)
{
    SmoothWeightSpec p;
    p.k = k;
    p.X = X;
    p.L = L;
    p.sign = s;
    return p;
}

} // namespace

TEST_CASE("u_1 is the clipped ramp")
{
    const double L = 0.8;
    for (double x = -1; x <= 2; x += 0.01) {
        const double expect = x <= 0 ? 0 : (x >= L ? 1 : x / L);
        REQUIRE(std::fabs(u_k(x, 1, L) - expect) < 1e-15);
    }
}

TEST_CASE("u_k support and plateau")
{
    for (int k : {1, 2, 3, 5, 10, 20, 40}) {
        const double L = 0.37;
        CHECK(u_k(0, k, L) == 0);
        CHECK(u_k(-1, k, L) == 0);
        for (int g = 0; g <= 2000; ++g) {
            const double x = k * L * (1 + g / 200.0);
            REQUIRE(std::fabs(u_k(x, k, L) - 1) <= 1e-12);
        }
    }
}

TEST_CASE("explicit formula matches convolution oracle for k <= 6")
{
    for (int k = 1; k <= 6; ++k) {
        const double L = 1.7;
        double worst = 0;
        for (int g = -10; g <= 210; ++g) {
            const double t = k * g / 200.0;
            worst = std::max(worst, std::fabs(u_k(t * L, k, L) - oracle::conv_step(t, k)));
            worst = std::max(worst, std::fabs(u_k_explicit(t * L, k, L) - oracle::conv_step(t, k)));
        }
        CHECK(worst <= 1e-8);
    }
}

TEST_CASE("u_k is non-decreasing and bounded on the ramp")
{
    for (int k : {2, 3, 10, 25, 40}) {
        double prev = 0;
        for (int g = 0; g <= 20000; ++g) {
            const double v = u_k(k * g / 20000.0, k, 1.0);
            REQUIRE(v >= prev);
            REQUIRE(v <= 1.0);
            prev = v;
        }
    }
}

TEST_CASE("explicit sum reports instability at high order")
{
    // At k = 40 the alternating sum loses every digit mid-ramp; the range
    // check catches the results that land outside [-1e-6, 1 + 1e-6].
    int threw = 0;
    for (int g = 0; g <= 1000; ++g) {
        try {
            u_k_explicit(40 * g / 1000.0, 40, 1.0);
        } catch (const Error& e) {
            ++threw;
            REQUIRE(e.kind() == ErrorKind::instability);
        }
    }
    CHECK(threw > 0);
    CHECK(std::fabs(u_k(20.0, 40, 1.0) - 0.5) < 1e-12); // symmetric about kL/2
    CHECK_THROWS_AS(u_k(1.0, 41, 1.0), Error);
}

TEST_CASE("sigma examples")
{
    const double X = 1000;
    const auto m = spec_of(5, X, 20, WeightSign::minus);
    const auto p = spec_of(5, X, 20, WeightSign::plus);
    const double kL = 100;
    CHECK(sigma(X + X / 2, m) == 1);
    CHECK(sigma(X - kL - 1, p) == 0);
    CHECK(sigma(X, m) == 0);
    CHECK(sigma(2 * X, m) == 0);
    CHECK(sigma(X + kL, m) == 1);
    CHECK(sigma(2 * X - kL, m) == 1);
    CHECK(sigma(X, p) == 1);
    CHECK(sigma(2 * X, p) == 1);
    CHECK(sigma(2 * X + kL, p) == 0);

    const double im = sigma_integral(m), ip = sigma_integral(p);
    CHECK(std::fabs(im - X) <= kL);
    CHECK(std::fabs(ip - X) <= kL);
    CHECK(std::fabs(im - (X - kL)) < 1e-9 * X);
    CHECK(std::fabs(ip - (X + kL)) < 1e-9 * X);
}

TEST_CASE("weight parameter validation")
{
    CHECK_THROWS_AS(spec_of(1, 100, 1, WeightSign::minus).validate(), Error);
    CHECK_THROWS_AS(spec_of(5, 100, 10, WeightSign::minus).validate(), Error); // L = X/(2k)
    CHECK_THROWS_AS(spec_of(5, 100, 0, WeightSign::minus).validate(), Error);
    CHECK_NOTHROW(spec_of(5, 100, 9.99, WeightSign::minus).validate());
}

TEST_CASE("sandwich around the indicator of [X, 2X]")
{
    for (int k : {2, 5, 10}) {
        const double X = 5000, L = X / (3.0 * k);
        const auto m = spec_of(k, X, L, WeightSign::minus);
        const auto p = spec_of(k, X, L, WeightSign::plus);
        for (int g = 0; g <= 100000; ++g) {
            const double x = X - k * L - 10 + (X + 2 * k * L + 20) * g / 100000.0;
            const double ind = (x >= X && x <= 2 * X) ? 1.0 : 0.0;
            const double lo = sigma(x, m), hi = sigma(x, p);
            REQUIRE(lo >= 0);
            REQUIRE(hi <= 1);
            REQUIRE(lo <= ind);
            REQUIRE(ind <= hi);
        }
    }
}

TEST_CASE("derivative bounds")
{
    const auto k3 = spec_of(3, 1000, 100, WeightSign::minus);
    CHECK(derivative_bound_check(k3, 1, 10000) <= 2);
    CHECK(derivative_bound_check(k3, 0, 10000) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(derivative_bound_constant(3, 1) == doctest::Approx(0.75).epsilon(1e-12));

    const auto k5 = spec_of(5, 1000, 50, WeightSign::plus);
    const double d = derivative_bound_check(k5, 4, 10000);
    CHECK(std::isfinite(d));
    CHECK(d <= derivative_bound_constant(5, 4) * (1 + 1e-6));
    CHECK(derivative_bound_constant(5, 4) == doctest::Approx(3.0).epsilon(1e-9));

    for (int k : {2, 4, 6, 10, 16}) {
        for (auto s : {WeightSign::minus, WeightSign::plus}) {
            const auto spec = spec_of(k, 1e6, 1e6 / (4.0 * k), s);
            for (int i = 1; i <= k - 1; ++i) {
                const double fd = derivative_bound_check(spec, i, 10000);
                const double c = derivative_bound_constant(k, i);
                REQUIRE(fd <= c * (1 + 1e-6) + 1e-9);
                // the quotient stays near the bound; high orders use a wider
                // step, which averages the derivative over more of the ramp
                if (k <= 10)
                    REQUIRE(fd >= 0.5 * c);
            }
        }
    }
    CHECK_THROWS_AS(derivative_bound_check(k3, 3, 100), Error);
}

TEST_CASE("oscillatory integral decay")
{
    const double X = 1e6;
    for (auto s : {WeightSign::minus, WeightSign::plus}) {
        const auto spec = spec_of(10, X, X / 40, s);
        const double at0 = oscillatory_decay_check(spec, 0);
        CHECK(std::fabs(at0 - sigma_integral(spec)) < 1e-6 * X);
        CHECK(std::fabs(at0 - X) <= 10 * X / 40 * (1 + 1e-9));
        CHECK(oscillatory_decay_check(spec, 100 / std::sqrt(X)) <= 1e-3 * X);

        // Non-increasing along a log grid until the quadrature noise floor 1e-12 X.
        double prev = at0;
        for (double m = 0.1; m <= 1000; m *= std::sqrt(10.0)) {
            const double v = oscillatory_decay_check(spec, m / std::sqrt(X));
            if (prev > 1e-12 * X)
                REQUIRE(v <= prev * (1 + 1e-9));
            else
                REQUIRE(v <= 1e-12 * X);
            prev = v;
        }
    }
}
