#include "sqfl/analytic.hpp"

#include "sqfl/error.hpp"
#include "sqfl/quadrature.hpp"
#include "sqfl/sieve.hpp"
#include "sqfl/summation.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace sqfl {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

// B_{2k} / (2k)! for k = 1..7.
constexpr std::array<long double, 7> kBernoulliOverFactorial = {
    1.0L / 6 / 2,
    -1.0L / 30 / 24,
    1.0L / 42 / 720,
    -1.0L / 30 / 40320,
    5.0L / 66 / 3628800,
    -691.0L / 2730 / 479001600,
    7.0L / 6 / 87178291200,
};

void check_zeta_domain(double s)
{
    if (s == 1.0)
        fail(ErrorKind::pole, "zeta has a pole at s = 1");
    if (!(s >= 0.5))
        fail(ErrorKind::domain, "zeta_real supports s >= 1/2 only");
}

// |B14/14! * s(s+1)...(s+12) * M^(-s-13)|
long double omitted_term(long double s, std::uint64_t M)
{
    long double rising = 1;
    for (int j = 0; j < 13; ++j)
        rising *= s + j;
    return std::fabs(kBernoulliOverFactorial[6] * rising *
                     std::pow(static_cast<long double>(M), -s - 13));
}

} // namespace

std::uint64_t zeta_depth(double s, double tol)
{
    check_zeta_domain(s);
    require(tol > 0 && tol <= 1e-6, ErrorKind::precondition, "zeta tolerance must lie in (0, 1e-6]");
    std::uint64_t M = 2;
    while (omitted_term(s, M) >= tol) {
        ++M;
        if (M > 1000000)
            fail(ErrorKind::budget, "Euler-Maclaurin depth exceeded");
    }
    return M;
}

double zeta_euler_maclaurin(double s, std::uint64_t M)
{
    check_zeta_domain(s);
    require(M >= 2, ErrorKind::precondition, "Euler-Maclaurin cut-off must be at least 2");
    const long double ls = s;
    CompensatedSum sum;
    for (std::uint64_t n = M - 1; n >= 1; --n)
        sum += std::pow(static_cast<long double>(n), -ls);
    const long double m = static_cast<long double>(M);
    sum += std::pow(m, 1 - ls) / (ls - 1);
    sum += std::pow(m, -ls) / 2;
    long double rising = ls; // s(s+1)...(s+2k-2)
    for (int k = 1; k <= 6; ++k) {
        sum += kBernoulliOverFactorial[k - 1] * rising * std::pow(m, -ls - 2 * k + 1);
        rising *= (ls + 2 * k - 1) * (ls + 2 * k);
    }
    return static_cast<double>(sum.value());
}

double zeta_real(double s, double tol)
{
    return zeta_euler_maclaurin(s, zeta_depth(s, tol));
}

long double sin_pi(long double x)
{
    const long double r = x - 2 * std::nearbyint(x / 2); // in [-1, 1]
    if (r == 0 || std::fabs(r) == 1)
        return 0;
    return std::sin(kPi * r);
}

double sinc(double x)
{
    if (x == 0)
        return 1.0;
    return static_cast<double>(sin_pi(x) / (kPi * x));
}

double sinc_sum_identity_check(double theta, std::uint64_t N)
{
    require(theta > 0 && theta <= 1, ErrorKind::precondition, "theta must lie in (0, 1]");
    CompensatedSum sum;
    for (std::uint64_t n = N; n >= 1; --n) {
        const long double arg = static_cast<long double>(n) * theta;
        const long double s = sin_pi(arg) / (kPi * arg);
        sum += 2 * s * s;
    }
    sum += 1; // n = 0
    return static_cast<double>(sum.value());
}

double psi(double u)
{
    return u - std::floor(u) - 0.5;
}

double dist_to_int(double u)
{
    return std::fabs(u - std::nearbyint(u));
}

double psi_fourier_partial(double u, std::uint64_t N)
{
    require(N >= 1, ErrorKind::precondition, "Fourier cut-off must be at least 1");
    const long double frac = static_cast<long double>(u) - std::floor(static_cast<long double>(u));
    CompensatedSum sum;
    for (std::uint64_t n = N; n >= 1; --n) {
        const long double t = static_cast<long double>(n) * frac;
        sum += sin_pi(2 * (t - std::floor(t))) / (kPi * n);
    }
    return static_cast<double>(-sum.value());
}

SincIntegral sinc_integral_detail(double tol, double split)
{
    require(tol > 0 && tol <= 1e-4, ErrorKind::precondition, "sinc_integral tolerance must lie in (0, 1e-4]");
    require(split >= 10, ErrorKind::precondition, "sinc_integral split point must be at least 10");

    // y = t^3: S(y)^2 y^(1/3) dy = 3 t^3 S(t^3)^2 dt, smooth at t = 0.
    auto integrand = [](double t) {
        const double y = t * t * t;
        const double s = sinc(y);
        return 3.0 * t * t * t * s * s;
    };
    const double t_end = std::cbrt(split);
    std::vector<double> breaks{0.0};
    for (int k = 1; k < static_cast<int>(2 * split); ++k)
        breaks.push_back(std::cbrt(0.5 * k));
    breaks.push_back(t_end);
    const auto quad = integrate_adaptive(integrand, breaks, 0.5 * tol);

    // Tail: sin^2 = (1 - cos(2 pi y)) / 2, so the tail is
    // (1/(2 pi^2)) [int y^-p dy - Re int e^{i w y} y^-p dy], p = 5/3, w = 2 pi.
    // Integrating by parts K times:
    // int_Y^inf e^{iwy} y^-p = -e^{iwY} sum_{k<K} (p)_k / (iw)^{k+1} Y^{-p-k}
    //                          + (p)_K / (iw)^K int_Y^inf e^{iwy} y^{-p-K},
    // and the last integral is at most Y^{1-p-K} / (p+K-1) in modulus.
    const long double p = 5.0L / 3.0L;
    const long double w = 2 * kPi;
    const long double Y = split;
    const std::complex<long double> iw(0, w);
    std::complex<long double> series = 0;
    std::complex<long double> iw_pow = iw;
    long double poch = 1;
    constexpr int K = 8;
    for (int k = 0; k < K; ++k) {
        series += poch / iw_pow * std::pow(Y, -p - k);
        poch *= p + k;
        iw_pow *= iw;
    }
    const std::complex<long double> phase = std::polar(1.0L, static_cast<long double>(w * Y));
    const std::complex<long double> oscillatory = -phase * series;
    const long double remainder = poch / std::pow(w, static_cast<long double>(K)) *
                                  std::pow(Y, 1 - p - K) / (p + K - 1);
    const long double flat = std::pow(Y, 1 - p) / (p - 1);
    const long double tail = (flat - oscillatory.real()) / (2 * kPi * kPi);

    SincIntegral r;
    r.quadrature = quad.value;
    r.tail = static_cast<double>(tail);
    r.value = static_cast<double>(quad.value + tail);
    r.error_bound = quad.error + static_cast<double>(remainder / (2 * kPi * kPi));
    r.split = split;
    if (r.error_bound > tol)
        fail(ErrorKind::budget, "sinc_integral did not reach the requested tolerance");
    return r;
}

double sinc_integral(double tol)
{
    return sinc_integral_detail(tol).value;
}

double lanczos_gamma(double x)
{
    static constexpr double g = 7;
    static constexpr std::array<double, 9> c = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5)
        return static_cast<double>(kPi / (sin_pi(x) * lanczos_gamma(1 - x)));
    x -= 1;
    double a = c[0];
    const double t = x + g + 0.5;
    for (int i = 1; i < 9; ++i)
        a += c[i] / (x + i);
    return std::sqrt(2 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double sinc_integral_closed_form()
{
    const double pi = std::numbers::pi;
    return 3.0 / (8.0 * pi * pi) * std::pow(2.0 * pi, 2.0 / 3.0) * lanczos_gamma(1.0 / 3.0);
}

ZetaConstants ZetaConstants::compute(double tol)
{
    ZetaConstants z;
    z.z32 = zeta_real(1.5, tol);
    z.z3 = zeta_real(3.0, tol);
    z.z23 = zeta_real(2.0 / 3.0, tol);
    z.z2 = zeta_real(2.0, tol);
    z.z43 = zeta_real(4.0 / 3.0, tol);
    z.z4 = zeta_real(4.0, tol);
    z.c_lead = z.z32 / z.z3;
    z.sinc_int = sinc_integral(1e-12);
    z.c_conj = z.z43 / z.z2 * z.sinc_int;
    return z;
}

double squarefree_dirichlet_partial(double s, const SieveTable& sieve)
{
    CompensatedSum sum;
    const long double ls = s;
    for (std::uint64_t b = sieve.limit(); b >= 1; --b) {
        if (sieve.is_squarefree(b))
            sum += std::pow(static_cast<long double>(b), -ls);
    }
    return static_cast<double>(sum.value());
}

} // namespace sqfl
