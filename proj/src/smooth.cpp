#include "sqfl/smooth.hpp"

#include "sqfl/error.hpp"
#include "sqfl/quadrature.hpp"
#include "sqfl/summation.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace sqfl {

namespace {

void check_order(int k)
{
    require(k >= 1 && k <= kMaxSmoothingOrder, ErrorKind::precondition, "smoothing order must lie in [1, 40]");
}

long double binomial(int n, int r)
{
    long double c = 1;
    for (int j = 1; j <= r; ++j)
        c = c * (n - r + j) / j;
    return c;
}

// Irwin-Hall CDF of order k at t (in units of L). Every step is a convex
// combination, so no cancellation occurs.
long double irwin_hall_cdf(long double t, int k)
{
    std::vector<long double> f(k + 2);
    for (int i = 0; i <= k + 1; ++i)
        f[i] = (t - i >= 0) ? 1.0L : 0.0L;
    for (int j = 1; j <= k; ++j) {
        for (int i = 0; i <= k - j; ++i) {
            const long double s = t - i;
            if (s <= 0)
                f[i] = 0;
            else if (s >= j)
                f[i] = 1;
            else
                f[i] = (s * f[i] + (j - s) * f[i + 1]) / j;
        }
    }
    return f[0];
}

// Explicit sum at t = x / L together with the sum of |terms|.
long double explicit_sum(long double t, int k, long double& magnitude)
{
    CompensatedSum sum;
    magnitude = 0;
    long double kfact = 1;
    for (int j = 2; j <= k; ++j)
        kfact *= j;
    for (int i = 0; i <= k && t - i > 0; ++i) {
        const long double term = binomial(k, i) * std::pow(t - i, static_cast<long double>(k)) / kfact;
        magnitude += term;
        sum += (i % 2 == 0) ? term : -term;
    }
    return sum.value();
}

void check_range(long double v)
{
    if (v < -1e-6L || v > 1 + 1e-6L)
        fail(ErrorKind::instability, "u_k left [0, 1]: catastrophic cancellation");
}

} // namespace

void SmoothWeightSpec::validate() const
{
    require(k >= 2 && k <= kMaxSmoothingOrder, ErrorKind::precondition, "smooth weight order must lie in [2, 40]");
    require(X > 0, ErrorKind::precondition, "smooth weight needs X > 0");
    require(L > 0 && L < X / (2.0 * k), ErrorKind::precondition, "smooth weight needs 0 < L < X / (2k)");
}

double SmoothWeightSpec::support_lo() const
{
    return sign == WeightSign::minus ? X : X - k * L;
}

double SmoothWeightSpec::support_hi() const
{
    return sign == WeightSign::minus ? 2 * X : 2 * X + k * L;
}

double u_k_explicit(double x, int k, double L)
{
    check_order(k);
    require(L > 0, ErrorKind::precondition, "u_k needs L > 0");
    long double mag = 0;
    const long double v = explicit_sum(static_cast<long double>(x) / L, k, mag);
    check_range(v);
    return static_cast<double>(v);
}

double u_k(double x, int k, double L)
{
    check_order(k);
    require(L > 0, ErrorKind::precondition, "u_k needs L > 0");
    if (x <= 0)
        return 0.0;
    if (x >= k * L)
        return 1.0;

    // u_k(x) = 1 - u_k(kL - x); evaluate on the half with fewer active terms.
    long double t = static_cast<long double>(x) / L;
    const bool reflect = t > 0.5L * k;
    if (reflect)
        t = k - t;

    long double mag = 0;
    long double v = explicit_sum(t, k, mag);
    if (mag * LDBL_EPSILON * (k + 1) > 1e-13L)
        v = irwin_hall_cdf(t, k);
    if (reflect)
        v = 1 - v;
    check_range(v);
    return static_cast<double>(v);
}

double sigma(double x, const SmoothWeightSpec& spec)
{
    spec.validate();
    const double kl = spec.k * spec.L;
    if (spec.sign == WeightSign::minus)
        return u_k(x - spec.X, spec.k, spec.L) * u_k(2 * spec.X - x, spec.k, spec.L);
    return u_k(x - spec.X + kl, spec.k, spec.L) * u_k(2 * spec.X + kl - x, spec.k, spec.L);
}

namespace {

// Knots of sigma: ramp breakpoints at multiples of L plus the support ends.
std::vector<double> sigma_knots(const SmoothWeightSpec& spec)
{
    const double lo = spec.support_lo();
    const double hi = spec.support_hi();
    const double kl = spec.k * spec.L;
    std::vector<double> knots;
    for (int j = 0; j <= spec.k; ++j) {
        knots.push_back(lo + j * spec.L);
        knots.push_back(hi - kl + j * spec.L);
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    return knots;
}

} // namespace

double sigma_integral(const SmoothWeightSpec& spec)
{
    spec.validate();
    auto f = [&](double x) { return sigma(x, spec); };
    return integrate_adaptive(f, sigma_knots(spec), 1e-12 * spec.X).value;
}

double derivative_bound_check(const SmoothWeightSpec& spec, int i, int grid)
{
    spec.validate();
    require(i >= 0 && i <= spec.k - 1, ErrorKind::precondition, "derivative order must lie in [0, k-1]");
    require(grid >= 2, ErrorKind::precondition, "grid needs at least two points");
    const double lo = spec.support_lo();
    const double hi = spec.support_hi();
    const double spacing = (hi - lo) / (grid - 1);
    // An i-th difference amplifies rounding in sigma by about 2^i (L/h)^i, so
    // high orders widen the step to 2 * 1e-10^(1/i) L. The difference quotient
    // is a B-spline average of the i-th derivative and never exceeds its max.
    const double h = i == 0 ? spacing : std::max(spacing, 2 * std::pow(1e-10, 1.0 / i) * spec.L);

    double best = 0;
    for (int g = 0; g < grid; ++g) {
        const double x = lo + g * spacing;
        long double diff = 0;
        for (int j = 0; j <= i; ++j) {
            const long double c = binomial(i, j) * ((j % 2 == 0) ? 1 : -1);
            diff += c * sigma(x + (0.5 * i - j) * h, spec);
        }
        const double scaled = static_cast<double>(std::fabs(diff) * std::pow(spec.L / h, static_cast<long double>(i)));
        best = std::max(best, scaled);
    }
    return best;
}

double derivative_bound_constant(int k, int i)
{
    check_order(k);
    require(i >= 0 && i <= k - 1, ErrorKind::precondition, "derivative order must lie in [0, k-1]");
    if (i == 0)
        return 1.0;
    // L^i u_k^{(i)}(tL) = sum_{j} (-1)^j C(k,j) (t-j)_+^{k-i} / (k-i)!
    long double fact = 1;
    for (int j = 2; j <= k - i; ++j)
        fact *= j;
    auto deriv = [&](long double t) {
        long double s = 0;
        for (int j = 0; j <= k && t - j > 0; ++j) {
            const long double term = binomial(k, j) * std::pow(t - j, static_cast<long double>(k - i)) / fact;
            s += (j % 2 == 0) ? term : -term;
        }
        return std::fabs(s);
    };
    long double best = 0;
    constexpr int kSteps = 4096;
    for (int g = 0; g <= kSteps * k; ++g) {
        const long double t = static_cast<long double>(g) / kSteps;
        best = std::max(best, deriv(t));
    }
    return static_cast<double>(best);
}

double oscillatory_decay_check(const SmoothWeightSpec& spec, double delta)
{
    spec.validate();
    require(delta >= 0, ErrorKind::precondition, "oscillatory_decay_check needs delta >= 0");
    using cplx = std::complex<double>;
    const double two_pi = 2 * std::numbers::pi;
    auto f = [&](double t) {
        const double x = t * t;
        return sigma(x, spec) * 2 * t * std::polar(1.0, two_pi * delta * t);
    };

    std::vector<double> breaks;
    for (double knot : sigma_knots(spec))
        breaks.push_back(std::sqrt(knot));
    // Split further so no piece spans more than one period of the phase.
    if (delta > 0) {
        std::vector<double> fine;
        const double period = 1.0 / delta;
        for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
            const double a = breaks[j];
            const double b = breaks[j + 1];
            const auto pieces = static_cast<std::size_t>(std::ceil((b - a) / period));
            for (std::size_t p = 0; p < std::max<std::size_t>(pieces, 1); ++p)
                fine.push_back(a + (b - a) * p / std::max<std::size_t>(pieces, 1));
        }
        fine.push_back(breaks.back());
        breaks = std::move(fine);
    }
    const auto r = integrate_adaptive<cplx>(f, breaks, 1e-10 * spec.X, 2000000);
    return std::abs(r.value);
}

} // namespace sqfl
