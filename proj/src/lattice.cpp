#include "sqfl/lattice.hpp"

#include "sqfl/error.hpp"

#include <cmath>

namespace sqfl {

namespace {

// floor(x^(1/5))
std::uint64_t ififth_root(std::uint64_t x)
{
    auto pow5 = [](std::uint64_t v) {
        u128 r = 1;
        for (int i = 0; i < 5; ++i)
            r *= v;
        return r;
    };
    std::uint64_t r = static_cast<std::uint64_t>(std::pow(static_cast<long double>(x), 0.2L));
    while (r > 0 && pow5(r) > x)
        --r;
    while (pow5(r + 1) <= x)
        ++r;
    return r;
}

double log_or_zero(double A)
{
    return A > 1 ? std::log(A) : 0.0;
}

} // namespace

std::string to_string(RKind k)
{
    return k == RKind::R1 ? "R1" : "R2";
}

std::string to_string(Curve c)
{
    return c == Curve::inv23 ? "inv23" : "inv32";
}

double curve_value(Curve f, double u)
{
    return f == Curve::inv23 ? std::pow(u, -2.0 / 3.0) : std::pow(u, -1.5);
}

double curve_min_second_derivative(Curve f)
{
    // F'' = (10/9) u^{-8/3} or (15/4) u^{-7/2}, decreasing on [1, 2].
    return f == Curve::inv23 ? 10.0 / 9.0 * std::pow(2.0, -8.0 / 3.0) : 15.0 / 4.0 * std::pow(2.0, -3.5);
}

std::uint64_t count_near_curve(const CurveCountProblem& p)
{
    require(p.A >= 1, ErrorKind::precondition, "count_near_curve needs A >= 1");
    require(p.delta >= 0, ErrorKind::precondition, "count_near_curve needs delta >= 0");
    std::uint64_t count = 0;
    const long double A = static_cast<long double>(p.A);
    for (std::uint64_t a = p.A; a <= 2 * p.A; ++a) {
        const long double u = static_cast<long double>(a) / A;
        const long double f = p.F == Curve::inv23 ? std::pow(u, -2.0L / 3.0L) : std::pow(u, -1.5L);
        const long double v = static_cast<long double>(p.N) * f;
        if (std::fabs(v - std::nearbyint(v)) <= p.delta)
            ++count;
    }
    return count;
}

double lemma3_delta(const CurveCountProblem& p)
{
    const double A = static_cast<double>(p.A);
    return p.N / (A * A) * curve_min_second_derivative(p.F);
}

double lemma3_bound(const CurveCountProblem& p, double Delta)
{
    const double A = static_cast<double>(p.A);
    if (!(p.N >= A))
        fail(ErrorKind::hypothesis, "lemma3 hypothesis failed: N >= A");
    if (!(Delta < 1))
        fail(ErrorKind::hypothesis, "lemma3 hypothesis failed: Delta < 1");
    if (!(p.delta >= 0))
        fail(ErrorKind::hypothesis, "lemma3 hypothesis failed: delta >= 0");
    if (!(p.delta <= 0.5 * std::sqrt(Delta)))
        fail(ErrorKind::hypothesis, "lemma3 hypothesis failed: delta <= sqrt(Delta)/2");

    const double lg = log_or_zero(A);
    const double d = p.delta;
    return 1 + std::pow(Delta, 0.3) * std::pow(A, 0.9) * std::sqrt(lg) +
           std::pow(Delta, 4.0 / 11) * std::pow(A, 10.0 / 11) * std::pow(lg, 5.0 / 11) +
           std::pow(d, 1.0 / 8) * std::pow(Delta, 3.0 / 8) * A * std::pow(lg, 5.0 / 8) +
           std::pow(d, 1.0 / 7) * std::pow(Delta, 1.0 / 7) * std::pow(A, 6.0 / 7) * std::pow(lg, 5.0 / 7) +
           std::pow(d, 0.4) * std::pow(Delta, 0.2) * A * lg + d * A;
}

double lemma4_bound(const CurveCountProblem& p, double c)
{
    require(c > 0, ErrorKind::precondition, "lemma4 constant must be positive");
    const double A = static_cast<double>(p.A);
    const double N = p.N;
    require(N > 0, ErrorKind::precondition, "lemma4 needs N > 0");
    const double limit = c * std::min(N / A, N / (A * A) + 1 / N);
    if (!(p.delta >= 0 && p.delta < limit))
        fail(ErrorKind::hypothesis, "lemma4 hypothesis failed: delta < c min(N/A, N/A^2 + 1/N)");
    const double d = p.delta;
    return std::sqrt(A) * std::pow(N, 1.0 / 6) + std::pow(d, 0.25) * std::sqrt(A) * std::pow(N, 0.25) +
           std::cbrt(d) * std::pow(A, 2.0 / 3) * std::pow(N, 1.0 / 6) + d * A;
}

double default_eps0(const Rational& H)
{
    return std::pow(H.to_double(), -0.1005);
}

std::uint64_t count_R(std::uint64_t x, const Rational& H, double eps0, RKind which)
{
    require(x >= 1, ErrorKind::precondition, "count_R needs x >= 1");
    require(eps0 > 0 && eps0 < 1, ErrorKind::precondition, "count_R needs eps0 in (0, 1)");
    const std::uint64_t upper = interval_upper(x, H);
    const long double h = H.value();
    const long double x_theta = 2 * h + h * h / std::sqrt(static_cast<long double>(x));
    const long double lower_real = static_cast<long double>(eps0) * x_theta;
    const std::uint64_t idx_lo = static_cast<std::uint64_t>(std::floor(lower_real)) + 1;
    const std::uint64_t idx_hi = ififth_root(x);
    if (idx_hi >= idx_lo && idx_hi - idx_lo > kCountRBudget)
        fail(ErrorKind::budget, "count_R index range exceeds budget");

    std::uint64_t count = 0;
    for (std::uint64_t i = idx_lo; i <= idx_hi; ++i) {
        if (which == RKind::R1) {
            const std::uint64_t m2 = i * i;
            const std::uint64_t k_lo = icbrt(x / m2) + 1;
            const std::uint64_t k_hi = icbrt(upper / m2);
            if (k_hi >= k_lo)
                count += k_hi - k_lo + 1;
        } else {
            const std::uint64_t k3 = i * i * i;
            const std::uint64_t m_lo = isqrt(x / k3) + 1;
            const std::uint64_t m_hi = isqrt(upper / k3);
            if (m_hi >= m_lo)
                count += m_hi - m_lo + 1;
        }
    }
    return count;
}

Lemma2Check lemma2_check(std::uint64_t x, const Rational& H, double eps0, const SieveTable& sieve,
                         const ZetaConstants& zc)
{
    Lemma2Check c;
    c.x = x;
    c.eps0 = eps0;
    const double h = H.to_double();
    const double sx = std::sqrt(static_cast<double>(x));
    c.x_theta = 2 * h + h * h / sx;
    const double y = c.x_theta * sx;
    c.count = short_interval_count(x, H, sieve);
    c.main_term = zc.c_lead / 2 * c.x_theta;
    c.R1 = count_R(x, H, eps0, RKind::R1);
    c.R2 = count_R(x, H, eps0, RKind::R2);
    c.deviation = std::fabs(static_cast<double>(c.count) - c.main_term);
    c.envelope = eps0 * c.x_theta + static_cast<double>(c.R1 + c.R2);
    c.ratio = c.deviation / c.envelope;
    const double e3 = eps0 * eps0 * eps0;
    c.in_hypothesis = sx <= e3 * y && e3 * y <= e3 * eps0 * eps0 * static_cast<double>(x);
    return c;
}

MediumParams prop_medium_params(double X, double H, double A, RKind which)
{
    require(A >= 1, ErrorKind::precondition, "prop_medium_params needs A >= 1");
    MediumParams m;
    if (which == RKind::R1) {
        m.N = std::cbrt(X) / std::pow(A, 2.0 / 3);
        m.Delta = 10 * std::cbrt(X) / (9 * std::pow(2.0, 8.0 / 3) * std::pow(A, 8.0 / 3));
        m.delta = H / (std::pow(X, 1.0 / 6) * std::pow(A, 2.0 / 3));
    } else {
        m.N = std::sqrt(X) / std::pow(A, 1.5);
        m.Delta = 15 * std::sqrt(X) / (4 * std::pow(2.0, 3.5) * std::pow(A, 3.5));
        m.delta = 2 * H / std::pow(A, 1.5);
    }
    m.eligible = m.delta <= 0.5 * std::sqrt(m.Delta);
    return m;
}

} // namespace sqfl
