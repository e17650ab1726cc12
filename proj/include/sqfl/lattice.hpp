#pragma once

#include "sqfl/analytic.hpp"
#include "sqfl/int_math.hpp"
#include "sqfl/sieve.hpp"

#include <cstdint>
#include <string>

namespace sqfl {

enum class Curve {
    inv23, ///< u -> u^(-2/3)
    inv32, ///< u -> u^(-3/2)
};

double curve_value(Curve f, double u);

/// min over [1, 2] of |F''|, attained at u = 2 for both curves.
double curve_min_second_derivative(Curve f);

struct CurveCountProblem {
    Curve F = Curve::inv23;
    std::uint64_t A = 1;
    double N = 1;
    double delta = 0;
};

/// #{a in [A, 2A] : ||N F(a/A)|| <= delta}, by direct scan.
std::uint64_t count_near_curve(const CurveCountProblem& p);

/// Delta = N / A^2 * min |F''| on [1, 2].
double lemma3_delta(const CurveCountProblem& p);

/// The seven-term lattice-point bound with implied constant 1:
///   1 + D^{3/10} A^{9/10} (log A)^{1/2} + D^{4/11} A^{10/11} (log A)^{5/11}
///     + d^{1/8} D^{3/8} A (log A)^{5/8} + d^{1/7} D^{1/7} A^{6/7} (log A)^{5/7}
///     + d^{2/5} D^{1/5} A log A + d A
/// Throws Error(hypothesis) naming the failed condition unless
/// N >= A, Delta < 1 and 0 <= delta <= sqrt(Delta)/2.
double lemma3_bound(const CurveCountProblem& p, double Delta);

/// A^{1/2} N^{1/6} + d^{1/4} A^{1/2} N^{1/4} + d^{1/3} A^{2/3} N^{1/6} + d A.
/// Throws Error(hypothesis) unless delta < c min(N/A, N/A^2 + 1/N).
double lemma4_bound(const CurveCountProblem& p, double c = 1.0);

/// Fitted implied constants. count_near_curve / bound stayed below
/// 0.053 (seven-term bound) and 0.131 (four-term bound) on the 20-point grid
/// A in {100, 300, 1000, 3000, 10000}, N in {A^1.2, A^1.6}, both curves.
inline constexpr double kLemma3Constant = 0.1;
inline constexpr double kLemma4Constant = 0.2;

enum class RKind { R1, R2 };

/// Pairs (m, k) of positive integers with eps0 x^theta < idx <= x^(1/5)
/// and x < m^2 k^3 <= x + y, where idx is m (R1) or k (R2),
/// y = 2 sqrt(x) H + H^2 and x^(1/2 + theta) = y. Exact integer ranges.
std::uint64_t count_R(std::uint64_t x, const Rational& H, double eps0, RKind which);

inline constexpr std::uint64_t kCountRBudget = 100'000'000ull;

/// Default eps0 = H^-0.1005.
double default_eps0(const Rational& H);

/// Fitted c in |count - main| <= c (eps0 x^theta + R1 + R2) over
/// x in {10^6, 10^8, 10^10}, H in {x^0.05, x^0.10, x^0.15}. Observed max 0.336.
inline constexpr double kLemma2Constant = 0.5;

struct Lemma2Check {
    std::uint64_t x = 0;
    double eps0 = 0;
    double x_theta = 0; ///< y / sqrt(x)
    std::uint64_t count = 0; ///< Q(x + y) - Q(x)
    double main_term = 0;    ///< zeta(3/2)/(2 zeta(3)) x^theta
    std::uint64_t R1 = 0;
    std::uint64_t R2 = 0;
    double deviation = 0;    ///< |count - main_term|
    double envelope = 0;     ///< eps0 x^theta + R1 + R2
    double ratio = 0;        ///< deviation / envelope
    bool in_hypothesis = false; ///< sqrt(x) <= eps0^3 y <= eps0^5 x
};

Lemma2Check lemma2_check(std::uint64_t x, const Rational& H, double eps0, const SieveTable& sieve,
                         const ZetaConstants& zc);

struct MediumParams {
    double N = 0;
    double Delta = 0;
    double delta = 0;
    bool eligible = false; ///< delta <= sqrt(Delta) / 2
};

/// Parameter choices of the dyadic lattice argument for block (A, 2A]:
///   R1: F = u^{-2/3}, N = x^{1/3}/A^{2/3}, Delta = 10 x^{1/3}/(9 2^{8/3} A^{8/3}),
///       delta = H / (x^{1/6} A^{2/3});
///   R2: F = u^{-3/2}, N = x^{1/2}/A^{3/2}, Delta = 15 x^{1/2}/(4 2^{7/2} A^{7/2}),
///       delta = 2H / A^{3/2}.
MediumParams prop_medium_params(double X, double H, double A, RKind which);

std::string to_string(RKind k);
std::string to_string(Curve c);

} // namespace sqfl
