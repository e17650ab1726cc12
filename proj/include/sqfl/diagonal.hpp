#pragma once

#include "sqfl/analytic.hpp"
#include "sqfl/int_math.hpp"
#include "sqfl/sieve.hpp"

#include <cstdint>

namespace sqfl {

/// Exponent of the b cut-off X^(1/3) / H^lambda used when the diagonal is
/// compared against the variance.
inline constexpr double kDefaultLambda = 0.067;

struct DiagonalParams {
    double H = 1;
    double lambda = 0;
    double X = 1;
    std::uint64_t b_max = 1; ///< floor(X^(1/3) / H^lambda)
    double tail_tol = 1e-8;

    static DiagonalParams make(double H, double lambda, double X, double tail_tol = 1e-8);
};

struct InnerSincSum {
    double value;
    double tail_bound; ///< certified bound on |value - sum_{n>=1} S(n theta)^2|
    std::uint64_t terms;
};

inline constexpr std::uint64_t kInnerSumBudget = 10'000'000'000ull;

/// sum_{n >= 1} S(n theta)^2 by direct summation. The tail past N is the
/// closed-form sum of 1/(2 pi^2 theta^2 n^2) plus an oscillatory remainder
/// bounded by Abel summation, or (when sin(pi theta) is tiny) by
/// 1/(pi^2 theta^2 N). N is the smallest count that certifies `tol`.
InnerSincSum inner_sinc_sum(double theta, double tol);

struct DiagonalResult {
    double value = 0; ///< 2 H^2 sum_{b <= b_max} mu^2(b)/b^3 sum_{n>=1} S(nH/b^{3/2})^2
    double prediction = 0; ///< c_conj H^(2/3)
    double rel_err = 0;    ///< |value / prediction - 1|
    double truncation_bound = 0;

    double prediction_zeta4 = 0;   ///< zeta(4/3)/zeta(4) variant
    double rel_err_zeta4 = 0;
    double prediction_residue = 0; ///< 4/3 c_conj H^(2/3)
    double rel_err_residue = 0;

    // Error-envelope terms of the diagonal approximation, reported separately.
    double env_h3lambda = 0;   ///< H^(3 lambda)
    double env_h2m3lambda = 0; ///< H^(2 - 3 lambda)
    double env_h02468 = 0;     ///< H^0.2468
    double big_b_shape = 0;    ///< H^(1 + lambda/2) / X^(1/6)

    std::uint64_t b_max = 0;
    std::uint64_t squarefree_terms = 0;
};

struct DiagonalPartial {
    double value;
    double truncation_bound;
    std::uint64_t squarefree_terms;
};

/// 2 H^2 sum_{b_lo < b <= b_hi} mu^2(b)/b^3 sum_{n>=1} S(nH/b^{3/2})^2.
/// For theta = H/b^{3/2} <= 1 the inner sum is (1/theta - 1)/2 exactly;
/// otherwise inner_sinc_sum runs with tolerance tail_tol * b^3 / (2H^2).
/// Blocks are reduced in b order, so the result is thread-count invariant.
DiagonalPartial diagonal_partial(double H, std::uint64_t b_lo, std::uint64_t b_hi, const SieveTable& sieve,
                                 double tail_tol, unsigned threads = 1);

DiagonalResult diagonal_sum(const DiagonalParams& p, const SieveTable& sieve, const ZetaConstants& zc,
                            unsigned threads = 1);

/// The b_max -> infinity limit. Every b > B with B >= H^(2/3) has
/// theta <= 1, so its term is H b^(-3/2) - H^2 b^(-3) exactly; those tails
/// are summed as zeta(3/2)/zeta(3) - partial and zeta(3)/zeta(6) - partial.
/// b_max in the result is the cut B used for the explicit part.
DiagonalResult diagonal_saturated(double H, const SieveTable& sieve, const ZetaConstants& zc, double tail_tol = 1e-8,
                                  unsigned threads = 1);

/// Cut used by diagonal_saturated, max(ceil(H^(2/3)), 10^4).
std::uint64_t saturation_cut(double H);

struct DiagonalVsVariance {
    double diag;
    double var;
    double ratio; ///< diag / var
    DiagonalResult diagonal;
};

/// Runs diagonal_sum (lambda = 0.067) and variance_exact at the same (X, H).
DiagonalVsVariance diagonal_vs_variance(std::uint64_t X, const Rational& H, const SieveTable& sieve,
                                        const ZetaConstants& zc, unsigned threads = 1);

} // namespace sqfl
