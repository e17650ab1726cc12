#include "sqfl/diagonal.hpp"

#include "sqfl/error.hpp"
#include "sqfl/parallel.hpp"
#include "sqfl/summation.hpp"
#include "sqfl/variance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace sqfl {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

// sum_{n > N} 1/n^2 by Euler-Maclaurin at M = N + 1.
long double inverse_square_tail(std::uint64_t N)
{
    const long double m = static_cast<long double>(N) + 1;
    const long double m2 = m * m;
    return 1 / m + 1 / (2 * m2) + 1 / (6 * m2 * m) - 1 / (30 * m2 * m2 * m) + 1 / (42 * m2 * m2 * m2 * m);
}

} // namespace

DiagonalParams DiagonalParams::make(double H, double lambda, double X, double tail_tol)
{
    require(H >= 1, ErrorKind::precondition, "diagonal needs H >= 1");
    require(lambda >= 0, ErrorKind::precondition, "diagonal needs lambda >= 0");
    require(X > 0, ErrorKind::precondition, "diagonal needs X > 0");
    require(tail_tol > 0 && tail_tol <= 1e-3, ErrorKind::precondition, "tail_tol must lie in (0, 1e-3]");
    DiagonalParams p;
    p.H = H;
    p.lambda = lambda;
    p.X = X;
    p.tail_tol = tail_tol;
    const long double cut = std::cbrt(static_cast<long double>(X)) / std::pow(static_cast<long double>(H), static_cast<long double>(lambda));
    require(cut >= 1, ErrorKind::precondition, "b cut-off X^(1/3)/H^lambda is below 1");
    require(cut < 1.8e19L, ErrorKind::capacity, "b cut-off exceeds 64-bit range");
    p.b_max = static_cast<std::uint64_t>(std::floor(cut));
    return p;
}

InnerSincSum inner_sinc_sum(double theta, double tol)
{
    require(theta > 0 && tol > 0, ErrorKind::precondition, "inner_sinc_sum needs theta > 0 and tol > 0");
    const long double th = theta;

    // Integer theta: S(n theta) vanishes for every n >= 1.
    if (theta == std::floor(theta))
        return {0.0, 0.0, 0};

    const long double plain_n = std::ceil(1 / (kPi * kPi * th * th * tol));
    const long double s = std::fabs(sin_pi(th));
    long double abel_n = plain_n;
    if (s > 0)
        abel_n = std::ceil(1 / (kPi * th * std::sqrt(2 * s * tol)));
    const bool use_abel = s > 0 && abel_n < plain_n;
    const long double N_real = std::max(1.0L, use_abel ? abel_n : plain_n);
    if (N_real > static_cast<long double>(kInnerSumBudget))
        fail(ErrorKind::budget, "inner_sinc_sum needs more than 1e10 terms; raise tol");
    const auto N = static_cast<std::uint64_t>(N_real);

    CompensatedSum sum;
    for (std::uint64_t n = N; n >= 1; --n) {
        const long double arg = static_cast<long double>(n) * th;
        const long double v = sin_pi(arg) / (kPi * arg);
        sum += v * v;
    }
    long double bound;
    if (use_abel) {
        sum += inverse_square_tail(N) / (2 * kPi * kPi * th * th);
        const long double n1 = static_cast<long double>(N) + 1;
        bound = 1 / (2 * kPi * kPi * th * th * s * n1 * n1);
    } else {
        bound = 1 / (kPi * kPi * th * th * static_cast<long double>(N));
    }
    return {static_cast<double>(sum.value()), static_cast<double>(bound), N};
}

DiagonalPartial diagonal_partial(double H, std::uint64_t b_lo, std::uint64_t b_hi, const SieveTable& sieve,
                                 double tail_tol, unsigned threads)
{
    require(H >= 1, ErrorKind::precondition, "diagonal needs H >= 1");
    if (b_hi <= b_lo)
        return {0.0, 0.0, 0};
    if (sieve.limit() < b_hi)
        fail(ErrorKind::sieve_too_small,
             "sieve limit " + std::to_string(sieve.limit()) + " below b cut-off " + std::to_string(b_hi));

    const long double h = H;
    constexpr std::uint64_t kBlock = 1 << 16;
    const std::uint64_t first = b_lo + 1;
    const std::uint64_t nblocks = (b_hi - b_lo + kBlock - 1) / kBlock;
    struct BlockSum {
        long double value = 0;
        long double bound = 0;
        std::uint64_t terms = 0;
    };
    std::vector<BlockSum> blocks(nblocks);

    parallel_for_blocks(nblocks, threads, [&](std::uint64_t blk) {
        const std::uint64_t a = first + blk * kBlock;
        const std::uint64_t z = std::min(b_hi, a + kBlock - 1);
        CompensatedSum value, bound;
        std::uint64_t terms = 0;
        for (std::uint64_t b = z; b >= a; --b) {
            if (!sieve.is_squarefree(b))
                continue;
            ++terms;
            const long double lb = static_cast<long double>(b);
            const long double b32 = lb * std::sqrt(lb);
            const long double theta = h / b32;
            const long double weight = 2 * h * h / (lb * lb * lb);
            if (theta <= 1) {
                // Poisson: sum_{n in Z} S(n theta)^2 = 1/theta for theta <= 1.
                value += weight * (1 / theta - 1) / 2;
            } else {
                const long double tol = tail_tol / weight;
                const auto inner = inner_sinc_sum(static_cast<double>(theta), static_cast<double>(tol));
                value += weight * inner.value;
                bound += weight * inner.tail_bound;
            }
        }
        blocks[blk] = {value.value(), bound.value(), terms};
    });

    CompensatedSum value, bound;
    std::uint64_t terms = 0;
    for (const auto& blk : blocks) {
        value += blk.value;
        bound += blk.bound;
        terms += blk.terms;
    }
    return {static_cast<double>(value.value()), static_cast<double>(bound.value()), terms};
}

namespace {

void fill_predictions(DiagonalResult& r, double H, double lambda, double X, const ZetaConstants& zc)
{
    const double h23 = std::pow(H, 2.0 / 3.0);
    r.prediction = zc.c_conj * h23;
    r.rel_err = std::fabs(r.value / r.prediction - 1);
    r.prediction_zeta4 = zc.c_conj_zeta4() * h23;
    r.rel_err_zeta4 = std::fabs(r.value / r.prediction_zeta4 - 1);
    r.prediction_residue = zc.c_residue() * h23;
    r.rel_err_residue = std::fabs(r.value / r.prediction_residue - 1);

    r.env_h3lambda = std::pow(H, 3 * lambda);
    r.env_h2m3lambda = std::pow(H, 2 - 3 * lambda);
    r.env_h02468 = std::pow(H, 0.2468);
    r.big_b_shape = std::pow(H, 1 + lambda / 2) / std::pow(X, 1.0 / 6.0);
}

} // namespace

std::uint64_t saturation_cut(double H)
{
    require(H >= 1, ErrorKind::precondition, "diagonal needs H >= 1");
    const double c = std::ceil(std::pow(H, 2.0 / 3.0));
    require(c < 1e15, ErrorKind::capacity, "H too large for the saturated diagonal");
    return std::max<std::uint64_t>(static_cast<std::uint64_t>(c), 10'000);
}

DiagonalResult diagonal_saturated(double H, const SieveTable& sieve, const ZetaConstants& zc, double tail_tol,
                                  unsigned threads)
{
    require(tail_tol > 0 && tail_tol <= 1e-3, ErrorKind::precondition, "tail_tol must lie in (0, 1e-3]");
    const std::uint64_t B = saturation_cut(H);
    const auto part = diagonal_partial(H, 0, B, sieve, tail_tol, threads);

    // Squarefree partial sums of b^(-3/2) and b^(-3) up to B, summed from the small end up.
    CompensatedSum p32, p3;
    for (std::uint64_t b = B; b >= 1; --b) {
        if (!sieve.is_squarefree(b))
            continue;
        const long double lb = static_cast<long double>(b);
        p32 += 1 / (lb * std::sqrt(lb));
        p3 += 1 / (lb * lb * lb);
    }
    const long double z6 = zeta_real(6.0, 1e-15);
    const long double lead32 = static_cast<long double>(zc.z32) / zc.z3;
    const long double lead3 = static_cast<long double>(zc.z3) / z6;
    const long double h = H;
    const long double tail = h * (lead32 - p32.value()) - h * h * (lead3 - p3.value());

    DiagonalResult r;
    r.value = static_cast<double>(part.value + tail);
    // Constants carry a few ulp of relative error each.
    const long double const_err = 8 * std::numeric_limits<double>::epsilon() * (h * lead32 + h * h * lead3);
    r.truncation_bound = static_cast<double>(part.truncation_bound + const_err);
    r.squarefree_terms = part.squarefree_terms;
    r.b_max = B;
    fill_predictions(r, H, 0, std::numeric_limits<double>::infinity(), zc);
    return r;
}

DiagonalResult diagonal_sum(const DiagonalParams& p, const SieveTable& sieve, const ZetaConstants& zc,
                            unsigned threads)
{
    const auto part = diagonal_partial(p.H, 0, p.b_max, sieve, p.tail_tol, threads);
    DiagonalResult r;
    r.value = part.value;
    r.truncation_bound = part.truncation_bound;
    r.squarefree_terms = part.squarefree_terms;
    r.b_max = p.b_max;
    fill_predictions(r, p.H, p.lambda, p.X, zc);
    return r;
}

DiagonalVsVariance diagonal_vs_variance(std::uint64_t X, const Rational& H, const SieveTable& sieve,
                                        const ZetaConstants& zc, unsigned threads)
{
    const auto dp = DiagonalParams::make(H.to_double(), kDefaultLambda, static_cast<double>(X));
    DiagonalVsVariance out;
    out.diagonal = diagonal_sum(dp, sieve, zc, threads);
    VarianceOptions opts;
    opts.threads = threads;
    const auto var = variance_exact(IntervalParams::make(X, H, zc), sieve, zc, opts);
    out.diag = out.diagonal.value;
    out.var = var.exact;
    out.ratio = out.diag / out.var;
    return out;
}

} // namespace sqfl
