#pragma once

#include "sqfl/analytic.hpp"
#include "sqfl/int_math.hpp"
#include "sqfl/sieve.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace sqfl {

/// (X, H) with centring constant zeta(3/2)/zeta(3) * H.
struct IntervalParams {
    std::uint64_t X = 0;
    Rational H;
    double c_lead = 0;
    double center = 0;

    /// Requires 1 <= H <= sqrt(X).
    static IntervalParams make(std::uint64_t X, const Rational& H, const ZetaConstants& zc);
};

/// x counts m in its short interval iff entry <= x < exit, with
/// entry = (sqrt(m) - H)^2 = m - 2 H sqrt(m) + H^2 and exit = m.
std::pair<long double, long double> membership_interval(const SquarefullRep& m, const Rational& H);

struct SweepEvent {
    long double position;
    int delta;            // +1 entry, -1 exit
    std::uint64_t source; // the squarefull m
};

/// Squarefull numbers whose membership interval meets [X, 2X], ascending,
/// with their entry points. Entries are increasing in m, which the Monte
/// Carlo estimator relies on.
struct ShortIntervalData {
    IntervalParams params;
    std::vector<std::uint64_t> values;
    std::vector<long double> entries;

    static ShortIntervalData collect(const IntervalParams& p, const SieveTable& sieve, unsigned threads = 1);

    /// Short-interval count N(x) by two binary searches.
    std::int64_t count_at(long double x) const;
};

struct SweepResult {
    long double integral = 0;           ///< int_X^{2X} (N - center)^2 dx
    std::vector<long double> exceeding; ///< measure of |N - center| > t per threshold
    std::uint64_t segments = 0;
    std::int64_t min_count = 0;
    std::int64_t max_count = 0;
    std::int64_t final_count = 0; ///< N after every event is applied
    std::uint64_t events = 0;
};

/// Sorts all entry/exit events (entries before exits at equal positions)
/// and integrates the piecewise-constant count over [X, 2X].
SweepResult sweep(const ShortIntervalData& data, const std::vector<double>& thresholds,
                  unsigned threads = 1, std::uint64_t max_events = std::uint64_t{1} << 31);

struct VarianceReport {
    std::uint64_t X = 0;
    Rational H;
    double center = 0;
    double exact = 0; ///< (1/X) int_X^{2X} |N(x) - center|^2 dx
    double mc_estimate = 0;
    double mc_stderr = 0;
    std::uint64_t mc_samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t segments = 0;
    double prediction = 0; ///< c_conj * H^(2/3)
    double ratio = 0;      ///< exact / prediction
    std::optional<double> threshold;
    double exceptional_measure = 0;
    std::int64_t min_count = 0;
    std::int64_t max_count = 0;
    std::int64_t final_count = 0;
};

struct VarianceOptions {
    unsigned threads = 1;
    std::uint64_t mc_samples = 0; ///< 0 disables the Monte Carlo cross-check
    std::uint64_t seed = 0;
    std::optional<double> threshold;
};

VarianceReport variance_exact(const IntervalParams& p, const SieveTable& sieve, const ZetaConstants& zc,
                              const VarianceOptions& opts = {});

struct McEstimate {
    double estimate;
    double stderr_;
};

/// Mean and standard error of (N(x) - center)^2 for x uniform on [X, 2X],
/// drawn from a SplitMix64 stream keyed by (seed, sample index).
McEstimate variance_mc(const ShortIntervalData& data, std::uint64_t samples, std::uint64_t seed);

/// Measure of {x in [X, 2X] : |N(x) - center| > threshold} divided by X.
double exceptional_measure(const IntervalParams& p, double threshold, const SieveTable& sieve,
                           unsigned threads = 1);

/// Documented bound on variance_exact / H^1.799 over X in {10^8, 10^10, 10^12},
/// H in {X^0.05, X^0.10, X^0.15}. Observed maximum 0.369 (X = 10^8, H = X^0.05).
inline constexpr double kEnvelopeConstant = 0.4;

/// Sieve limit that covers every squarefull number variance_exact touches.
std::uint64_t required_sieve_limit(std::uint64_t X, const Rational& H);

/// SplitMix64 output for stream position `index` under `seed`.
std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t index);

} // namespace sqfl
