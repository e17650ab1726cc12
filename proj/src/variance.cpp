#include "sqfl/variance.hpp"

#include "sqfl/error.hpp"
#include "sqfl/parallel.hpp"
#include "sqfl/summation.hpp"

#include <algorithm>
#include <cmath>

namespace sqfl {

IntervalParams IntervalParams::make(std::uint64_t X, const Rational& H, const ZetaConstants& zc)
{
    require(X >= 1, ErrorKind::precondition, "X must be at least 1");
    require(H.value() >= 1, ErrorKind::precondition, "H must be at least 1");
    require(H.value() * H.value() <= static_cast<long double>(X), ErrorKind::precondition,
            "H must not exceed sqrt(X)");
    IntervalParams p;
    p.X = X;
    p.H = H;
    p.c_lead = zc.c_lead;
    p.center = static_cast<double>(zc.c_lead * H.value());
    return p;
}

std::pair<long double, long double> membership_interval(const SquarefullRep& m, const Rational& H)
{
    const long double h = H.value();
    const long double root = std::sqrt(static_cast<long double>(m.value));
    if (!(root > h))
        fail(ErrorKind::domain, "membership interval needs sqrt(m) > H");
    const long double mv = static_cast<long double>(m.value);
    return {mv - 2 * h * root + h * h, mv};
}

std::uint64_t required_sieve_limit(std::uint64_t X, const Rational& H)
{
    return icbrt(interval_upper(2 * X, H));
}

ShortIntervalData ShortIntervalData::collect(const IntervalParams& p, const SieveTable& sieve, unsigned threads)
{
    ShortIntervalData d;
    d.params = p;
    // m contributes on [X, 2X] iff m > X and (sqrt(m) - H)^2 < 2X, i.e.
    // m < (sqrt(2X) + H)^2.
    const std::uint64_t hi = interval_upper(2 * p.X, p.H);
    const auto reps = enumerate_squarefull(p.X + 1, hi, sieve, threads);
    d.values.reserve(reps.size());
    d.entries.reserve(reps.size());
    for (const auto& r : reps) {
        d.values.push_back(r.value);
        d.entries.push_back(membership_interval(r, p.H).first);
    }
    return d;
}

std::int64_t ShortIntervalData::count_at(long double x) const
{
    // #{m : entry <= x} - #{m : m <= x}
    const auto entered = std::upper_bound(entries.begin(), entries.end(), x) - entries.begin();
    const auto exited = std::upper_bound(values.begin(), values.end(), x,
                                         [](long double v, std::uint64_t m) {
                                             return v < static_cast<long double>(m);
                                         }) -
                        values.begin();
    return static_cast<std::int64_t>(entered - exited);
}

SweepResult sweep(const ShortIntervalData& data, const std::vector<double>& thresholds, unsigned threads,
                  std::uint64_t max_events)
{
    const long double lo = static_cast<long double>(data.params.X);
    const long double hi = 2 * lo;
    const long double center = data.params.center;

    if (2 * static_cast<std::uint64_t>(data.values.size()) > max_events)
        fail(ErrorKind::budget, "sweep event count exceeds budget");

    // Event generation in fixed blocks; the global sort fixes the order.
    const std::size_t n = data.values.size();
    constexpr std::size_t kBlock = 1 << 14;
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<SweepEvent> events(2 * n);
    parallel_for_blocks(nblocks, threads, [&](std::uint64_t blk) {
        const std::size_t a = blk * kBlock;
        const std::size_t b = std::min(n, a + kBlock);
        for (std::size_t i = a; i < b; ++i) {
            events[2 * i] = {data.entries[i], +1, data.values[i]};
            events[2 * i + 1] = {static_cast<long double>(data.values[i]), -1, data.values[i]};
        }
    });
    std::sort(events.begin(), events.end(), [](const SweepEvent& l, const SweepEvent& r) {
        if (l.position != r.position)
            return l.position < r.position;
        if (l.delta != r.delta)
            return l.delta > r.delta;
        return l.source < r.source;
    });

    SweepResult out;
    out.events = events.size();
    out.exceeding.assign(thresholds.size(), 0);
    std::vector<CompensatedSum> exceed(thresholds.size());
    CompensatedSum integral;

    std::int64_t count = 0;
    std::size_t idx = 0;
    while (idx < events.size() && events[idx].position <= lo) {
        count += events[idx].delta;
        ++idx;
    }
    out.min_count = count;
    out.max_count = count;

    long double cursor = lo;
    auto accumulate = [&](long double until) {
        const long double len = until - cursor;
        if (len <= 0)
            return;
        const long double dev = static_cast<long double>(count) - center;
        integral += len * dev * dev;
        for (std::size_t t = 0; t < thresholds.size(); ++t) {
            if (std::fabs(dev) > thresholds[t])
                exceed[t] += len;
        }
        ++out.segments;
        cursor = until;
    };

    for (; idx < events.size(); ++idx) {
        const long double pos = events[idx].position;
        if (pos >= hi)
            break;
        accumulate(pos);
        count += events[idx].delta;
        if (count < 0)
            fail(ErrorKind::instability, "negative short-interval count during sweep");
        out.min_count = std::min(out.min_count, count);
        out.max_count = std::max(out.max_count, count);
    }
    accumulate(hi);
    for (; idx < events.size(); ++idx)
        count += events[idx].delta;
    out.final_count = count;

    out.integral = integral.value();
    for (std::size_t t = 0; t < thresholds.size(); ++t)
        out.exceeding[t] = exceed[t].value();
    return out;
}

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

McEstimate variance_mc(const ShortIntervalData& data, std::uint64_t samples, std::uint64_t seed)
{
    require(samples >= 100, ErrorKind::precondition, "Monte Carlo needs at least 100 samples");
    const long double X = static_cast<long double>(data.params.X);
    const long double center = data.params.center;
    CompensatedSum sum, sum_sq;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const long double u = static_cast<long double>(splitmix64(seed, i) >> 11) * 0x1.0p-53L;
        const long double x = X + X * u;
        const long double dev = static_cast<long double>(data.count_at(x)) - center;
        const long double v = dev * dev;
        sum += v;
        sum_sq += v * v;
    }
    const long double n = static_cast<long double>(samples);
    const long double mean = sum.value() / n;
    long double var = (sum_sq.value() - n * mean * mean) / (n - 1);
    if (var < 0)
        var = 0;
    return {static_cast<double>(mean), static_cast<double>(std::sqrt(var / n))};
}

VarianceReport variance_exact(const IntervalParams& p, const SieveTable& sieve, const ZetaConstants& zc,
                              const VarianceOptions& opts)
{
    const auto data = ShortIntervalData::collect(p, sieve, opts.threads);
    std::vector<double> thresholds;
    if (opts.threshold)
        thresholds.push_back(*opts.threshold);
    const auto sw = sweep(data, thresholds, opts.threads);

    VarianceReport r;
    r.X = p.X;
    r.H = p.H;
    r.center = p.center;
    r.exact = static_cast<double>(sw.integral / static_cast<long double>(p.X));
    r.segments = sw.segments;
    r.prediction = zc.c_conj * std::pow(p.H.to_double(), 2.0 / 3.0);
    r.ratio = r.exact / r.prediction;
    r.min_count = sw.min_count;
    r.max_count = sw.max_count;
    r.final_count = sw.final_count;
    r.threshold = opts.threshold;
    if (opts.threshold)
        r.exceptional_measure = static_cast<double>(sw.exceeding[0] / static_cast<long double>(p.X));
    if (opts.mc_samples > 0) {
        const auto mc = variance_mc(data, opts.mc_samples, opts.seed);
        r.mc_estimate = mc.estimate;
        r.mc_stderr = mc.stderr_;
        r.mc_samples = opts.mc_samples;
        r.seed = opts.seed;
    }
    return r;
}

double exceptional_measure(const IntervalParams& p, double threshold, const SieveTable& sieve, unsigned threads)
{
    require(threshold >= 0, ErrorKind::precondition, "threshold must be non-negative");
    const auto data = ShortIntervalData::collect(p, sieve, threads);
    const auto sw = sweep(data, {threshold}, threads);
    return static_cast<double>(sw.exceeding[0] / static_cast<long double>(p.X));
}

} // namespace sqfl
