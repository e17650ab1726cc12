#include "sqfl/sieve.hpp"

#include "sqfl/analytic.hpp"
#include "sqfl/error.hpp"
#include "sqfl/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace sqfl {

namespace {

std::vector<std::uint32_t> small_primes(std::uint64_t limit)
{
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (composite[p])
            continue;
        primes.push_back(static_cast<std::uint32_t>(p));
        for (std::uint64_t q = p * p; q <= limit; q += p)
            composite[q] = true;
    }
    return primes;
}

void check_coverage(const SieveTable& sieve, std::uint64_t hi)
{
    const std::uint64_t need = icbrt(hi);
    if (sieve.limit() < need)
        fail(ErrorKind::sieve_too_small,
             "sieve limit " + std::to_string(sieve.limit()) + " below required " + std::to_string(need));
}

} // namespace

SieveTable SieveTable::build(std::uint64_t limit, std::size_t memory_budget)
{
    require(limit >= 1, ErrorKind::precondition, "sieve limit must be at least 1");
    const std::uint64_t nwords = (limit + 63) / 64;
    if (nwords > memory_budget / sizeof(std::uint64_t))
        fail(ErrorKind::capacity, "sieve limit " + std::to_string(limit) + " exceeds memory budget");

    SieveTable t;
    t.limit_ = limit;
    t.words_.assign(nwords, ~std::uint64_t{0});
    if (limit % 64 != 0)
        t.words_.back() = (std::uint64_t{1} << (limit % 64)) - 1;

    for (std::uint32_t p : small_primes(isqrt(limit))) {
        const std::uint64_t sq = std::uint64_t{p} * p;
        for (std::uint64_t m = sq; m <= limit; m += sq) {
            const std::uint64_t i = m - 1;
            t.words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
        }
    }
    return t;
}

SieveTable SieveTable::from_words(std::uint64_t limit, std::vector<std::uint64_t> words)
{
    require(limit >= 1 && words.size() == (limit + 63) / 64, ErrorKind::precondition,
            "packed sieve size does not match limit");
    SieveTable t;
    t.limit_ = limit;
    t.words_ = std::move(words);
    return t;
}

std::uint64_t SieveTable::count() const
{
    std::uint64_t c = 0;
    for (std::uint64_t w : words_)
        c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
}

std::vector<SquarefullRep> enumerate_squarefull(std::uint64_t lo, std::uint64_t hi,
                                                const SieveTable& sieve, unsigned threads,
                                                std::uint64_t max_results)
{
    require(lo >= 1 && lo <= hi, ErrorKind::precondition, "enumerate_squarefull needs 1 <= lo <= hi");
    check_coverage(sieve, hi);
    const std::uint64_t expected = count_squarefull(hi, sieve) - count_squarefull(lo - 1, sieve);
    if (expected > max_results)
        fail(ErrorKind::capacity, "enumerate would return " + std::to_string(expected) +
                                      " entries, over the budget of " + std::to_string(max_results));

    const std::uint64_t b_max = icbrt(hi);
    constexpr std::uint64_t kBlock = 1024;
    const std::uint64_t nblocks = (b_max + kBlock - 1) / kBlock;

    std::vector<std::vector<SquarefullRep>> parts(nblocks);
    parallel_for_blocks(nblocks, threads, [&](std::uint64_t blk) {
        const std::uint64_t b_lo = blk * kBlock + 1;
        const std::uint64_t b_hi = std::min(b_max, b_lo + kBlock - 1);
        auto& out = parts[blk];
        for (std::uint64_t b = b_lo; b <= b_hi; ++b) {
            if (!sieve.is_squarefree(b))
                continue;
            const std::uint64_t b3 = b * b * b;
            const std::uint64_t a_lo = isqrt_ceil(ceil_div(lo, b3));
            const std::uint64_t a_hi = isqrt(hi / b3);
            for (std::uint64_t a = std::max<std::uint64_t>(a_lo, 1); a <= a_hi; ++a)
                out.push_back({a * a * b3, a, b});
        }
    });

    std::vector<SquarefullRep> all;
    std::size_t total = 0;
    for (const auto& p : parts)
        total += p.size();
    all.reserve(total);
    for (auto& p : parts)
        all.insert(all.end(), p.begin(), p.end());
    std::sort(all.begin(), all.end(),
              [](const SquarefullRep& l, const SquarefullRep& r) { return l.value < r.value; });
    return all;
}

std::uint64_t count_squarefull(std::uint64_t x, const SieveTable& sieve)
{
    if (x == 0)
        return 0;
    check_coverage(sieve, x);
    std::uint64_t q = 0;
    const std::uint64_t b_max = icbrt(x);
    for (std::uint64_t b = 1; b <= b_max; ++b) {
        if (sieve.is_squarefree(b))
            q += isqrt(x / (b * b * b));
    }
    return q;
}

std::uint64_t short_interval_count(std::uint64_t x, const Rational& H, const SieveTable& sieve)
{
    require(x >= 1, ErrorKind::precondition, "short_interval_count needs x >= 1");
    require(H.value() >= 1, ErrorKind::precondition, "short_interval_count needs H >= 1");
    const std::uint64_t upper = interval_upper(x, H);
    check_coverage(sieve, upper);
    return count_squarefull(upper, sieve) - count_squarefull(x, sieve);
}

BGApprox bateman_grosswald(double x, const ZetaConstants& zc)
{
    require(x >= 1, ErrorKind::precondition, "bateman_grosswald needs x >= 1");
    BGApprox r;
    r.x = x;
    r.main = zc.z32 / zc.z3 * std::sqrt(x);
    r.second = zc.z23 / zc.z2 * std::cbrt(x);
    r.total = r.main + r.second;
    return r;
}

} // namespace sqfl
