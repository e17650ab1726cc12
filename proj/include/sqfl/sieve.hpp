#pragma once

#include "sqfl/int_math.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sqfl {

struct ZetaConstants;

/// Squarefree flags for 1..limit, one bit per integer. Bit (b - 1) of the
/// packed word array is set iff b is squarefree. Immutable once built.
class SieveTable {
public:
    static constexpr std::size_t kDefaultMemoryBudget = std::size_t{1} << 30; // bytes

    static SieveTable build(std::uint64_t limit, std::size_t memory_budget = kDefaultMemoryBudget);

    /// Adopts an already packed bitset (used by the cache reader).
    static SieveTable from_words(std::uint64_t limit, std::vector<std::uint64_t> words);

    std::uint64_t limit() const { return limit_; }

    bool is_squarefree(std::uint64_t b) const
    {
        const std::uint64_t i = b - 1;
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    std::span<const std::uint64_t> words() const { return words_; }

    /// Number of squarefree integers in [1, limit].
    std::uint64_t count() const;

    friend bool operator==(const SieveTable&, const SieveTable&) = default;

private:
    std::uint64_t limit_ = 0;
    std::vector<std::uint64_t> words_;
};

/// n = a^2 b^3 with b squarefree.
struct SquarefullRep {
    std::uint64_t value;
    std::uint64_t a;
    std::uint64_t b;

    friend bool operator==(const SquarefullRep&, const SquarefullRep&) = default;
};

/// All squarefull n in [lo, hi], ascending. The b range is split into fixed
/// blocks that may be processed by up to `threads` workers; the result does
/// not depend on the thread count. Throws Error(capacity) when the result
/// would hold more than `max_results` entries.
inline constexpr std::uint64_t kEnumerateBudget = 50'000'000ull;
std::vector<SquarefullRep> enumerate_squarefull(std::uint64_t lo, std::uint64_t hi,
                                                const SieveTable& sieve, unsigned threads = 1,
                                                std::uint64_t max_results = kEnumerateBudget);

/// Q(x) = sum over squarefree b <= x^(1/3) of floor(sqrt(x / b^3)).
std::uint64_t count_squarefull(std::uint64_t x, const SieveTable& sieve);

/// #{squarefull m : x < m <= (sqrt(x) + H)^2}.
std::uint64_t short_interval_count(std::uint64_t x, const Rational& H, const SieveTable& sieve);

struct BGApprox {
    double x;
    double main;
    double second;
    double total;
};

/// The two-term Bateman-Grosswald approximation to Q(x).
BGApprox bateman_grosswald(double x, const ZetaConstants& zc);

/// Documented bound on |Q(x) - BG(x)| / x^(1/6) for x in {10^4, ..., 10^12}.
/// Observed maximum 0.2541, at x = 10^6.
inline constexpr double kBGErrorConstant = 0.3;

} // namespace sqfl
