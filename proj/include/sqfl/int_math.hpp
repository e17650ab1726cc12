#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace sqfl {

using u128 = unsigned __int128;

/// floor(sqrt(n)), exact for all 128-bit inputs.
std::uint64_t isqrt(u128 n);

/// floor(cbrt(n)), exact.
std::uint64_t icbrt(std::uint64_t n);

/// ceil(sqrt(n)).
std::uint64_t isqrt_ceil(u128 n);

inline std::uint64_t ceil_div(std::uint64_t x, std::uint64_t y)
{
    return x / y + (x % y != 0);
}

/// Parses "1000000", "1e6", "2.5e3" into an exact non-negative integer.
/// Throws Error(parse) when the value is not an integer or overflows 63 bits.
std::uint64_t parse_integer(std::string_view text);

/// A non-negative rational with denominator dividing 10^6, kept in lowest terms.
class Rational {
public:
    static constexpr std::int64_t kMaxDenominator = 1000000;

    Rational() = default;
    Rational(std::int64_t num, std::int64_t den);

    /// Exact decimal conversion ("10", "31.622777", "1.5e1"). At most six
    /// fractional digits survive after the exponent is applied.
    static Rational parse(std::string_view text);

    /// Rounds to the nearest multiple of 10^-6.
    static Rational from_double(double v);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    long double value() const { return static_cast<long double>(num_) / den_; }
    double to_double() const { return static_cast<double>(value()); }

    /// Decimal rendering with no exponent, e.g. "31.622777".
    std::string str() const;

    friend bool operator==(const Rational&, const Rational&) = default;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// floor((sqrt(x) + H)^2) computed without rounding. This is the largest
/// integer m that lies in the short interval (x, x + y], y = 2 sqrt(x) H + H^2.
std::uint64_t interval_upper(std::uint64_t x, const Rational& H);

} // namespace sqfl
