#include "sqfl/int_math.hpp"

#include "sqfl/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <numeric>

namespace sqfl {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::parse: return "parse";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::budget: return "budget";
    case ErrorKind::sieve_too_small: return "sieve_too_small";
    case ErrorKind::domain: return "domain";
    case ErrorKind::pole: return "pole";
    case ErrorKind::instability: return "instability";
    case ErrorKind::hypothesis: return "hypothesis";
    case ErrorKind::checksum: return "checksum";
    case ErrorKind::version: return "version";
    case ErrorKind::io: return "io";
    }
    return "unknown";
}

std::uint64_t isqrt(u128 n)
{
    if (n == 0)
        return 0;
    // long double gives ~64 bits; Newton steps clean up the rest.
    long double guess = std::sqrt(static_cast<long double>(n));
    u128 r = guess >= 1.8446744073709551615e19L ? ~std::uint64_t{0}
                                                 : static_cast<u128>(guess);
    if (r == 0)
        r = 1;
    for (int i = 0; i < 4; ++i) {
        u128 next = (r + n / r) / 2;
        if (next == r)
            break;
        r = next;
    }
    while (r > 0 && r * r > n)
        --r;
    while ((r + 1) <= ~std::uint64_t{0} && (r + 1) * (r + 1) <= n)
        ++r;
    return static_cast<std::uint64_t>(r);
}

std::uint64_t isqrt_ceil(u128 n)
{
    std::uint64_t r = isqrt(n);
    return static_cast<u128>(r) * r == n ? r : r + 1;
}

std::uint64_t icbrt(std::uint64_t n)
{
    if (n == 0)
        return 0;
    std::uint64_t r = static_cast<std::uint64_t>(std::cbrt(static_cast<long double>(n)));
    auto cube = [](std::uint64_t v) { return static_cast<u128>(v) * v * v; };
    while (r > 0 && cube(r) > n)
        --r;
    while (cube(r + 1) <= n)
        ++r;
    return r;
}

namespace {

struct Decimal {
    boost::multiprecision::cpp_int mantissa;
    long exponent = 0; // value = mantissa * 10^exponent
};

Decimal parse_decimal(std::string_view text)
{
    Decimal d;
    std::size_t i = 0;
    bool any_digit = false;
    bool seen_point = false;
    while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.')) {
        if (text[i] == '.') {
            if (seen_point)
                fail(ErrorKind::parse, "malformed number: " + std::string(text));
            seen_point = true;
        } else {
            d.mantissa = d.mantissa * 10 + (text[i] - '0');
            if (seen_point)
                --d.exponent;
            any_digit = true;
        }
        ++i;
    }
    if (!any_digit)
        fail(ErrorKind::parse, "malformed number: " + std::string(text));
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool neg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            neg = text[i] == '-';
            ++i;
        }
        long e = 0;
        bool exp_digit = false;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            e = e * 10 + (text[i] - '0');
            if (e > 40)
                fail(ErrorKind::parse, "exponent out of range: " + std::string(text));
            exp_digit = true;
            ++i;
        }
        if (!exp_digit)
            fail(ErrorKind::parse, "malformed exponent: " + std::string(text));
        d.exponent += neg ? -e : e;
    }
    if (i != text.size())
        fail(ErrorKind::parse, "trailing characters in number: " + std::string(text));
    return d;
}

boost::multiprecision::cpp_int pow10(long e)
{
    boost::multiprecision::cpp_int r = 1;
    for (long i = 0; i < e; ++i)
        r *= 10;
    return r;
}

} // namespace

std::uint64_t parse_integer(std::string_view text)
{
    Decimal d = parse_decimal(text);
    boost::multiprecision::cpp_int v = d.mantissa;
    if (d.exponent >= 0) {
        v *= pow10(d.exponent);
    } else {
        boost::multiprecision::cpp_int div = pow10(-d.exponent);
        if (v % div != 0)
            fail(ErrorKind::parse, "not an integer: " + std::string(text));
        v /= div;
    }
    if (v > boost::multiprecision::cpp_int(std::numeric_limits<std::int64_t>::max()))
        fail(ErrorKind::parse, "integer too large: " + std::string(text));
    return static_cast<std::uint64_t>(v);
}

Rational::Rational(std::int64_t num, std::int64_t den)
{
    require(den > 0 && num >= 0, ErrorKind::precondition, "rational must be non-negative with positive denominator");
    std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
    require(kMaxDenominator % den_ == 0, ErrorKind::precondition, "rational denominator must divide 10^6");
}

Rational Rational::parse(std::string_view text)
{
    Decimal d = parse_decimal(text);
    boost::multiprecision::cpp_int scaled = d.mantissa;
    long shift = d.exponent + 6;
    if (shift >= 0) {
        scaled *= pow10(shift);
    } else {
        boost::multiprecision::cpp_int div = pow10(-shift);
        if (scaled % div != 0)
            fail(ErrorKind::parse, "more than six fractional digits: " + std::string(text));
        scaled /= div;
    }
    if (scaled > boost::multiprecision::cpp_int(std::numeric_limits<std::int64_t>::max()))
        fail(ErrorKind::parse, "value too large: " + std::string(text));
    return Rational(static_cast<std::int64_t>(scaled), kMaxDenominator);
}

Rational Rational::from_double(double v)
{
    require(std::isfinite(v) && v >= 0, ErrorKind::precondition, "rational from non-finite or negative value");
    return Rational(static_cast<std::int64_t>(std::llround(v * 1e6)), kMaxDenominator);
}

std::string Rational::str() const
{
    std::int64_t scaled = num_ * (kMaxDenominator / den_);
    std::string s = std::to_string(scaled / kMaxDenominator);
    std::int64_t frac = scaled % kMaxDenominator;
    if (frac != 0) {
        std::string f = std::to_string(frac);
        f.insert(0, 6 - f.size(), '0');
        while (f.back() == '0')
            f.pop_back();
        s += "." + f;
    }
    return s;
}

std::uint64_t interval_upper(std::uint64_t x, const Rational& H)
{
    using boost::multiprecision::cpp_int;
    // (sqrt(x) + p/q)^2 = x + (2 p q sqrt(x) + p^2) / q^2, and
    // floor(2 p q sqrt(x)) = isqrt(4 p^2 q^2 x).
    cpp_int p = H.num();
    cpp_int q = H.den();
    cpp_int radicand = 4 * p * p * q * q * cpp_int(x);
    cpp_int root = boost::multiprecision::sqrt(radicand);
    cpp_int extra = (root + p * p) / (q * q);
    cpp_int upper = cpp_int(x) + extra;
    if (upper > cpp_int(std::numeric_limits<std::int64_t>::max()))
        fail(ErrorKind::capacity, "short interval exceeds 63-bit range");
    return static_cast<std::uint64_t>(upper);
}

} // namespace sqfl
