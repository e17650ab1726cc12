#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sqfl {

enum class ErrorKind {
    precondition,
    parse,
    capacity,
    budget,
    sieve_too_small,
    domain,
    pole,
    instability,
    hypothesis,
    checksum,
    version,
    io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const char* what)
{
    if (!cond)
        throw Error(kind, what);
}

} // namespace sqfl
