#pragma once

#include "sqfl/sieve.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>

namespace sqfl {

// On-disk sieve layout, all integers little-endian:
//   8 bytes  magic "SQFLSV01"
//   8 bytes  limit B
//   ceil(B/8) bytes packed bitset, bit (b-1) set iff b squarefree
//   8 bytes  FNV-1a 64 over the packed bitset
inline constexpr char kSieveMagic[8] = {'S', 'Q', 'F', 'L', 'S', 'V', '0', '1'};

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);

void write_sieve_cache(const std::filesystem::path& path, const SieveTable& sieve);

/// Throws Error(version) for a foreign version tag, Error(checksum) for a
/// truncated or corrupted payload, Error(io) when the file cannot be opened.
SieveTable read_sieve_cache(const std::filesystem::path& path);

/// SQFL_CACHE_DIR/sieve_<limit>.bin when the variable is set, else
/// `explicit_path` (which may be empty).
std::optional<std::filesystem::path> resolve_cache_path(const std::optional<std::filesystem::path>& explicit_path,
                                                        std::uint64_t limit);

/// Reads the cached sieve if it exists with the right limit, otherwise
/// builds it and writes the cache.
SieveTable load_or_build_sieve(std::uint64_t limit, const std::optional<std::filesystem::path>& cache_path);

} // namespace sqfl
