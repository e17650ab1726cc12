#include "sqfl/cache.hpp"

#include "sqfl/error.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

namespace sqfl {

namespace {

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v)
{
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_u64(const std::uint8_t* p)
{
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

} // namespace

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint8_t b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

void write_sieve_cache(const std::filesystem::path& path, const SieveTable& sieve)
{
    const std::uint64_t limit = sieve.limit();
    const std::size_t nbytes = (limit + 7) / 8;
    std::vector<std::uint8_t> payload;
    payload.reserve(nbytes);
    const auto words = sieve.words();
    for (std::size_t i = 0; i < nbytes; ++i)
        payload.push_back(static_cast<std::uint8_t>(words[i / 8] >> (8 * (i % 8))));

    std::vector<std::uint8_t> out(std::begin(kSieveMagic), std::end(kSieveMagic));
    put_u64(out, limit);
    out.insert(out.end(), payload.begin(), payload.end());
    put_u64(out, fnv1a64(payload));

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        fail(ErrorKind::io, "cannot open sieve cache for writing: " + path.string());
    f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!f)
        fail(ErrorKind::io, "failed writing sieve cache: " + path.string());
}

SieveTable read_sieve_cache(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        fail(ErrorKind::io, "cannot open sieve cache: " + path.string());
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());

    if (data.size() < 8 || std::memcmp(data.data(), kSieveMagic, 6) != 0)
        fail(ErrorKind::version, "not a sieve cache file: " + path.string());
    if (std::memcmp(data.data(), kSieveMagic, 8) != 0)
        fail(ErrorKind::version, "unsupported sieve cache version: " + path.string());
    if (data.size() < 16)
        fail(ErrorKind::checksum, "sieve cache truncated: " + path.string());

    const std::uint64_t limit = get_u64(data.data() + 8);
    const std::uint64_t nbytes = (limit + 7) / 8;
    if (limit == 0 || data.size() != 16 + nbytes + 8)
        fail(ErrorKind::checksum, "sieve cache size mismatch (truncated or corrupt): " + path.string());

    const std::span<const std::uint8_t> payload(data.data() + 16, nbytes);
    if (fnv1a64(payload) != get_u64(data.data() + 16 + nbytes))
        fail(ErrorKind::checksum, "sieve cache checksum mismatch: " + path.string());

    std::vector<std::uint64_t> words((limit + 63) / 64, 0);
    for (std::size_t i = 0; i < nbytes; ++i)
        words[i / 8] |= static_cast<std::uint64_t>(payload[i]) << (8 * (i % 8));
    return SieveTable::from_words(limit, std::move(words));
}

std::optional<std::filesystem::path> resolve_cache_path(const std::optional<std::filesystem::path>& explicit_path,
                                                        std::uint64_t limit)
{
    if (const char* dir = std::getenv("SQFL_CACHE_DIR"); dir != nullptr && *dir != '\0')
        return std::filesystem::path(dir) / ("sieve_" + std::to_string(limit) + ".bin");
    return explicit_path;
}

SieveTable load_or_build_sieve(std::uint64_t limit, const std::optional<std::filesystem::path>& cache_path)
{
    const auto path = resolve_cache_path(cache_path, limit);
    if (path && std::filesystem::exists(*path)) {
        SieveTable cached = read_sieve_cache(*path);
        if (cached.limit() == limit)
            return cached;
    }
    SieveTable built = SieveTable::build(limit);
    if (path)
        write_sieve_cache(*path, built);
    return built;
}

} // namespace sqfl
