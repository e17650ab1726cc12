#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sqfl::cli {

enum class Command { count, enumerate, variance, exceptional, diagonal, constant, weights, lemmas, sweep };
enum class Format { csv, json };

struct RunConfig {
    Command command = Command::count;
    std::string x = "1e6"; ///< X (or x), decimal string
    std::string h = "10";  ///< H, decimal string
    std::optional<std::string> lo;
    std::optional<std::string> hi;
    double lambda = 0.067;
    std::optional<double> eps0; ///< defaults to H^-0.1005
    double tol = 1e-8;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::optional<double> threshold; ///< defaults to H^0.8995
    std::vector<std::string> h_grid;
    int k = 10;
    std::optional<double> L; ///< defaults to X / (4k)
    std::string sign = "minus";
    std::optional<std::uint64_t> A;
    bool with_variance = false;
    bool saturated = false; ///< diagonal: b_max -> infinity
    std::optional<std::filesystem::path> cache_path;
    std::optional<std::filesystem::path> out_path;
    std::optional<std::filesystem::path> plot_path;
    Format format = Format::json;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitOther = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitPrecondition = 3;
inline constexpr int kExitBudget = 4;

/// Parses argv. Returns the exit code to use immediately when parsing
/// finished the run (e.g. --help, or a parse error already reported to err).
struct ParseOutcome {
    std::optional<RunConfig> config;
    int exit_code = kExitOk;
};
ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Dispatches the command, writes the report to out_path (or `out`), and
/// on failure prints a one-line JSON error record to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

std::string to_string(Command c);

} // namespace sqfl::cli
