#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lambertheta/verify.hpp"

namespace lambertheta::cli {

enum class Command { Eval, Verify, Sweep, Classical };
enum class OutputFormat { Text, Json, Csv };
enum class Side { Lhs, Rhs, Both };

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSkipped = 3;
inline constexpr int kExitIo = 4;

/// Bad flags, missing parameters, unknown spec names (exit 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable input or unwritable output (exit 4).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// `--help` was given; usage has already been printed.
class HelpRequested : public std::exception {};

struct RunConfig {
    Command command = Command::Eval;
    Family family = Family::Lambert;
    /// Resolved pairs; verify/eval use the first, sweep all of them.
    std::vector<SeriesPair> pairs;
    /// Second Rogers factor (defaults to the first pair).
    std::optional<SeriesPair> pair_b;
    /// Fully specified parameters (eval, verify, sweep grid base).
    std::optional<SeriesParams> params;
    std::vector<std::pair<std::string, std::vector<Scalar>>> grid;
    std::size_t count = 50;
    std::uint64_t seed = 0;
    CheckOptions check{};
    Side side = Side::Both;
    OutputFormat format = OutputFormat::Text;
    std::optional<std::string> output;
    bool serial = false;
    std::vector<Scalar> q_values;
    std::vector<int> classical_ids;
};

/// Throws UsageError, IoError for unreadable table files, and HelpRequested
/// after printing usage to `out`.
RunConfig parse_args(int argc, const char* const* argv, std::ostream& out);

/// Executes the command and writes the whole report at once. Returns the exit
/// code; IO failures on the output path return 4.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_args + run with exit-code mapping for errors.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lambertheta::cli
