#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polyreg/checked.hpp"
#include "polyreg/report.hpp"

namespace polyreg::cli {

enum class Command { search, exceptions, local, represent, inert_prime, eq34, bounds, verify_charsum, verify_paper };
const char* command_name(Command c);

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPartial = 3;

struct RunConfig {
    Command command = Command::bounds;
    i128 m = 0;
    std::vector<i128> coeffs;
    i128 c_max = 0;
    std::uint64_t n_max = 0;
    i128 n = 0;
    std::optional<std::uint64_t> prime;
    bool full_mode = false;
    std::size_t limit = 0;
    std::size_t depth = 10;
    i128 D = 0;
    std::uint64_t M = 0;
    std::uint64_t H = 0;
    std::uint64_t x = 0;
    std::vector<int> criteria;

    std::optional<report::Format> format; // per-command default when unset
    std::string out;                      // stdout when empty
    unsigned threads = 1;
    std::uint64_t memory_budget = std::uint64_t(1) << 30;
    std::uint64_t seed = 0;
};

struct ParseResult {
    std::optional<RunConfig> config;
    int exit_code = kExitOk; // meaningful when config is empty
    std::string message;     // help text or usage error
};

/// argv without the program name. `threads_env` is the THREADS variable,
/// used when --threads is absent.
ParseResult parse_args(const std::vector<std::string>& args, const char* threads_env = nullptr);

/// "1G", "512M", "64K" or a plain byte count.
std::uint64_t parse_bytes(const std::string& s);

/// Execute and write the report; returns the process exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

} // namespace polyreg::cli
