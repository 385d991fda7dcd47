#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

/// The acceptance battery: eleven numbered criteria, each with pinned
/// tolerances and a wall-clock limit. Shared by the acceptance test binary
/// and the `verify-paper` command.
namespace polyreg::acceptance {

inline constexpr int kCount = 11;

struct Options {
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct Result {
    int id = 0;
    std::string name;
    bool pass = false;     // mathematical check and time limit
    bool math_ok = false;  // mathematical check alone
    std::string detail;
    double seconds = 0;
    double limit_seconds = 0;
};

Result run(int id, const Options& opts = {});

/// Runs the given ids in order (all when empty); `on_result` sees each
/// result as soon as it is available.
std::vector<Result> run_all(const std::vector<int>& ids, const Options& opts,
                            const std::function<void(const Result&)>& on_result = {});

/// "PASS  3  name  (1.23 s / 60 s)  detail"
std::string line(const Result& r);

} // namespace polyreg::acceptance
