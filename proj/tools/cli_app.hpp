#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace energia::cli {

inline constexpr const char* kToolName = "energia";
inline constexpr const char* kVersion = "1.0.0";

// One flat config covering every subcommand; `subcommand` selects which
// fields are meaningful.  parse_args fills it, canonical_config renders it
// back to the normalized flag string embedded in every report header, and
// the two round-trip.
struct RunConfig {
    std::string subcommand;

    // check
    std::string g6;
    // scan
    std::string input;
    std::string on_error = "abort";
    std::string hits_path;
    std::string summary_path;
    // generate
    int n = 0;
    // wineglass
    std::string kind = "path";
    int k = 1;
    std::string emit = "metrics";
    // limit
    double quad_tol = 1e-11;
    // search
    int generations = 200;
    int population = 1000;
    double elite_frac = 0.1;
    double smoothing = 0.7;
    std::uint64_t seed = 1;
    std::optional<int> delta_penalty;
    std::string trace_path;
    std::string best_path;
    // counts
    int from_n = 6;
    int to_n = 9;
    std::string data_dir;

    // shared
    int delta_max = 3;
    double tol = 1e-7;
    int jobs = 1;
    std::string format;  // per-subcommand default applied in parse
    std::string out_path;
};

// Throws std::invalid_argument on usage errors (the caller maps that to
// exit code 2).  args excludes argv[0].
RunConfig parse_args(const std::vector<std::string>& args);

std::string canonical_config(const RunConfig& cfg);

// Full command-line entry point: parse, dispatch, map errors to exit codes
// (0 success / counterexample found, 1 clean negative from `check`,
// 2 usage or I/O errors).
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace energia::cli
