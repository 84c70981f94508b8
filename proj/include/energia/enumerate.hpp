#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "energia/conjecture.hpp"
#include "energia/graph.hpp"

namespace energia {

struct HitRecord {
    int n = 0;
    std::string g6;
    double energy = 0.0;
    int mu = 0;
    int delta = 0;
    double score = 0.0;
    bool is_conjecture_counterexample = false;
};

// Per-vertex-count aggregate of one scan.
struct ScanRow {
    int n = 0;
    std::uint64_t total_scanned = 0;
    std::uint64_t raw_hits = 0;
    std::uint64_t conjecture_hits = 0;
    std::vector<HitRecord> hits;  // all raw hits, sorted by graph6 string
};

struct ScanIssue {
    std::size_t line_no = 0;
    std::string message;
};

class ScanError : public std::runtime_error {
public:
    ScanError(std::size_t line_no, const std::string& message)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + message),
          line_no_(line_no) {}
    std::size_t line_no() const { return line_no_; }

private:
    std::size_t line_no_;
};

struct ScanOptions {
    int delta_max = 3;
    double tol = kDefaultScoreTol;
    int jobs = 1;
    bool skip_malformed = false;  // default: abort on the first bad record
    std::size_t batch_lines = 8192;
};

struct ScanReport {
    std::map<int, ScanRow> rows;
    std::vector<ScanIssue> skipped;  // populated only in skip mode

    std::uint64_t total_scanned() const;
    std::uint64_t raw_hits() const;
    std::uint64_t conjecture_hits() const;
};

// Scan a graph6 stream (one record per line; ">>graph6<<" headers, blank
// lines and '#' comments are ignored).  Records that fail to decode or
// whose maximum degree exceeds delta_max either abort the scan with a
// ScanError or are recorded in `skipped`, per options.  Results are
// independent of the number of jobs.
ScanReport scan_stream(std::istream& in, const ScanOptions& opts = {});

// One canonical representative per isomorphism class of connected graphs
// on n vertices with maximum degree <= delta_max.  Grown one vertex at a
// time with degree pruning and canonical-code dedup; capped at n <= 9,
// beyond which external generators are the right tool.
inline constexpr int kGenerateVertexCap = 9;
std::vector<Graph> generate_connected_bounded(int n, int delta_max);

struct CountsRow {
    int n = 0;
    std::uint64_t total_scanned = 0;
    std::uint64_t raw_hits = 0;
    std::uint64_t conjecture_hits = 0;
};

// Maps a vertex count to an external graph6 file, or nullopt to use the
// built-in generator (possible only for n <= kGenerateVertexCap).
using SourceResolver = std::function<std::optional<std::filesystem::path>(int)>;

std::vector<CountsRow> counts_table(int n_lo, int n_hi, const ScanOptions& opts,
                                    const SourceResolver& resolver);

}  // namespace energia
