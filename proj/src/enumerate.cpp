#include "energia/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <future>
#include <set>
#include <sstream>
#include <utility>

namespace energia {

std::uint64_t ScanReport::total_scanned() const {
    std::uint64_t s = 0;
    for (const auto& [n, row] : rows) s += row.total_scanned;
    return s;
}

std::uint64_t ScanReport::raw_hits() const {
    std::uint64_t s = 0;
    for (const auto& [n, row] : rows) s += row.raw_hits;
    return s;
}

std::uint64_t ScanReport::conjecture_hits() const {
    std::uint64_t s = 0;
    for (const auto& [n, row] : rows) s += row.conjecture_hits;
    return s;
}

namespace {

struct NumberedLine {
    std::size_t line_no;
    std::string text;
};

struct SlicePartial {
    std::map<int, ScanRow> rows;
    std::vector<ScanIssue> issues;  // all decode/degree failures in the slice
};

bool is_skippable(const std::string& line) {
    return line.empty() || line[0] == '#' || line.rfind(">>", 0) == 0;
}

SlicePartial process_slice(const std::vector<NumberedLine>& lines, std::size_t begin,
                           std::size_t end, const ScanOptions& opts) {
    SlicePartial part;
    for (std::size_t i = begin; i < end; ++i) {
        const auto& [line_no, text] = lines[i];
        try {
            Graph g = decode_graph6(text);
            if (g.max_degree() > opts.delta_max)
                throw std::invalid_argument("max degree " + std::to_string(g.max_degree()) +
                                            " exceeds delta-max " +
                                            std::to_string(opts.delta_max));
            ConjectureVerdict v = verdict(g, opts.tol);
            ScanRow& row = part.rows[v.n];
            row.n = v.n;
            ++row.total_scanned;
            if (v.raw_exceeds) {
                ++row.raw_hits;
                if (v.is_conjecture_counterexample) ++row.conjecture_hits;
                row.hits.push_back(HitRecord{v.n, text, v.energy, v.mu, v.delta,
                                             v.score.value, v.is_conjecture_counterexample});
            }
        } catch (const std::exception& e) {
            part.issues.push_back(ScanIssue{line_no, e.what()});
        }
    }
    return part;
}

void merge_rows(std::map<int, ScanRow>& into, std::map<int, ScanRow>& from) {
    for (auto& [n, row] : from) {
        ScanRow& dst = into[n];
        dst.n = n;
        dst.total_scanned += row.total_scanned;
        dst.raw_hits += row.raw_hits;
        dst.conjecture_hits += row.conjecture_hits;
        dst.hits.insert(dst.hits.end(), std::make_move_iterator(row.hits.begin()),
                        std::make_move_iterator(row.hits.end()));
    }
}

}  // namespace

ScanReport scan_stream(std::istream& in, const ScanOptions& opts) {
    if (opts.jobs < 1) throw std::invalid_argument("scan_stream: jobs must be >= 1");
    if (opts.delta_max < 0) throw std::invalid_argument("scan_stream: delta_max must be >= 0");
    ScanReport report;
    std::vector<NumberedLine> batch;
    std::string line;
    std::size_t line_no = 0;
    bool done = false;
    while (!done) {
        batch.clear();
        while (batch.size() < opts.batch_lines) {
            if (!std::getline(in, line)) {
                done = true;
                break;
            }
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (is_skippable(line)) continue;
            batch.push_back(NumberedLine{line_no, line});
        }
        if (batch.empty()) continue;

        std::size_t jobs = std::min<std::size_t>(opts.jobs, batch.size());
        std::vector<SlicePartial> parts(jobs);
        if (jobs == 1) {
            parts[0] = process_slice(batch, 0, batch.size(), opts);
        } else {
            std::vector<std::future<SlicePartial>> futures;
            std::size_t chunk = (batch.size() + jobs - 1) / jobs;
            for (std::size_t j = 0; j < jobs; ++j) {
                std::size_t lo = j * chunk, hi = std::min(batch.size(), lo + chunk);
                futures.push_back(std::async(std::launch::async, process_slice,
                                             std::cref(batch), lo, hi, std::cref(opts)));
            }
            for (std::size_t j = 0; j < jobs; ++j) parts[j] = futures[j].get();
        }
        // merge in slice order so the outcome is independent of scheduling
        for (auto& part : parts) {
            if (!part.issues.empty() && !opts.skip_malformed) {
                auto worst = std::min_element(
                    part.issues.begin(), part.issues.end(),
                    [](const ScanIssue& a, const ScanIssue& b) { return a.line_no < b.line_no; });
                throw ScanError(worst->line_no, worst->message);
            }
            merge_rows(report.rows, part.rows);
            report.skipped.insert(report.skipped.end(), part.issues.begin(),
                                  part.issues.end());
        }
    }
    for (auto& [n, row] : report.rows)
        std::sort(row.hits.begin(), row.hits.end(),
                  [](const HitRecord& a, const HitRecord& b) { return a.g6 < b.g6; });
    return report;
}

std::vector<Graph> generate_connected_bounded(int n, int delta_max) {
    if (n < 1 || n > kGenerateVertexCap)
        throw std::invalid_argument("generate_connected_bounded: n must be in [1, " +
                                    std::to_string(kGenerateVertexCap) + "]");
    if (delta_max < 1 || delta_max >= kMaxVertices)
        throw std::invalid_argument("generate_connected_bounded: delta_max must be at least 1");

    // Every connected graph on m+1 vertices is some connected graph on m
    // vertices plus one vertex attached to a nonempty neighbor set (remove a
    // non-cut vertex to see this), so growing level by level with canonical
    // dedup reaches every class exactly once.
    std::vector<Graph> reps = {Graph(1)};
    for (int m = 2; m <= n; ++m) {
        std::set<std::string> seen;
        for (const Graph& g : reps) {
            int prev = g.vertex_count();
            std::uint64_t eligible = 0;
            for (int v = 0; v < prev; ++v)
                if (g.degree(v) < delta_max) eligible |= std::uint64_t{1} << v;
            for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << prev); ++mask) {
                if ((mask & ~eligible) != 0) continue;
                if (std::popcount(mask) > delta_max) continue;
                seen.insert(canonical_code(g.with_added_vertex(mask)).bytes);
            }
        }
        reps.clear();
        reps.reserve(seen.size());
        for (const std::string& code : seen) reps.push_back(decode_graph6(code));
        if (reps.empty()) break;  // delta_max too small to grow further
    }
    if (static_cast<int>(reps.empty() ? 0 : reps.front().vertex_count()) != n) return {};
    return reps;
}

std::vector<CountsRow> counts_table(int n_lo, int n_hi, const ScanOptions& opts,
                                    const SourceResolver& resolver) {
    if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("counts_table: bad range");
    std::vector<CountsRow> table;
    for (int n = n_lo; n <= n_hi; ++n) {
        ScanReport report;
        if (auto path = resolver(n)) {
            std::ifstream in(*path);
            if (!in) throw std::runtime_error("counts_table: cannot open " + path->string());
            report = scan_stream(in, opts);
            for (const auto& [rn, row] : report.rows)
                if (rn != n)
                    throw std::runtime_error("counts_table: " + path->string() +
                                             " contains records with n=" + std::to_string(rn));
        } else if (n <= kGenerateVertexCap) {
            std::ostringstream g6;
            for (const Graph& g : generate_connected_bounded(n, opts.delta_max))
                g6 << encode_graph6(g) << '\n';
            std::istringstream in(g6.str());
            report = scan_stream(in, opts);
        } else {
            throw std::runtime_error("counts_table: no external file for n=" +
                                     std::to_string(n) + " and the built-in generator caps at " +
                                     std::to_string(kGenerateVertexCap));
        }
        if (auto it = report.rows.find(n); it != report.rows.end())
            table.push_back(CountsRow{n, it->second.total_scanned, it->second.raw_hits,
                                      it->second.conjecture_hits});
        else
            table.push_back(CountsRow{n, 0, 0, 0});
    }
    return table;
}

}  // namespace energia
