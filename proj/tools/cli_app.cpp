#include "cli_app.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "energia/ce_search.hpp"
#include "energia/conjecture.hpp"
#include "energia/enumerate.hpp"
#include "energia/graph.hpp"
#include "energia/matching.hpp"
#include "energia/spectral.hpp"
#include "energia/wineglass.hpp"

namespace energia::cli {

namespace {

using nlohmann::ordered_json;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string iso8601_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_header(std::ostream& out, const RunConfig& cfg) {
    out << "# " << kToolName << ' ' << kVersion << " | config: " << canonical_config(cfg)
        << '\n';
    out << "# run: " << iso8601_now() << '\n';
}

// Stream that is either stdout or an owned file.
struct Sink {
    std::ostream* out;
    std::unique_ptr<std::ofstream> file;

    static Sink open(const std::string& path, std::ostream& fallback) {
        if (path.empty() || path == "-") return Sink{&fallback, nullptr};
        auto f = std::make_unique<std::ofstream>(path);
        if (!*f) throw std::runtime_error("cannot open output file: " + path);
        std::ostream* raw = f.get();
        return Sink{raw, std::move(f)};
    }
    std::ostream& stream() { return *out; }
};

ordered_json verdict_json(const ConjectureVerdict& v, const std::string& g6) {
    ordered_json j;
    j["n"] = v.n;
    j["g6"] = g6;
    j["connected"] = v.connected;
    if (v.connected) {
        j["energy"] = v.energy;
        j["mu"] = v.mu;
        j["delta"] = v.delta;
        j["score"] = v.score.value;
    } else {
        j["score"] = nullptr;  // tagged minus-infinity
    }
    j["raw_exceeds"] = v.raw_exceeds;
    j["is_conjecture_counterexample"] = v.is_conjecture_counterexample;
    return j;
}

std::string read_record_arg(const std::string& arg) {
    if (arg != "-") return arg;
    std::string line;
    while (std::getline(std::cin, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#' || line.rfind(">>", 0) == 0) continue;
        return line;
    }
    throw std::runtime_error("no graph6 record on stdin");
}

int cmd_check(const RunConfig& cfg) {
    Graph g = decode_graph6(read_record_arg(cfg.g6));
    ConjectureVerdict v = verdict(g, cfg.tol);
    ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kVersion;
    j["config"] = canonical_config(cfg);
    j.update(verdict_json(v, encode_graph6(g)));
    std::cout << j.dump() << '\n';
    return v.is_conjecture_counterexample ? 0 : 1;
}

ordered_json hit_json(const HitRecord& h) {
    ordered_json j;
    j["n"] = h.n;
    j["g6"] = h.g6;
    j["energy"] = h.energy;
    j["mu"] = h.mu;
    j["delta"] = h.delta;
    j["score"] = h.score;
    j["is_conjecture_counterexample"] = h.is_conjecture_counterexample;
    return j;
}

void write_summary_csv(std::ostream& out, const RunConfig& cfg, const ScanReport& report) {
    write_header(out, cfg);
    out << "n,total_scanned,raw_hits,conjecture_hits\n";
    for (const auto& [n, row] : report.rows)
        out << n << ',' << row.total_scanned << ',' << row.raw_hits << ','
            << row.conjecture_hits << '\n';
}

void write_hits_jsonl(std::ostream& out, const RunConfig& cfg, const ScanReport& report) {
    write_header(out, cfg);
    for (const auto& [n, row] : report.rows)
        for (const HitRecord& h : row.hits) out << hit_json(h).dump() << '\n';
}

int cmd_scan(const RunConfig& cfg) {
    ScanOptions opts;
    opts.delta_max = cfg.delta_max;
    opts.tol = cfg.tol;
    opts.jobs = cfg.jobs;
    opts.skip_malformed = cfg.on_error == "skip";

    std::ifstream file;
    std::istream* in = &std::cin;
    if (cfg.input != "-") {
        file.open(cfg.input);
        if (!file) throw std::runtime_error("cannot open input file: " + cfg.input);
        in = &file;
    }
    ScanReport report = scan_stream(*in, opts);

    for (const ScanIssue& issue : report.skipped)
        std::cerr << "skipped line " << issue.line_no << ": " << issue.message << '\n';

    if (!cfg.hits_path.empty()) {
        Sink sink = Sink::open(cfg.hits_path, std::cout);
        write_hits_jsonl(sink.stream(), cfg, report);
    }
    if (!cfg.summary_path.empty()) {
        Sink sink = Sink::open(cfg.summary_path, std::cout);
        write_summary_csv(sink.stream(), cfg, report);
    }
    if (cfg.format == "csv") {
        write_summary_csv(std::cout, cfg, report);
    } else {
        write_hits_jsonl(std::cout, cfg, report);
        // short human summary alongside the machine output
        for (const auto& [n, row] : report.rows)
            std::cerr << "n=" << n << ": scanned " << row.total_scanned << ", raw hits "
                      << row.raw_hits << ", counterexamples " << row.conjecture_hits << '\n';
    }
    return 0;
}

int cmd_generate(const RunConfig& cfg) {
    Sink sink = Sink::open(cfg.out_path, std::cout);
    for (const Graph& g : generate_connected_bounded(cfg.n, cfg.delta_max))
        sink.stream() << encode_graph6(g) << '\n';
    return 0;
}

int cmd_wineglass(const RunConfig& cfg) {
    wineglass::Kind kind = cfg.kind == "cycle" ? wineglass::Kind::cycle : wineglass::Kind::path;
    Sink sink = Sink::open(cfg.out_path, std::cout);
    if (cfg.emit == "graph6") {
        sink.stream() << encode_graph6(wineglass::build(kind, cfg.k)) << '\n';
        return 0;
    }
    if (cfg.emit == "ratio") {
        write_header(sink.stream(), cfg);
        sink.stream() << "kind,k,ratio\n";
        sink.stream() << cfg.kind << ',' << cfg.k << ','
                      << fmt_double(wineglass::energy_closed(kind, cfg.k) / (2.0 * cfg.k))
                      << '\n';
        return 0;
    }
    Graph g = wineglass::build(kind, cfg.k);  // needs 5k(+1) <= 62, i.e. k <= 12
    ConjectureVerdict v = verdict(g, cfg.tol);
    double closed = wineglass::energy_closed(kind, cfg.k);
    ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kVersion;
    j["config"] = canonical_config(cfg);
    j["kind"] = cfg.kind;
    j["k"] = cfg.k;
    j["g6"] = encode_graph6(g);
    j["vertices"] = g.vertex_count();
    j["edges"] = g.edge_count();
    j["max_degree"] = g.max_degree();
    j["matching_number"] = v.mu;
    j["energy_direct"] = v.energy;
    j["energy_closed"] = closed;
    j["closed_minus_direct"] = closed - v.energy;
    j["score"] = v.score.value;
    j["raw_exceeds"] = v.raw_exceeds;
    j["is_conjecture_counterexample"] = v.is_conjecture_counterexample;
    sink.stream() << j.dump() << '\n';
    return 0;
}

int cmd_limit(const RunConfig& cfg) {
    wineglass::RatioLimit lim = wineglass::ratio_limit(cfg.quad_tol);
    char digits[32];
    std::snprintf(digits, sizeof digits, "%.9f", lim.value);
    ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kVersion;
    j["config"] = canonical_config(cfg);
    j["value"] = lim.value;
    j["value_10_digits"] = digits;
    j["cosine_form"] = lim.cosine_form;
    j["difference"] = lim.value - lim.cosine_form;
    j["alpha_at_minus2"] = lim.alpha_at_minus2;
    j["alpha_at_plus2"] = lim.alpha_at_plus2;
    j["beta_at_plus2"] = lim.beta_at_plus2;
    j["quad_error_estimate"] = lim.quad_error_estimate;
    j["two_sqrt3"] = 2.0 * std::sqrt(3.0);
    Sink sink = Sink::open(cfg.out_path, std::cout);
    sink.stream() << j.dump() << '\n';
    return 0;
}

void write_trace_csv(std::ostream& out, const RunConfig& cfg, const ce::SearchTrace& trace) {
    write_header(out, cfg);
    out << "generation,elite_mean,best,best_g6\n";
    for (const auto& g : trace.generations) {
        out << g.generation << ',';
        if (g.any_finite)
            out << fmt_double(g.elite_mean) << ',' << fmt_double(g.best) << ',' << g.best_g6;
        else
            out << "-inf,-inf,";
        out << '\n';
    }
}

void write_best_jsonl(std::ostream& out, const RunConfig& cfg, const ce::SearchTrace& trace,
                      double tol) {
    write_header(out, cfg);
    ordered_json j;
    j["found_finite"] = trace.best_score.finite;
    if (trace.best_score.finite) {
        // re-verify the winner through the direct pipeline before reporting
        ConjectureVerdict v = verdict(decode_graph6(trace.best_g6), tol);
        j.update(verdict_json(v, trace.best_g6));
    }
    out << j.dump() << '\n';
}

int cmd_search(const RunConfig& cfg) {
    ce::SearchConfig sc;
    sc.n = cfg.n;
    sc.generations = cfg.generations;
    sc.population = cfg.population;
    sc.elite_frac = cfg.elite_frac;
    sc.smoothing = cfg.smoothing;
    sc.seed = cfg.seed;
    sc.delta_penalty = cfg.delta_penalty;
    sc.jobs = cfg.jobs;
    ce::SearchTrace trace = ce::run_search(sc);

    if (!cfg.trace_path.empty()) {
        Sink sink = Sink::open(cfg.trace_path, std::cout);
        write_trace_csv(sink.stream(), cfg, trace);
    }
    if (!cfg.best_path.empty()) {
        Sink sink = Sink::open(cfg.best_path, std::cout);
        write_best_jsonl(sink.stream(), cfg, trace, cfg.tol);
    }
    if (cfg.format == "jsonl")
        write_best_jsonl(std::cout, cfg, trace, cfg.tol);
    else
        write_trace_csv(std::cout, cfg, trace);
    return 0;
}

int cmd_counts(const RunConfig& cfg) {
    ScanOptions opts;
    opts.delta_max = cfg.delta_max;
    opts.tol = cfg.tol;
    opts.jobs = cfg.jobs;

    std::string dir = cfg.data_dir;
    if (dir.empty())
        if (const char* env = std::getenv("ENERGIA_DATA_DIR")) dir = env;
    SourceResolver resolver = [&](int n) -> std::optional<std::filesystem::path> {
        if (dir.empty()) return std::nullopt;
        std::filesystem::path p = std::filesystem::path(dir) /
                                  (cfg.delta_max == 3
                                       ? "subcubic" + std::to_string(n) + ".g6"
                                       : "maxdeg" + std::to_string(cfg.delta_max) + "_" +
                                             std::to_string(n) + ".g6");
        if (std::filesystem::exists(p)) return p;
        return std::nullopt;
    };
    std::vector<CountsRow> table = counts_table(cfg.from_n, cfg.to_n, opts, resolver);

    Sink sink = Sink::open(cfg.out_path, std::cout);
    write_header(sink.stream(), cfg);
    if (cfg.format == "jsonl") {
        for (const CountsRow& r : table) {
            ordered_json j;
            j["n"] = r.n;
            j["total_scanned"] = r.total_scanned;
            j["raw_hits"] = r.raw_hits;
            j["conjecture_hits"] = r.conjecture_hits;
            sink.stream() << j.dump() << '\n';
        }
    } else {
        sink.stream() << "n,total_scanned,raw_hits,conjecture_hits\n";
        for (const CountsRow& r : table)
            sink.stream() << r.n << ',' << r.total_scanned << ',' << r.raw_hits << ','
                          << r.conjecture_hits << '\n';
    }
    return 0;
}

std::unique_ptr<CLI::App> build_app(RunConfig& cfg) {
    auto app = std::make_unique<CLI::App>(
        "graph energy vs. matching-number bound: verification and counterexample search",
        std::string(kToolName));
    app->require_subcommand(1);

    CLI::App* check = app->add_subcommand("check", "score one graph6 record");
    check->add_option("g6", cfg.g6, "graph6 record, or - for stdin")->required();
    check->add_option("--tol", cfg.tol, "strict-exceedance threshold");

    CLI::App* scan = app->add_subcommand("scan", "scan a graph6 stream for counterexamples");
    scan->add_option("input", cfg.input, "graph6 file, or - for stdin")->required();
    scan->add_option("--delta-max", cfg.delta_max, "reject records with larger max degree");
    scan->add_option("--tol", cfg.tol, "strict-exceedance threshold");
    scan->add_option("--jobs", cfg.jobs, "worker threads");
    scan->add_option("--on-error", cfg.on_error, "abort|skip on malformed records")
        ->check(CLI::IsMember({"abort", "skip"}));
    scan->add_option("--format", cfg.format, "stdout payload: jsonl hits or csv summary")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    scan->add_option("--hits", cfg.hits_path, "also write hit records (JSONL) here");
    scan->add_option("--summary", cfg.summary_path, "also write the per-n summary (CSV) here");

    CLI::App* gen = app->add_subcommand("generate", "emit connected graphs with bounded degree");
    gen->add_option("n", cfg.n, "vertex count (<= 9)")->required();
    gen->add_option("--delta-max", cfg.delta_max, "maximum degree");
    gen->add_option("-o,--out", cfg.out_path, "output file (default stdout)");

    CLI::App* wg = app->add_subcommand("wineglass", "wine-glass family tools");
    wg->add_option("kind", cfg.kind, "path|cycle")->required()
        ->check(CLI::IsMember({"path", "cycle"}));
    wg->add_option("k", cfg.k, "number of glasses")->required();
    wg->add_option("--emit", cfg.emit, "graph6|metrics|ratio")
        ->check(CLI::IsMember({"graph6", "metrics", "ratio"}));
    wg->add_option("--tol", cfg.tol, "strict-exceedance threshold");
    wg->add_option("-o,--out", cfg.out_path, "output file (default stdout)");

    CLI::App* limit = app->add_subcommand("limit", "energy ratio limit of the families");
    limit->add_option("--quad-tol", cfg.quad_tol, "quadrature tolerance");
    limit->add_option("-o,--out", cfg.out_path, "output file (default stdout)");

    CLI::App* search = app->add_subcommand("search", "cross-entropy counterexample search");
    search->add_option("--n", cfg.n, "vertex count")->required();
    search->add_option("--generations", cfg.generations, "generations to run");
    search->add_option("--population", cfg.population, "samples per generation");
    search->add_option("--elite-frac", cfg.elite_frac, "elite fraction");
    search->add_option("--smoothing", cfg.smoothing, "weight of fresh elite frequencies");
    search->add_option("--seed", cfg.seed, "RNG seed");
    search->add_option("--delta-penalty", cfg.delta_penalty,
                       "score -inf when max degree exceeds this");
    search->add_option("--jobs", cfg.jobs, "worker threads");
    search->add_option("--tol", cfg.tol, "strict-exceedance threshold");
    search->add_option("--format", cfg.format, "stdout payload: csv trace or jsonl best")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    search->add_option("--trace", cfg.trace_path, "also write the generation trace (CSV) here");
    search->add_option("--best", cfg.best_path, "also write the final best (JSONL) here");

    CLI::App* counts = app->add_subcommand("counts", "per-n counterexample counts table");
    counts->add_option("--from", cfg.from_n, "first vertex count");
    counts->add_option("--to", cfg.to_n, "last vertex count");
    counts->add_option("--delta-max", cfg.delta_max, "maximum degree");
    counts->add_option("--tol", cfg.tol, "strict-exceedance threshold");
    counts->add_option("--jobs", cfg.jobs, "worker threads");
    counts->add_option("--data-dir", cfg.data_dir,
                       "directory with external graph6 files (default $ENERGIA_DATA_DIR)");
    counts->add_option("--format", cfg.format, "csv|jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    counts->add_option("-o,--out", cfg.out_path, "output file (default stdout)");

    return app;
}

void apply_format_default(RunConfig& cfg) {
    if (!cfg.format.empty()) return;
    if (cfg.subcommand == "scan") cfg.format = "jsonl";
    if (cfg.subcommand == "search" || cfg.subcommand == "counts") cfg.format = "csv";
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
    RunConfig cfg;
    auto app = build_app(cfg);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app->parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) throw;  // help/version requested
        throw std::invalid_argument(e.what());
    }
    cfg.subcommand = app->get_subcommands().front()->get_name();
    apply_format_default(cfg);
    return cfg;
}

std::string canonical_config(const RunConfig& cfg) {
    std::ostringstream s;
    s << kToolName << ' ' << cfg.subcommand;
    if (cfg.subcommand == "check") {
        s << ' ' << cfg.g6 << " --tol " << fmt_double(cfg.tol);
    } else if (cfg.subcommand == "scan") {
        s << ' ' << cfg.input << " --delta-max " << cfg.delta_max << " --tol "
          << fmt_double(cfg.tol) << " --jobs " << cfg.jobs << " --on-error " << cfg.on_error
          << " --format " << cfg.format;
        if (!cfg.hits_path.empty()) s << " --hits " << cfg.hits_path;
        if (!cfg.summary_path.empty()) s << " --summary " << cfg.summary_path;
    } else if (cfg.subcommand == "generate") {
        s << ' ' << cfg.n << " --delta-max " << cfg.delta_max;
        if (!cfg.out_path.empty()) s << " --out " << cfg.out_path;
    } else if (cfg.subcommand == "wineglass") {
        s << ' ' << cfg.kind << ' ' << cfg.k << " --emit " << cfg.emit << " --tol "
          << fmt_double(cfg.tol);
        if (!cfg.out_path.empty()) s << " --out " << cfg.out_path;
    } else if (cfg.subcommand == "limit") {
        s << " --quad-tol " << fmt_double(cfg.quad_tol);
        if (!cfg.out_path.empty()) s << " --out " << cfg.out_path;
    } else if (cfg.subcommand == "search") {
        s << " --n " << cfg.n << " --generations " << cfg.generations << " --population "
          << cfg.population << " --elite-frac " << fmt_double(cfg.elite_frac)
          << " --smoothing " << fmt_double(cfg.smoothing) << " --seed " << cfg.seed;
        if (cfg.delta_penalty) s << " --delta-penalty " << *cfg.delta_penalty;
        s << " --jobs " << cfg.jobs << " --tol " << fmt_double(cfg.tol) << " --format "
          << cfg.format;
        if (!cfg.trace_path.empty()) s << " --trace " << cfg.trace_path;
        if (!cfg.best_path.empty()) s << " --best " << cfg.best_path;
    } else if (cfg.subcommand == "counts") {
        s << " --from " << cfg.from_n << " --to " << cfg.to_n << " --delta-max "
          << cfg.delta_max << " --tol " << fmt_double(cfg.tol) << " --jobs " << cfg.jobs
          << " --format " << cfg.format;
        if (!cfg.data_dir.empty()) s << " --data-dir " << cfg.data_dir;
        if (!cfg.out_path.empty()) s << " --out " << cfg.out_path;
    }
    return s.str();
}

int run(const std::vector<std::string>& args) {
    RunConfig cfg;
    try {
        cfg = parse_args(args);
    } catch (const CLI::ParseError& e) {
        // Help or version text.  Re-run the parse on a fresh app first so it
        // records which subcommand was selected; App::help() delegates to the
        // parsed subcommand, which is how `energia scan --help` prints scan's
        // options instead of the global page.
        RunConfig tmp;
        auto app = build_app(tmp);
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        try {
            app->parse(reversed);
        } catch (const CLI::ParseError&) {
        }
        return app->exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    try {
        if (cfg.subcommand == "check") return cmd_check(cfg);
        if (cfg.subcommand == "scan") return cmd_scan(cfg);
        if (cfg.subcommand == "generate") return cmd_generate(cfg);
        if (cfg.subcommand == "wineglass") return cmd_wineglass(cfg);
        if (cfg.subcommand == "limit") return cmd_limit(cfg);
        if (cfg.subcommand == "search") return cmd_search(cfg);
        if (cfg.subcommand == "counts") return cmd_counts(cfg);
        std::cerr << "error: unknown subcommand\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args);
}

}  // namespace energia::cli
