// End-to-end checks that spawn the actual CLI binary.  The path to the
// binary arrives via the ENERGIA_CLI environment variable (set by ctest).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

using nlohmann::json;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string cli_path() {
    const char* env = std::getenv("ENERGIA_CLI");
    REQUIRE_MESSAGE(env != nullptr, "ENERGIA_CLI must point at the built binary");
    return env;
}

// Run a /bin/sh command line, capturing stdout (stderr goes to /dev/null
// unless the caller redirects it inside the command).
RunResult run_shell(const std::string& cmd) {
    RunResult result;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

// Drop the comment header (config + timestamp) so reruns compare equal.
std::string strip_comments(const std::string& text) {
    std::string out;
    for (const std::string& line : lines_of(text))
        if (line.empty() || line[0] != '#') out += line + '\n';
    return out;
}

}  // namespace

TEST_CASE("check: excluded triangle exits 1 with a full verdict") {
    RunResult r = run_shell("'" + cli_path() + "' check Bw");
    CHECK(r.exit_code == 1);
    json verdict = json::parse(r.out);
    CHECK(verdict["n"] == 3);
    CHECK(verdict["raw_exceeds"] == true);
    CHECK(verdict["is_conjecture_counterexample"] == false);
    CHECK(verdict["mu"] == 1);
    CHECK(verdict["delta"] == 2);
    CHECK(verdict["tool"] == "energia");
}

TEST_CASE("check: single vertex exits 1") {
    RunResult r = run_shell("'" + cli_path() + "' check @");
    CHECK(r.exit_code == 1);
    CHECK(json::parse(r.out)["is_conjecture_counterexample"] == false);
}

TEST_CASE("check: a glass-family member exits 0") {
    // fetch the graph from the wineglass subcommand rather than hardcoding
    RunResult g6 = run_shell("'" + cli_path() + "' wineglass path 1 --emit graph6 | grep -v '^#'");
    REQUIRE(g6.exit_code == 0);
    std::string record = lines_of(g6.out).at(0);
    RunResult r = run_shell("'" + cli_path() + "' check '" + record + "'");
    CHECK(r.exit_code == 0);
    json verdict = json::parse(r.out);
    CHECK(verdict["is_conjecture_counterexample"] == true);
    CHECK(verdict["n"] == 6);
}

TEST_CASE("check: malformed record exits 2") {
    CHECK(run_shell("'" + cli_path() + "' check '~zz'").exit_code == 2);
    CHECK(run_shell("'" + cli_path() + "' not-a-subcommand").exit_code == 2);
}

TEST_CASE("subcommand --help prints that subcommand's page, not the global one") {
    RunResult r = run_shell("'" + cli_path() + "' scan --help");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("Usage: energia scan") != std::string::npos);
    CHECK(r.out.find("--on-error") != std::string::npos);
    RunResult top = run_shell("'" + cli_path() + "' --help");
    CHECK(top.exit_code == 0);
    CHECK(top.out.find("Usage: energia [OPTIONS] SUBCOMMAND") != std::string::npos);
}

TEST_CASE("check reads a record from stdin when given a dash") {
    RunResult r = run_shell("printf 'Bw\\n' | '" + cli_path() + "' check -");
    CHECK(r.exit_code == 1);
    CHECK(json::parse(r.out)["n"] == 3);
}

TEST_CASE("generate piped into scan finds the one six-vertex hit") {
    std::string cli = "'" + cli_path() + "'";
    RunResult r = run_shell(cli + " generate 6 | " + cli + " scan -");
    CHECK(r.exit_code == 0);
    std::vector<std::string> payload = lines_of(strip_comments(r.out));
    REQUIRE(payload.size() == 1);
    json hit = json::parse(payload[0]);
    CHECK(hit["n"] == 6);
    CHECK(hit["is_conjecture_counterexample"] == true);

    RunResult csv = run_shell(cli + " generate 6 | " + cli + " scan - --format csv");
    CHECK(strip_comments(csv.out) == "n,total_scanned,raw_hits,conjecture_hits\n6,29,1,1\n");
}

TEST_CASE("scan aborts on malformed input with exit 2, or skips on request") {
    std::string cli = "'" + cli_path() + "'";
    CHECK(run_shell("printf 'Bw\\nbroken\\n' | " + cli + " scan -").exit_code == 2);
    RunResult skip =
        run_shell("printf 'Bw\\nbroken!x\\nA_\\n' | " + cli + " scan - --on-error skip --format csv");
    CHECK(skip.exit_code == 0);
    CHECK(strip_comments(skip.out).find("3,1,1,0") != std::string::npos);
}

TEST_CASE("reruns are byte-identical apart from the header comments") {
    std::string cli = "'" + cli_path() + "'";
    RunResult a = run_shell(cli + " limit");
    RunResult b = run_shell(cli + " limit");
    CHECK(a.exit_code == 0);
    CHECK(strip_comments(a.out) == strip_comments(b.out));

    RunResult s1 = run_shell(cli + " search --n 8 --generations 4 --population 40 --seed 3");
    RunResult s2 =
        run_shell(cli + " search --n 8 --generations 4 --population 40 --seed 3 --jobs 4");
    CHECK(s1.exit_code == 0);
    CHECK(strip_comments(s1.out) == strip_comments(s2.out));
}

TEST_CASE("limit prints the constant with both derivations") {
    RunResult r = run_shell("'" + cli_path() + "' limit");
    REQUIRE(r.exit_code == 0);
    json out = json::parse(r.out);
    CHECK(out["value_10_digits"] == "3.483650329");
    double value = out["value"];
    double cosine = out["cosine_form"];
    double two_sqrt3 = out["two_sqrt3"];
    CHECK(std::abs(value - cosine) <= 1e-8);
    CHECK(value > two_sqrt3);
}

TEST_CASE("counts table over the built-in range") {
    RunResult r = run_shell("'" + cli_path() + "' counts --from 6 --to 9");
    REQUIRE(r.exit_code == 0);
    CHECK(strip_comments(r.out) ==
          "n,total_scanned,raw_hits,conjecture_hits\n"
          "6,29,1,1\n"
          "7,64,2,1\n"
          "8,194,1,1\n"
          "9,531,3,3\n");
}

TEST_CASE("wineglass metrics agree between the closed form and the eigensolver") {
    RunResult r = run_shell("'" + cli_path() + "' wineglass path 7 --emit metrics");
    REQUIRE(r.exit_code == 0);
    json m = json::parse(r.out);
    CHECK(std::abs(double(m["closed_minus_direct"])) <= 1e-8);
    CHECK(m["matching_number"] == 14);
    CHECK(m["max_degree"] == 3);
    CHECK(m["is_conjecture_counterexample"] == true);
}

TEST_CASE("files requested with --out and --hits are written") {
    std::string cli = "'" + cli_path() + "'";
    std::string dir = "/tmp/energia_cli_exec_test";
    run_shell("rm -rf " + dir + " && mkdir -p " + dir);
    RunResult r = run_shell(cli + " generate 6 | " + cli + " scan - --hits " + dir +
                            "/hits.jsonl --summary " + dir + "/summary.csv >/dev/null");
    CHECK(r.exit_code == 0);
    RunResult hits = run_shell("cat " + dir + "/hits.jsonl");
    CHECK(lines_of(strip_comments(hits.out)).size() == 1);
    RunResult summary = run_shell("cat " + dir + "/summary.csv");
    CHECK(strip_comments(summary.out).find("6,29,1,1") != std::string::npos);
    run_shell("rm -rf " + dir);
}
