#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "butterfly/family_io.hpp"

using nlohmann::json;
using namespace butterfly;

namespace {

struct CmdResult {
    int exit_code;
    std::string out;
};

CmdResult run_cli(const std::string& args) {
    const std::string cmd = std::string(BUTTERFLY_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    REQUIRE(WIFEXITED(status));
    return {WEXITSTATUS(status), out};
}

json parse_report(const std::string& text) {
    json report = json::parse(text);
    REQUIRE(report.contains("command"));
    REQUIRE(report.contains("inputs"));
    REQUIRE(report.contains("verdicts"));
    REQUIRE(report.contains("timing_ms"));
    return report;
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/butterfly_cli_test_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("check reports star violations with a witness") {
    const auto r = run_cli("check exceptional-n3 --json");
    CHECK(r.exit_code == 1);
    const json report = parse_report(r.out);
    CHECK(report["command"] == "check");
    CHECK(report["verdicts"][0]["satisfied"] == false);
    const json& w = report["verdicts"][0]["witness"];
    CHECK(w.contains("a"));
    CHECK(w.contains("b"));
    CHECK(w.contains("c"));
    CHECK(w.contains("d"));

    const auto human = run_cli("check exceptional-n3");
    CHECK(human.exit_code == 1);
    CHECK(human.out.find("violated") != std::string::npos);
}

TEST_CASE("check passes a two-level fixture") {
    const auto r = run_cli("check two-levels:5:2 --json");
    CHECK(r.exit_code == 0);
    const json report = parse_report(r.out);
    CHECK(report["verdicts"][0]["satisfied"] == true);
    CHECK(report["inputs"]["family"]["n"] == 5);
}

TEST_CASE("check handles fork and antichain conditions") {
    CHECK(run_cli("check level:4:2 -c antichain").exit_code == 0);
    CHECK(run_cli("check two-levels:4:1 -c antichain").exit_code == 1);
    CHECK(run_cli("check level:4:2 -c fork").exit_code == 0);
    CHECK(run_cli("check exceptional-n4 -c fork").exit_code == 1);
    CHECK(run_cli("check level:4:2 -c nonsense").exit_code == 2);
}

TEST_CASE("check rejects malformed input with exit 2") {
    const auto bad = write_temp("garbage.fam", "garbage\n");
    CHECK(run_cli("check " + bad).exit_code == 2);
    CHECK(run_cli("check /tmp/butterfly_no_such_file_anywhere").exit_code == 2);
    const auto bad_member = write_temp("badmember.fam", "n=3\n1,9\n");
    CHECK(run_cli("check " + bad_member).exit_code == 2);
}

TEST_CASE("check reads families from stdin in text and JSON form") {
    const auto text = write_temp("stdin.fam", "n=3\n1\n1,2\n");
    const auto r1 = run_cli("check - -c fork < " + text);
    CHECK(r1.exit_code == 0);

    const auto as_json = write_temp("stdin.json", R"({"n":3,"members":[[1],[1,2]]})");
    const auto r2 = run_cli("check - -c fork --json < " + as_json);
    CHECK(r2.exit_code == 0);
    const json report = parse_report(r2.out);
    CHECK(report["inputs"]["family"]["n"] == 3);
    CHECK(report["inputs"]["family"]["members"].size() == 2);
}

TEST_CASE("lym prints exact rationals and bound verdicts") {
    const auto r = run_cli("lym exceptional-n3 --json");
    CHECK(r.exit_code == 0);
    const json report = parse_report(r.out);
    CHECK(report["verdicts"][0]["lym_sum"] == "8/3");

    const auto bounded = run_cli("lym two-levels:3:1 --bound --json");
    CHECK(bounded.exit_code == 0);
    const json breport = parse_report(bounded.out);
    CHECK(breport["verdicts"][0]["lym_sum"] == "2/1");
    CHECK(breport["verdicts"][1]["equality"] == true);
    CHECK(breport["verdicts"][1]["hypotheses_ok"] == true);

    const auto level = run_cli("lym level:4:2 --json");
    CHECK(parse_report(level.out)["verdicts"][0]["lym_sum"] == "1/1");

    const auto out_of_scope = run_cli("lym exceptional-n3 --bound");
    CHECK(out_of_scope.exit_code == 0);
    CHECK(out_of_scope.out.find("out of scope") != std::string::npos);
}

TEST_CASE("audit reports the double count for a family file") {
    const auto r = run_cli("audit two-levels:4:2 --json");
    CHECK(r.exit_code == 0);
    const json report = parse_report(r.out);
    const json& v = report["verdicts"][0];
    CHECK(v["member_weight_sum"] == "48");
    CHECK(v["incidence_count"] == "48");
    CHECK(v["identity_holds"] == true);
    CHECK(v["budget"] == "48");
    CHECK(v["equality"] == true);
    CHECK(v["satisfies_star"] == true);
}

TEST_CASE("audit rejects families containing the empty or full set") {
    CHECK(run_cli("audit exceptional-n3").exit_code == 2);
    const auto with_full = write_temp("full.fam", "n=3\n1\n1,2,3\n");
    CHECK(run_cli("audit " + with_full).exit_code == 2);
}

TEST_CASE("audit --all-intervals sweeps every interval family") {
    const auto r = run_cli("audit --all-intervals 4 --json");
    CHECK(r.exit_code == 0);
    const json report = parse_report(r.out);
    const json& v = report["verdicts"][0];
    CHECK(v["proper_intervals"] == 12);
    CHECK(v["families_checked"] == 4096);
    CHECK(v["size_counterexamples"] == 0);
    CHECK(v["weight_counterexamples"] == 0);
    CHECK(v["max_star_size"] == 8);
    CHECK(v["size_bound"] == 8);

    CHECK(run_cli("audit --all-intervals 3").exit_code == 0);
    CHECK(run_cli("audit --all-intervals 5").exit_code == 2);
    CHECK(run_cli("audit").exit_code == 2);
}

TEST_CASE("search certifies small optima and enumerates classes") {
    const auto r = run_cli("search 4 star --enumerate --json");
    CHECK(r.exit_code == 0);
    const json report = parse_report(r.out);
    const json& res = report["verdicts"][0];
    CHECK(res["optimum"] == 10);
    CHECK(res["proof_complete"] == true);
    const json& cat = report["verdicts"][1];
    CHECK(cat["classes"].size() == 3);
    CHECK(cat["proof_complete"] == true);

    const auto three = run_cli("search 3 star --json");
    CHECK(three.exit_code == 0);
    CHECK(parse_report(three.out)["verdicts"][0]["optimum"] == 6);
}

TEST_CASE("search exhausted budgets exit 3 and stay honest") {
    const auto r = run_cli("search 5 star --budget 100 --json");
    CHECK(r.exit_code == 3);
    const json report = parse_report(r.out);
    CHECK(report["verdicts"][0]["proof_complete"] == false);
    CHECK(report["verdicts"][0]["optimum"] >= 20);

    const auto seconds = run_cli("search 4 star --budget 30s --json");
    CHECK(seconds.exit_code == 0);
    CHECK(parse_report(seconds.out)["verdicts"][0]["proof_complete"] == true);
}

TEST_CASE("search rejects bad arguments with exit 2") {
    CHECK(run_cli("search 9 star").exit_code == 2);
    CHECK(run_cli("search 4 nonsense").exit_code == 2);
    CHECK(run_cli("search 4 star --budget nonsense").exit_code == 2);
    CHECK(run_cli("search 6 star --enumerate --budget 100").exit_code == 2);
    CHECK(run_cli("search 4 star --threads 0").exit_code == 2);
}

TEST_CASE("search verdicts are identical across thread counts") {
    auto strip = [](const std::string& text) {
        json report = json::parse(text);
        report.erase("timing_ms");
        report["inputs"].erase("threads");
        return report;
    };
    const auto one = run_cli("search 4 star --enumerate --threads 1 --json");
    const auto four = run_cli("search 4 star --enumerate --threads 4 --json");
    CHECK(one.exit_code == 0);
    CHECK(four.exit_code == 0);
    json a = strip(one.out);
    json b = strip(four.out);
    a["verdicts"][0].erase("nodes_explored");
    b["verdicts"][0].erase("nodes_explored");
    a["verdicts"][1].erase("nodes_explored");
    b["verdicts"][1].erase("nodes_explored");
    CHECK(a == b);
}

TEST_CASE("families printed by search re-parse to equal families") {
    const auto human = run_cli("search 4 star");
    CHECK(human.exit_code == 0);
    const auto pos = human.out.find("witness:\n");
    REQUIRE(pos != std::string::npos);
    const Family witness = parse_family_text(human.out.substr(pos + 9));
    CHECK(witness.size() == 10);

    const auto js = run_cli("search 4 star --json");
    const json report = parse_report(js.out);
    const Family from_json = family_from_json(report["verdicts"][0]["witness"]);
    CHECK(from_json == witness);
}

TEST_CASE("proptest runs seeded suites and reports max observations") {
    const auto r = run_cli("proptest 5 --cases 200 --seed 42 --json");
    CHECK(r.exit_code == 0);
    const json report = parse_report(r.out);
    CHECK(report["seed"] == 42);
    CHECK(report["verdicts"].size() == 2);
    CHECK(report["verdicts"][0]["suite"] == "star_weighted_sum");
    CHECK(report["verdicts"][0]["counterexample"].is_null());
    CHECK(report["verdicts"][1]["suite"] == "fork_free_size");
    CHECK(report["verdicts"][1]["counterexample"].is_null());
}

TEST_CASE("proptest is deterministic for a fixed seed") {
    auto strip = [](const std::string& text) {
        json report = json::parse(text);
        report.erase("timing_ms");
        return report;
    };
    const auto first = run_cli("proptest 4 --cases 150 --seed 99 --json");
    const auto second = run_cli("proptest 4 --cases 150 --seed 99 --json");
    CHECK(first.exit_code == 0);
    CHECK(strip(first.out) == strip(second.out));
}

TEST_CASE("proptest on two points reports the exhaustive sweep") {
    const auto r = run_cli("proptest 2 --cases 20 --seed 1 --json");
    CHECK(r.exit_code == 0);
    const json report = parse_report(r.out);
    bool found = false;
    for (const auto& v : report["verdicts"]) {
        if (v["suite"] == "small_ground_exhaustive") {
            found = true;
            CHECK(v["max_size"] == 4);
            CHECK(v["two_level_size"] == 3);
        }
    }
    CHECK(found);
}

TEST_CASE("top level usage errors exit 2 and help exits 0") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("check --help").exit_code == 0);
    CHECK(run_cli("lym").exit_code == 2);
    CHECK(run_cli("proptest 4 --cases 0").exit_code == 2);
}
