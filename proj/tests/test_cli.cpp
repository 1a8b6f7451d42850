#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "lateral/network.hpp"
#include "lateral/witness.hpp"

using nlohmann::json;
using namespace lateral;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(LATERAL_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult r;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_p3() {
    std::string path = "/tmp/lateral_test_p3.json";
    std::ofstream(path) << R"({"L":3,"edges":[[1,2],[2,3]]})";
    return path;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("gen emits graph json") {
    CliResult r = run_cli("gen --kind path --n 4");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["L"] == 4);
    CHECK(j["edges"] == json::parse("[[1,2],[2,3],[3,4]]"));
    CHECK(run_cli("gen --kind cycle --n 2").exit_code == 1);
    CHECK(run_cli("gen --kind nosuch --n 2").exit_code == 1);
}

TEST_CASE("fixed-points lists covers and both patterns") {
    std::string p3 = write_p3();
    CliResult r = run_cli("fixed-points --graph " + p3);
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    CHECK(j[0]["cover"] == json::parse("[2]"));
    CHECK(j[0]["reduced"] == "010");
    CHECK(j[0]["full"] == "010101");
    CHECK(j[1]["cover"] == json::parse("[1,3]"));
    CHECK(j[1]["full"] == "101010");
}

TEST_CASE("trap-spaces enumerate reproduces the small diagram") {
    std::string p3 = write_p3();
    CliResult r = run_cli("trap-spaces --graph " + p3 + " --enumerate");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["count"] == 7);
    std::set<std::string> got;
    for (const auto& s : j["trap_spaces"]) got.insert(s.get<std::string>());
    std::set<std::string> expect{"010101", "101010", "010*01", "01010*",
                                 "*10*01", "01*10*", "******"};
    CHECK(got == expect);

    CliResult dot = run_cli("trap-spaces --graph " + p3 + " --enumerate --dot");
    CHECK(dot.out.find("digraph") != std::string::npos);

    CliResult check = run_cli("trap-spaces --graph " + p3 + " --check '*10*01'");
    json cj = json::parse(check.out);
    CHECK(cj["is_trap_space"] == true);

    CliResult minimal = run_cli("trap-spaces --graph " + p3 +
                                " --minimal-containing 010101 --cells 1 --model full");
    json mj = json::parse(minimal.out);
    CHECK(mj["method"] == "closed-form");
}

TEST_CASE("reach answers the counterexample") {
    std::string p3 = write_p3();
    CliResult r = run_cli("reach --graph " + p3 + " --from 011100 --to 101010");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["reachable"] == false);

    CliResult ok = run_cli("reach --graph " + p3 + " --from 011100 --to 010101 --witness");
    json oj = json::parse(ok.out);
    CHECK(oj["reachable"] == true);
    REQUIRE(oj.contains("witness"));
    // Replay the emitted witness through the network.
    CellGraph g = CellGraph::from_json_text(R"({"L":3,"edges":[[1,2],[2,3]]})");
    Network net = build_network(g, ModelKind::full, 1);
    PathWitness w;
    w.start = State::parse(oj["witness"]["start"].get<std::string>());
    for (const auto& f : oj["witness"]["flips"]) w.flips.push_back(f.get<int>() - 1);
    CHECK(w.replay(net).str() == oj["witness"]["end"].get<std::string>());
    CHECK(oj["witness"]["end"] == "010101");
}

TEST_CASE("basins report sizes") {
    std::string p3 = write_p3();
    CliResult weak = run_cli("basins --graph " + p3 +
                             " --fixed-point 010101 --mode weak --enumerate");
    json wj = json::parse(weak.out);
    CHECK(wj["size"] == 63);
    CliResult strong = run_cli("basins --graph " + p3 +
                               " --fixed-point 010101 --mode strong --enumerate");
    json sj = json::parse(strong.out);
    CHECK(sj["size"] == 7);
}

TEST_CASE("perturb summarises the report") {
    std::string p3 = write_p3();
    CliResult r = run_cli("perturb --graph " + p3 + " --pattern 010101 --cells 1 --vars both");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["trap_space"] == "*10*01");
    CHECK(j["returns_only_to_original"] == true);
    CHECK(j["radius"] == 0);
}

TEST_CASE("stg and energy-check run") {
    std::string p3 = write_p3();
    CliResult dot = run_cli("stg --graph " + p3 + " --model reduced --out dot");
    CHECK(dot.exit_code == 0);
    CHECK(dot.out.find("digraph") != std::string::npos);
    CliResult ec = run_cli("energy-check --graph " + p3 + " --k 1");
    json ej = json::parse(ec.out);
    CHECK(ej["violations"] == 0);
    CHECK(ej["min_gap"] == "1/2");
    CHECK(ej["strictly_decreasing"] == true);
}

TEST_CASE("errors are machine readable and exit nonzero") {
    std::string p3 = write_p3();
    CliResult bad_state = run_cli("reach --graph " + p3 + " --from 01x100");
    CHECK(bad_state.exit_code == 1);
    json j = json::parse(bad_state.out);
    CHECK(j.contains("error"));
    CliResult bad_dim = run_cli("reach --graph " + p3 + " --from 0101");
    CHECK(bad_dim.exit_code == 1);
    CliResult no_file = run_cli("fixed-points --graph /tmp/does_not_exist_p9.json");
    CHECK(no_file.exit_code == 1);
    CliResult usage = run_cli("fixed-points");
    CHECK(usage.exit_code != 0);
}

TEST_CASE("identical runs are byte identical") {
    std::string p3 = write_p3();
    CliResult a = run_cli("trap-spaces --graph " + p3 + " --enumerate");
    CliResult b = run_cli("trap-spaces --graph " + p3 + " --enumerate");
    CHECK(a.out == b.out);
    CliResult c = run_cli("fixed-points --graph " + p3);
    CliResult d = run_cli("fixed-points --graph " + p3);
    CHECK(c.out == d.out);
}

TEST_CASE("constructive witnesses work far beyond the search limit") {
    CliResult gen = run_cli("gen --kind hexgrid --rows 4 --cols 5 -o /tmp/lateral_test_hex.json");
    REQUIRE(gen.exit_code == 0);
    CliResult fp = run_cli("fixed-points --graph /tmp/lateral_test_hex.json");
    REQUIRE(fp.exit_code == 0);
    std::string pattern = json::parse(fp.out)[0]["full"].get<std::string>();
    std::string corner(20, '1');
    corner += std::string(20, '0');
    CliResult r = run_cli("reach --graph /tmp/lateral_test_hex.json --from " + corner + " --to " +
                          pattern + " --witness");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["reachable"] == true);
    REQUIRE(j.contains("witness"));
    CHECK(j["witness"]["end"] == pattern);

    CellGraph g = CellGraph::hexgrid(4, 5);
    Network net = build_network(g, ModelKind::full, 1);
    PathWitness w;
    w.start = State::parse(j["witness"]["start"].get<std::string>());
    for (const auto& f : j["witness"]["flips"]) w.flips.push_back(f.get<int>() - 1);
    CHECK(w.replay(net) == State::parse(pattern));
}

TEST_CASE("table format and environment limit") {
    std::string p3 = write_p3();
    CliResult table = run_cli("fixed-points --graph " + p3 + " --format table");
    CHECK(table.exit_code == 0);
    CHECK(table.out.find("010101") != std::string::npos);
    CHECK(table.out.find("{") == std::string::npos);

    // LATERAL_LIMIT caps the oracle; an explicit flag overrides it.
    CliResult capped = run_cli("stg --graph " + p3 + " --model reduced");
    CHECK(capped.exit_code == 0);
    std::string env_cmd = "LATERAL_LIMIT=2 " + std::string(LATERAL_CLI_PATH) + " stg --graph " +
                          p3 + " --model reduced 2>/dev/null";
    FILE* pipe = popen(env_cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 1);
    CHECK(json::parse(out)["error"]["type"] == "limit");
    std::string flag_cmd = "LATERAL_LIMIT=2 " + std::string(LATERAL_CLI_PATH) + " stg --graph " +
                           p3 + " --model reduced --limit 20 2>/dev/null";
    pipe = popen(flag_cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fread(buf, 1, sizeof buf, pipe)) {
    }
    CHECK(WEXITSTATUS(pclose(pipe)) == 0);
}

TEST_CASE("disconnected graphs need the escape hatch") {
    std::string path = "/tmp/lateral_test_disc.json";
    std::ofstream(path) << R"({"L":4,"edges":[[1,2],[3,4]]})";
    CliResult refused = run_cli("fixed-points --graph " + path);
    CHECK(refused.exit_code == 1);
    CliResult ok = run_cli("fixed-points --graph " + path + " --allow-disconnected");
    REQUIRE(ok.exit_code == 0);
    json j = json::parse(ok.out);
    CHECK(j.size() == 4); // patterns multiply across components
}

TEST_CASE("limit errors point at the flag") {
    CliResult gen = run_cli("gen --kind grid --rows 5 --cols 5 -o /tmp/lateral_test_g55.json");
    REQUIRE(gen.exit_code == 0);
    CliResult r = run_cli("stg --graph /tmp/lateral_test_g55.json");
    CHECK(r.exit_code == 1);
    json j = json::parse(r.out);
    CHECK(j["error"]["type"] == "limit");
}

} // TEST_SUITE
