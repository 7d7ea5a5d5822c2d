#include "catch_amalgamated.hpp"

#include "hopfcalc/cli.hpp"

#include <sstream>

using namespace hopfcalc;

namespace {

struct Run {
    int code;
    std::string out, err;
    Json json() const { return Json::parse(out); }
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("list-examples names every registered example", "[cli]") {
    const auto r = run({"list-examples"});
    REQUIRE(r.code == 0);
    const auto j = r.json();
    std::set<std::string> names;
    for (const auto& e : j["examples"]) names.insert(e["name"].get<std::string>());
    for (const char* n : {"radford", "torus", "group-c2", "smash-demo", "hopf-file"}) CHECK(names.count(n) == 1);
    CHECK(r.err.find("radford: ") != std::string::npos);
}

TEST_CASE("usage errors exit with status 2", "[cli]") {
    for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
             {},
             {"frobnicate"},
             {"verify", "no-such-example"},
             {"verify", "radford", "--r", "abc"},
             {"verify", "radford", "--q-index", "2"},
             {"verify", "radford", "--ideal", "half"},
             {"verify", "group-c2", "--window", "0"},
             {"cohomology", "group-c2", "--max-degree", "-1"},
             {"verify", "hopf-file"},
         }) {
        const auto r = run(args);
        INFO(r.err);
        CHECK(r.code == 2);
        CHECK(r.json()["error"]["kind"] == "usage");
    }
}

TEST_CASE("cohomology of the group calculus", "[cli]") {
    const auto r = run({"cohomology", "group-c2", "--ideal", "zero", "--max-degree", "1"});
    REQUIRE(r.code == 0);
    const auto j = r.json();
    CHECK(j["dimensions"] == Json::array({1, 1}));
    CHECK(j["windowed"] == false);
    CHECK(j["schema"] == kSchemaVersion);
}

TEST_CASE("verify reports per-suite checks and is deterministic", "[cli]") {
    const std::vector<std::string> args{"verify", "radford", "--r", "2", "--n", "2", "--ideal", "zero", "--seed", "7"};
    const auto a = run(args);
    INFO(a.err);
    REQUIRE(a.code == 0);
    const auto j = a.json();
    CHECK(j["summary"]["ok"] == true);
    CHECK(j["summary"]["failed"] == 0);
    CHECK(j["params"]["q-index"] == 1);
    CHECK(j["suites"].size() >= 5);
    const auto b = run(args);
    CHECK(a.out == b.out);

    const auto one = run({"verify", "group-c2", "--suite", "calculus"});
    REQUIRE(one.code == 0);
    CHECK(one.json()["suites"].size() == 1);
    CHECK(run({"verify", "group-c2", "--suite", "qpb"}).code == 2);
}

TEST_CASE("structure-constant files", "[cli]") {
    const std::string path = std::string(HOPFCALC_TEST_DATA) + "/sweedler.hopf";
    const auto r = run({"verify", "hopf-file", "--file", path, "--suite", "hopf"});
    INFO(r.err);
    CHECK(r.code == 0);
    CHECK(r.json()["summary"]["ok"] == true);
    const auto missing = run({"verify", "hopf-file", "--file", "/nonexistent/x.hopf"});
    CHECK(missing.code == 2);
}
