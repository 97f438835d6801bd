// End-to-end checks of the orthomod binary: exit-code discipline, report
// contents and determinism. Each invocation is a real subprocess.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#ifndef ORTHOMOD_CLI_PATH
#error "ORTHOMOD_CLI_PATH must point at the orthomod binary"
#endif
#ifndef ORTHOMOD_SCENARIO_DIR
#error "ORTHOMOD_SCENARIO_DIR must point at the shipped scenarios"
#endif

namespace {

using nlohmann::json;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

RunResult run(const std::string& args) {
    static int counter = 0;
    const std::string tag = std::to_string(counter++);
    const std::string out_path = "cli_stdout_" + tag + ".txt";
    const std::string err_path = "cli_stderr_" + tag + ".txt";
    const std::string command = std::string("\"") + ORTHOMOD_CLI_PATH +
                                "\" " + args + " >" + out_path + " 2>" +
                                err_path;
    const int status = std::system(command.c_str());
    RunResult result;
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return result;
}

std::string scn(const char* file) {
    return std::string(ORTHOMOD_SCENARIO_DIR) + "/" + file;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

// stdout under --json must be exactly one JSON document
json parse_report(const RunResult& result) {
    REQUIRE(result.exit_code == 0);
    return json::parse(result.out);
}

struct TempFile {
    std::string path;
    TempFile(const std::string& name, const std::string& content)
        : path(name) {
        std::ofstream(path, std::ios::binary) << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("usage problems exit with code 2") {
    CHECK(run("").exit_code == 2);
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("--not-a-flag parse x").exit_code == 2);
    CHECK(run("parse").exit_code == 2);  // missing required positional
    CHECK(run("laws").exit_code == 2);   // neither scenario nor --random
    CHECK(run("laws " + scn("line_triple.scenario") + " --random 2 5 1")
              .exit_code == 2);
    CHECK(run("laws --random 0 5 1").exit_code == 2);
    CHECK(run("laws --random 2 -5 1").exit_code == 2);
    CHECK(run("laws --random 2 5 1 --field rational").exit_code == 2);
    CHECK(run("bilogic " + scn("professor.scenario")).exit_code == 2);
}

TEST_CASE("domain problems exit with code 1") {
    const RunResult empty = run("parse ''");
    CHECK(empty.exit_code == 1);
    CHECK(contains(empty.err, "parse error at offset 0"));

    const RunResult unbound =
        run("eval " + scn("professor.scenario") + " 'zz & professor'");
    CHECK(unbound.exit_code == 1);
    CHECK(contains(unbound.err, "unbound: zz"));

    CHECK(run("eval " + scn("no_such.scenario") + " x").exit_code == 1);
    CHECK(run("bilogic " + scn("professor.scenario") +
              " repr --object nobody")
              .exit_code == 1);
    const RunResult ghost = run("member " + scn("professor.scenario") +
                                " conscious ghost");
    CHECK(ghost.exit_code == 1);
    CHECK(contains(ghost.err, "unknown state vector 'ghost'"));
    CHECK(contains(ghost.err, "archetype, outsider"));
}

TEST_CASE("load errors name the offending attribute") {
    TempFile bad("bad_row.scenario", R"({
      "dimension": 4,
      "attributes": [{"name": "married", "basis": [[0, 1, 0]]}]
    })");
    const RunResult result = run("eval " + bad.path + " married");
    CHECK(result.exit_code == 1);
    CHECK(contains(result.err,
                   "attribute 'married': basis row 0 must have 4 entries"));
}

TEST_CASE("member rejects the zero vector") {
    TempFile zero("zero_vec.scenario", R"({
      "dimension": 2,
      "field": "real",
      "attributes": [{"name": "p", "basis": [[1, 0]]}],
      "state_vectors": {"origin": [0, 0]}
    })");
    const RunResult result = run("member " + zero.path + " p origin");
    CHECK(result.exit_code == 1);
    CHECK(contains(result.err, "zero vector"));
}

TEST_CASE("parse prints the pretty form and the tree") {
    const RunResult result = run("parse 'x1 & x2 | !x3'");
    REQUIRE(result.exit_code == 0);
    CHECK(contains(result.out, "pretty: x1 & x2 | !x3\n"));
    CHECK(contains(result.out,
                   "or\n  and\n    var x1\n    var x2\n  not\n    var x3\n"));

    const json report = parse_report(run("--json parse 'x1 & x2 | !x3'"));
    CHECK(report["command"] == "parse");
    CHECK(report["pretty"] == "x1 & x2 | !x3");
    CHECK(report["variables"] == json::array({"x1", "x2", "x3"}));
    CHECK(report["ast"]["kind"] == "or");
    CHECK(report["ast"]["left"]["kind"] == "and");
    CHECK(report["ast"]["left"]["left"]["name"] == "x1");
}

TEST_CASE("eval resolves named formulas and inline text") {
    const json named = parse_report(
        run("--json eval " + scn("professor.scenario") + " conscious"));
    CHECK(named["field"] == "real");
    CHECK(named["formula_name"] == "conscious");
    CHECK(named["formula"] == "professor & university & married");
    CHECK(named["dim"] == 1);
    CHECK(named["ambient_dim"] == 4);
    CHECK(named["basis"].size() == 1);

    const json inline_text = parse_report(
        run("--json eval " + scn("professor.scenario") +
            " 'professor | university'"));
    CHECK(inline_text["formula_name"].is_null());
    CHECK(inline_text["dim"] == 3);
}

TEST_CASE("member reports the excluded-middle triple") {
    const auto member_of = [&](const char* formula) {
        const json report = parse_report(
            run("--json member " + scn("excluded_middle.scenario") + " " +
                formula + " witness"));
        return report["member"].get<bool>();
    };
    CHECK_FALSE(member_of("affirm"));
    CHECK_FALSE(member_of("deny"));
    CHECK(member_of("either"));

    const json inside = parse_report(
        run("--json member " + scn("excluded_middle.scenario") +
            " affirm inside"));
    CHECK(inside["member"] == true);
    CHECK(inside["residual"].get<double>() < 1e-12);
}

TEST_CASE("random law sweep upholds the two conditional laws") {
    const json report =
        parse_report(run("--json laws --random 4 50 42"));
    CHECK(report["mode"] == "random");
    CHECK(report["field"] == "complex");
    REQUIRE(report["results"].size() == 3);

    const json& om = report["results"][0];
    CHECK(om["law"] == "orthomodular");
    CHECK(om["held"] == 50);
    CHECK(om["checks"] == 50);
    CHECK(om["witness"].is_null());

    const json& mod = report["results"][1];
    CHECK(mod["law"] == "modular");
    CHECK(mod["held"] == 50);

    const json& dist = report["results"][2];
    CHECK(dist["law"] == "distributivity");
    CHECK(dist["held"].get<long long>() < 50);
    REQUIRE(dist["witness"].is_object());
    CHECK(dist["witness"]["lhs_dim"].get<long long>() >
          dist["witness"]["rhs_dim"].get<long long>());

    const json real_field =
        parse_report(run("--json laws --random 3 25 7 --field real"));
    CHECK(real_field["field"] == "real");
    CHECK(real_field["results"][0]["held"] == 25);
}

TEST_CASE("zero-trial sweep reports empty tallies and succeeds") {
    const json report = parse_report(run("--json laws --random 3 0 7"));
    for (const auto& row : report["results"]) {
        CHECK(row["checks"] == 0);
        CHECK(row["held"] == 0);
        CHECK(row["witness"].is_null());
    }
}

TEST_CASE("scenario laws walk the attribute tuples") {
    const json report = parse_report(
        run("--json laws " + scn("line_triple.scenario")));
    CHECK(report["mode"] == "scenario");
    const json& om = report["results"][0];
    CHECK(om["checks"] == 3);  // the three reflexive pairs
    CHECK(om["held"] == 3);
    const json& mod = report["results"][1];
    CHECK(mod["checks"] == 9);
    CHECK(mod["held"] == 9);
    const json& dist = report["results"][2];
    CHECK(dist["checks"] == 27);
    CHECK(dist["held"] == 21);
    REQUIRE(dist["witness"].is_object());
    CHECK(dist["witness"]["lhs_dim"] == 1);
    CHECK(dist["witness"]["rhs_dim"] == 0);
    CHECK(dist["witness"]["x"] == "x");
    CHECK(dist["witness"]["y"] == "y");
    CHECK(dist["witness"]["z"] == "z");

    const RunResult text = run("laws " + scn("line_triple.scenario"));
    CHECK(contains(text.out, "orthomodular: holds 3/3"));
    CHECK(contains(text.out, "distributivity: holds 21/27"));
    CHECK(contains(text.out, "lhs dim 1, rhs dim 0"));
}

TEST_CASE("bilogic symmetry finds the professor class") {
    const json report = parse_report(
        run("--json bilogic " + scn("professor.scenario") + " symmetry"));
    CHECK(report["results"]["count"] == 1);
    CHECK(report["results"]["classes"] ==
          json::array({json::array({"p1", "p2", "p3"})}));

    const RunResult text =
        run("bilogic " + scn("professor.scenario") + " symmetry");
    CHECK(contains(text.out, "1 symmetric class"));
    CHECK(contains(text.out, "{p1, p2, p3}"));
}

TEST_CASE("bilogic repr flags unrealizable objects") {
    const json report = parse_report(
        run("--json bilogic " + scn("coordinate.scenario") +
            " repr --object core"));
    CHECK(report["results"]["dim"] == 0);
    CHECK(report["results"]["unrealizable"] == true);
    CHECK(report["results"]["basis"].empty());

    const json gen = parse_report(
        run("--json bilogic " + scn("professor.scenario") +
            " generalize --object p1"));
    CHECK(gen["results"]["dim"] == 4);
    CHECK(gen["results"]["is_full"] == true);
}

TEST_CASE("bilogic condense fuses the two eyeshade objects") {
    const json report = parse_report(
        run("--json bilogic " + scn("demo_condensation.scenario") +
            " condense --a q --b r"));
    CHECK(report["results"]["dim"] == 2);
    CHECK(report["results"]["contains_a_repr"] == true);
    CHECK(report["results"]["contains_b_repr"] == true);
}

TEST_CASE("bilogic displace follows the transfer set") {
    const std::string base =
        "--json bilogic " + scn("demo_displacement.scenario") +
        " displace --target f --source h";

    const json partial = parse_report(run(base + " --transfer blue_eyes"));
    CHECK(partial["results"]["dim"] == 3);
    CHECK(partial["results"]["equals_target_repr"] == false);
    CHECK(partial["results"]["equals_condense"] == false);
    CHECK(partial["results"]["contains_target_repr"] == true);

    const json none = parse_report(run(base));
    CHECK(none["results"]["equals_target_repr"] == true);
    CHECK(none["results"]["dim"] == 1);

    const json full = parse_report(
        run(base + " --transfer unemployed --transfer blue_eyes"));
    CHECK(full["results"]["dim"] == 2);
    CHECK(full["results"]["equals_condense"] == true);

    const RunResult stranger =
        run(base + " --transfer no_such_attribute");
    CHECK(stranger.exit_code == 1);
}

TEST_CASE("bilogic kinds lists temporal and reality attributes") {
    const json report = parse_report(
        run("--json bilogic " + scn("demo_time.scenario") + " kinds"));
    CHECK(report["results"]["temporal"] ==
          json::array({"a_year_ago", "last_week"}));
    CHECK(report["results"]["reality"].empty());

    const RunResult text =
        run("bilogic " + scn("demo_time.scenario") + " kinds");
    CHECK(contains(text.out, "temporal: a_year_ago, last_week"));
}

TEST_CASE("demo runs the five characteristics deterministically") {
    const std::string cmd =
        std::string("--json demo --dir ") + ORTHOMOD_SCENARIO_DIR;
    const RunResult first = run(cmd);
    const RunResult second = run(cmd);
    REQUIRE(first.exit_code == 0);
    REQUIRE(second.exit_code == 0);
    CHECK(first.out == second.out);

    const json report = json::parse(first.out);
    REQUIRE(report["results"].size() == 5);
    CHECK(report["results"][0]["characteristic"] ==
          "absence of mutual contradiction");
    CHECK(report["results"][1]["characteristic"] == "displacement");
    CHECK(report["results"][2]["characteristic"] == "condensation");
    CHECK(report["results"][3]["characteristic"] == "absence of time");
    CHECK(report["results"][4]["characteristic"] ==
          "replacement of external reality");

    // the time demo groups the three generalization-equal storms
    const json& time = report["results"][3]["results"];
    CHECK(time["classes"][0] ==
          json::array({"storm_then", "storm_now", "flood_then"}));
}

TEST_CASE("json reports keep timing out of the document") {
    const RunResult result =
        run("--json eval " + scn("professor.scenario") + " conscious");
    REQUIRE(result.exit_code == 0);
    CHECK_FALSE(contains(result.out, "elapsed"));
    CHECK(contains(result.err, "elapsed"));
    CHECK(json::parse(result.out).is_object());
}

TEST_CASE("global seed override reshapes random attributes") {
    TempFile doc("seeded.scenario", R"({
      "dimension": 4,
      "seed": 3,
      "attributes": [{"name": "a", "random_dim": 2}]
    })");
    const std::string base = "--json eval " + doc.path + " a";
    const RunResult same_a = run(base + " --seed 5");
    const RunResult same_b = run(base + " --seed 5");
    const RunResult other = run(base + " --seed 6");
    REQUIRE(same_a.exit_code == 0);
    CHECK(same_a.out == same_b.out);
    CHECK(same_a.out != other.out);
    CHECK(json::parse(same_a.out)["seed"] == 5);
}

TEST_CASE("allow-unequal-dims flag downgrades the error to a warning") {
    TempFile doc("unequal.scenario", R"({
      "dimension": 3,
      "attributes": [
        {"name": "wide", "random_dim": 2},
        {"name": "thin", "random_dim": 1}
      ]
    })");
    CHECK(run("eval " + doc.path + " wide").exit_code == 1);
    const RunResult allowed =
        run("--allow-unequal-dims --json eval " + doc.path + " wide");
    REQUIRE(allowed.exit_code == 0);
    CHECK(contains(allowed.err, "warning:"));
    const json report = json::parse(allowed.out);
    REQUIRE(report["warnings"].size() == 1);
}
