#include "gentle/invariants.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args, const std::string& stdin_text = "") {
    std::string dir = "cli_tmp";
    if (std::system(("mkdir -p " + dir).c_str()) != 0) FAIL("cannot create temp dir");
    std::string in_path = dir + "/stdin.txt";
    {
        std::ofstream f(in_path, std::ios::binary);
        f << stdin_text;
    }
    std::string cmd = std::string(GENTLE_CLI_PATH) + " " + args + " < " + in_path + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string write_file(const std::string& name, const std::string& content) {
    std::string dir = "cli_tmp";
    if (std::system(("mkdir -p " + dir).c_str()) != 0) FAIL("cannot create temp dir");
    std::string path = dir + "/" + name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    return path;
}

std::string an_file(const std::string& name, const std::string& pairs) {
    return write_file(name, gentle::print_presentation_text(
                                gentle::make_an(gentle::parse_an_form(pairs)).presentation()));
}

} // namespace

TEST_CASE("an piped into silting") {
    auto an = run_cli("an --pairs 1,1");
    REQUIRE(an.exit_code == 0);
    auto silting = run_cli("silting", an.out);
    CHECK(silting.exit_code == 0);
    CHECK(silting.out == "false\n");

    auto yes = run_cli("silting", run_cli("an --pairs 1,3").out);
    CHECK(yes.out == "true\n");
}

TEST_CASE("an output re-parses to the identical algebra") {
    auto out = run_cli("an --pairs \"3,5;2,2\"").out;
    auto alg = gentle::validate_gentle(gentle::parse_presentation_text(out));
    auto form = gentle::an_form_of(alg);
    REQUIRE(form.has_value());
    CHECK(gentle::print_an_form(*form) == "3,5;2,2");
    CHECK(gentle::print_presentation_text(alg.presentation()) ==
          gentle::print_presentation_text(
              gentle::make_an(gentle::parse_an_form("3,5;2,2")).presentation()));
}

TEST_CASE("equiv prints a certificate") {
    auto a = an_file("a.alg", "0,0;0,0");
    auto b = an_file("b.alg", "1,1;0,0");
    auto res = run_cli("equiv " + a + " " + b);
    CHECK(res.exit_code == 0);
    CHECK(res.out.substr(0, 5) == "true\n");
    CHECK(res.out.find("genus") != std::string::npos);

    auto json = run_cli("--format json equiv " + a + " " + b);
    auto parsed = nlohmann::json::parse(json.out);
    CHECK(parsed["equivalent"] == true);
    CHECK(parsed["checks"].is_array());
}

TEST_CASE("validate failures exit 1 with a structured error") {
    std::string bad = "vertex 1\nvertex 2\narrow x 1 2 0\narrow y 1 2 0\narrow z 1 1 0\n";
    auto res = run_cli("validate", bad);
    CHECK(res.exit_code == 1);
    CHECK(res.out.find("NotGentle") != std::string::npos);

    auto json = run_cli("--format json validate", bad);
    CHECK(json.exit_code == 1);
    auto parsed = nlohmann::json::parse(json.out);
    CHECK(parsed["error"]["code"] == "NotGentle");

    auto ok = run_cli("validate", "vertex 1\n");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("valid gentle presentation") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("equiv onlyone.alg").exit_code == 2);
    CHECK(run_cli("an").exit_code == 2); // --pairs required
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("invariants json matches the documented schema") {
    auto res = run_cli("--format json invariants " + an_file("c.alg", "3,3;1,1"));
    REQUIRE(res.exit_code == 0);
    auto j = nlohmann::json::parse(res.out);
    CHECK(j["genus"] == 2);
    REQUIRE(j["boundaries"].is_array());
    CHECK(j["boundaries"][0]["marked"] == 1);
    CHECK(j["boundaries"][0]["winding"] == -6);
    CHECK(j["sigma"] == 0);
    CHECK(j["arf"] == 1);
    CHECK(j["atilde"].is_null());
    CHECK(j["W"].is_array());

    auto disk = run_cli("--format json invariants", "vertex 1\n");
    auto jd = nlohmann::json::parse(disk.out);
    CHECK(jd["genus"] == 0);
    CHECK(jd["sigma"].is_null());
}

TEST_CASE("reduce, presilting, move and koszul work end to end") {
    std::string ext = R"(
vertex 1
vertex 2
vertex 3
vertex 4
arrow a 1 2 1
arrow b 2 1 0
arrow g 1 2 1
arrow d 2 3 0
arrow e 3 4 0
rel a b
rel b g
rel g d
)";
    auto reduced = run_cli("reduce --drop 3,4", ext);
    REQUIRE(reduced.exit_code == 0);
    auto alg = gentle::validate_gentle(gentle::parse_presentation_text(reduced.out));
    auto form = gentle::an_form_of(alg);
    REQUIRE(form.has_value());
    CHECK(gentle::print_an_form(*form) == "1,1");

    auto report = run_cli("--format json presilting --keep 3,4", ext);
    REQUIRE(report.exit_code == 0);
    auto j = nlohmann::json::parse(report.out);
    CHECK(j["presilting"] == true);
    CHECK(j["verdict"] == "NotPartialSilting");

    auto moved = run_cli("--format json move --pairs \"1,1;1,1;1,1\"");
    auto jm = nlohmann::json::parse(moved.out);
    CHECK(jm["pairs"] == nlohmann::json::parse("[[-1,1],[1,3],[1,1]]"));

    // move also accepts an algebra on stdin and emits a pipeable presentation
    auto moved_text = run_cli("move", run_cli("an --pairs \"1,1;1,1;1,1\"").out);
    REQUIRE(moved_text.exit_code == 0);
    CHECK(moved_text.out.find("# an-form: -1,1;1,3;1,1") != std::string::npos);
    auto silt = run_cli("silting", moved_text.out);
    CHECK(silt.out == "true\n");

    auto dual = run_cli("--format json koszul --pairs \"0,0;0,0\"");
    CHECK(nlohmann::json::parse(dual.out)["pairs"] == nlohmann::json::parse("[[2,2],[2,2]]"));
    CHECK(run_cli("koszul --pairs 1,1").exit_code == 1); // needs two pairs
}

TEST_CASE("emit-dot renders both graphs") {
    auto res = run_cli("emit-dot", run_cli("an --pairs 1,1").out);
    REQUIRE(res.exit_code == 0);
    CHECK(res.out.find("graph incidence") != std::string::npos);
    CHECK(res.out.find("graph dual") != std::string::npos);
}

TEST_CASE("outputs are byte-deterministic for a fixed seed") {
    auto file = an_file("d.alg", "2,2;3,3");
    auto r1 = run_cli("--seed 7 --format json invariants " + file);
    auto r2 = run_cli("--seed 7 --format json invariants " + file);
    CHECK(r1.out == r2.out);
}

TEST_CASE("batch mode processes inputs in order with isolation") {
    auto good = an_file("good.alg", "1,1");
    auto bad = write_file("bad.alg", "vertex 1\narrow x 1 1 1\n"); // loop: no model
    auto list = write_file("list.txt", good + "\n" + bad + "\n" + good + "\n");
    auto res = run_cli("--batch " + list + " silting");
    CHECK(res.exit_code == 1); // one input failed
    auto first = res.out.find("== " + good);
    auto second = res.out.find("== " + bad);
    auto third = res.out.find("== " + good, first + 1);
    CHECK(first != std::string::npos);
    CHECK(second != std::string::npos);
    CHECK(third != std::string::npos);
    CHECK(first < second);
    CHECK(second < third);
    CHECK(res.out.find("false") != std::string::npos);
    CHECK(res.out.find("error:") != std::string::npos);
}

TEST_CASE("the cycle length cap is read from the environment") {
    auto file = an_file("e.alg", "1,1");
    // a cap of one arc is enough on the torus model
    auto res = run_cli("invariants " + file + " --max-cycle-len 1");
    CHECK(res.exit_code == 0);
    setenv("GENTLE_TOPO_MAX_CYCLE_LEN", "1", 1);
    auto env_res = run_cli("invariants " + file);
    unsetenv("GENTLE_TOPO_MAX_CYCLE_LEN");
    CHECK(env_res.exit_code == 0);
    CHECK(env_res.out == res.out);
}
