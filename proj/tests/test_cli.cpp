#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "fc/cli.hpp"

using nlohmann::json;

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = fc::run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("symbolic reduce emits the expected json") {
    CliRun r = run({"reduce", "--shift", "-1,0,1,0,0", "--params", "a,b,c1,c2,c3", "--format",
                    "json"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    const std::string den =
        "a*c1*z1+a*c1*z2+a*c1*z3-a*c1-c1*z1-c1*z2-c1*z3+c1";
    CHECK(j["Q"][0] == "(-b*z1+c1*z1+c1*z2+c1*z3-c1)/(c1*z1+c1*z2+c1*z3-c1)");
    CHECK(j["Q"][1] == "(a*z2+a*z3-b*z1+c1*z1-a-z2-z3+1)/(" + den + ")");
    CHECK(j["Q"][2] == "(-a*z1-b*z1+c1*z1+c1*z2+c1*z3+c2*z1-c1)/(" + den + ")");
    CHECK(j["Q"][3] == "(-a*z1-b*z1+c1*z1+c1*z2+c1*z3+c3*z1-c1)/(" + den + ")");
    CHECK(j["Q"][4] == "(-z1+z2+z3-1)/(" + den + ")");
    CHECK(j["Q"][5] == "(-z1+z2+z3-1)/(" + den + ")");
    CHECK(j["Q"][6] == "(-2*z1)/(" + den + ")");
    CHECK(j["Q"][7] == "0");
    CHECK(j["newParams"] == json::array({"a-1", "b", "c1+1", "c2", "c3"}));

    // deterministic: a second run renders byte-identical output
    CliRun again = run({"reduce", "--shift", "-1,0,1,0,0", "--params", "a,b,c1,c2,c3", "--format",
                        "json"});
    CHECK(again.code == 0);
    CHECK(again.out == r.out);
}

TEST_CASE("zero shift renders the identity in text form") {
    CliRun r = run({"reduce", "--shift", "0,0,0,0,0", "--params", "1/2,1/3,2/3,3/5,4/7"});
    REQUIRE(r.code == 0);
    CHECK(r.out ==
          "Q0 = 1\n"
          "Q1 = 0\n"
          "Q2 = 0\n"
          "Q3 = 0\n"
          "Q12 = 0\n"
          "Q13 = 0\n"
          "Q23 = 0\n"
          "Q123 = 0\n"
          "newParams = 1/2, 1/3, 2/3, 3/5, 4/7\n");
    CHECK(r.err.empty());
}

TEST_CASE("series text output with bindings") {
    std::vector<std::string> base{"series", "--params", "1+eps,2+eps,4+3*eps,6+7*eps,3+3*eps",
                                  "--bind", "eps=1/10", "--z", "1/10,1/5,3/20",
                                  "--order", "10", "--exact"};
    CliRun r = run(base);
    REQUIRE(r.code == 0);
    CHECK(r.out == "1.34179\n");
    CHECK(r.err == "warning: sqrt(z1)+sqrt(z2)+sqrt(z3) < 1 is not satisfied at this point\n");

    auto withDeriv = base;
    withDeriv.push_back("--deriv");
    withDeriv.push_back("1,0,0");
    r = run(withDeriv);
    REQUIRE(r.code == 0);
    CHECK(r.out == "1.35774\n");

    auto withDigits = base;
    withDigits.push_back("--digits");
    withDigits.push_back("10");
    r = run(withDigits);
    REQUIRE(r.code == 0);
    CHECK(r.out == "1.341788396\n");

    // no warning inside the convergence region
    CliRun quiet = run({"series", "--params", "1/2,1/3,2/3,3/5,4/7", "--z", "1/100,1/100,1/100",
                        "--order", "5"});
    CHECK(quiet.code == 0);
    CHECK(quiet.err.empty());
}

TEST_CASE("series json output") {
    CliRun r = run({"series", "--params", "1/2,1/3,2/3,3/5,4/7", "--z", "1/100,1/100,1/100",
                    "--order", "5", "--exact", "--format", "json"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["convergent"] == true);
    CHECK(j["outsideDomain"] == false);
    CHECK(j.contains("value"));
    CHECK(j.contains("exact"));
}

TEST_CASE("usage errors exit 2 with a structured object") {
    CliRun r = run({"reduce", "--shift", "-1,0,1,0", "--params", "a,b,c1,c2,c3"});
    CHECK(r.code == 2);
    json j = json::parse(r.err);
    CHECK(j["error"]["kind"] == "parse");
    CHECK(j["error"]["message"] == "--shift needs 5 comma-separated entries");

    r = run({"reduce", "--shift", "0,0,0,0,0", "--params", "0.5,1,1,1,1"});
    CHECK(r.code == 2);
    j = json::parse(r.err);
    CHECK(j["error"]["kind"] == "parse");

    r = run({"reduce", "--shift", "0,0,0,0,0", "--params", "q,b,c1,c2,c3"});
    CHECK(r.code == 2);
    j = json::parse(r.err);
    CHECK(j["error"]["kind"] == "parse");

    r = run({"frobnicate"});
    CHECK(r.code == 2);
    j = json::parse(r.err);
    CHECK(j["error"]["kind"] == "usage");
}

TEST_CASE("exceptional parameters exit 3 with the vanishing factors") {
    CliRun r = run({"reduce", "--shift", "0,0,-1,0,0", "--params", "a,b,1,c2,c3"});
    CHECK(r.code == 3);
    json j = json::parse(r.err);
    CHECK(j["error"]["kind"] == "exceptional-parameter");
    CHECK(j["error"]["factors"] == json::array({"c1-1"}));
    CHECK(j["error"]["step"] == 1);
}

TEST_CASE("series poles exit 4") {
    CliRun r = run({"series", "--params", "1,1,-2,1,1", "--z", "1/10,0,0", "--order", "5",
                    "--exact"});
    CHECK(r.code == 4);
    json j = json::parse(r.err);
    CHECK(j["error"]["kind"] == "evaluation");
}

TEST_CASE("verify runs a reduction against the series") {
    CliRun r = run({"verify", "--shift", "0,0,-1,0,0", "--params", "1/3,2/5,5/7,3/11,4/13",
                    "--z", "1/50,1/60,1/70", "--z", "1/55,1/65,1/75", "--order", "25",
                    "--format", "json"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["pass"] == true);
    REQUIRE(j["points"].size() == 2);
    CHECK(j["points"][0]["pass"] == true);
    CHECK(j["points"][1]["pass"] == true);

    CliRun text = run({"verify", "--shift", "0,0,-1,0,0", "--params", "1/3,2/5,5/7,3/11,4/13",
                       "--z", "1/50,1/60,1/70", "--order", "25"});
    CHECK(text.code == 0);
    CHECK(text.out.find("overall: PASS") != std::string::npos);
}

TEST_CASE("reduce results persist when FC_CACHE_DIR is set") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "fc_cli_cache_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    setenv("FC_CACHE_DIR", dir.c_str(), 1);
    CliRun r = run({"reduce", "--shift", "0,0,-1,0,0", "--params", "1/3,2/5,9/7,3/11,4/13"});
    unsetenv("FC_CACHE_DIR");
    REQUIRE(r.code == 0);
    int tbl = 0;
    for (const auto& ent : fs::directory_iterator(dir))
        if (ent.path().extension() == ".tbl") ++tbl;
    CHECK(tbl >= 1);
    fs::remove_all(dir);
}
