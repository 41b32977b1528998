#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cli.hpp"
#include "hasse/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using nlohmann::json;
using hasse::cli::Config;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args, const Config& cfg = {}) {
    std::ostringstream out, err;
    int code = hasse::cli::run(args, out, err, cfg);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("verdict subcommand") {
    auto r = run({"verdict", "--field", "Q", "--d", "4", "--coeffs", "1,4,-289,-1156", "--json"});
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["verdict"] == "HasseFailure");
    CHECK(j["schema"] == "hasselines/1");
    CHECK(j["components"].size() == 3);
    CHECK(j["certificate"]["bad_places"].size() == 3);
    for (const auto& c : j["certificate"]["classes"]) CHECK(c["fixes"] == true);
    CHECK(j["certificate"]["witnesses"].size() == 3);

    auto h = run({"verdict", "--d", "3", "--coeffs", "1,1,2,5"});
    CHECK(h.code == 0);
    CHECK(h.out.find("LocalObstruction") != std::string::npos);
    CHECK(h.out.find("place: 13") != std::string::npos);

    auto s = run({"verdict", "--d", "3", "--coeffs", "1,1,2,5", "--serial", "--json"});
    CHECK(json::parse(s.out)["place"] == "13");
}

TEST_CASE("Unsupported exits with 2") {
    Config cfg;
    cfg.max_degree = 3;
    auto r = run({"verdict", "--d", "4", "--coeffs", "1,4,-289,-1156"}, cfg);
    CHECK(r.code == 2);
    CHECK(r.out.find("Unsupported") != std::string::npos);
}

TEST_CASE("cohomology subcommand") {
    auto r = run({"cohomology", "--field", "Q", "--d", "15"});
    CHECK(r.code == 0);
    CHECK(r.out.find("trivial") != std::string::npos);
    CHECK(r.out.find("AlwaysHolds") != std::string::npos);
    auto j = json::parse(run({"cohomology", "--field", "Q(mu3)", "--d", "21", "--representative", "--json"}).out);
    CHECK(j["prediction"] == "CounterexamplesExist");
    CHECK(j["alpha"]["value"] == "14+21*z");
}

TEST_CASE("count subcommand") {
    auto r = run({"count", "--x", "30", "--squarefree"});
    CHECK(r.code == 0);
    CHECK(r.out == "12\n");
    CHECK(run({"count", "--x", "30"}).out == "D(30) = 18, D_sf(30) = 12\n");
    std::string path = "test_cli_table.csv";
    auto g = run({"count", "--grid", "1000,10000", "--csv", path});
    CHECK(g.code == 0);
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == g.out);
    std::remove(path.c_str());
    CHECK(run({"count"}).code == 1);
    CHECK(run({"count", "--grid", "10,abc"}).code == 1);
}

TEST_CASE("lines and construct subcommands") {
    auto r = run({"lines", "--d", "3", "--coeffs", "1,1,1,1", "--place", "7", "--explicit", "--json"});
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["lines"].size() == 27);
    CHECK_FALSE(j["global_line"].is_null());
    CHECK(j["local"][0]["has_line"] == true);

    auto c = run({"construct", "--field", "Q(mu3)", "--d", "21", "--json"});
    CHECK(c.code == 0);
    auto cj = json::parse(c.out);
    CHECK(cj["beta"]["beta"] == 883);
    CHECK(cj["verdict"]["verdict"] == "HasseFailure");

    auto na = run({"construct", "--field", "Q", "--d", "3"});
    CHECK(na.code == 1);
    CHECK(na.err.find("NotApplicable") != std::string::npos);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"verdict", "--d", "4"}).code == 1);
    CHECK(run({"verdict", "--d", "2", "--coeffs", "1,1,1,1"}).code == 1);
    CHECK(run({"verdict", "--d", "3", "--coeffs", "1,1,1"}).code == 1);
    CHECK(run({"verdict", "--field", "Q(muX)", "--d", "3", "--coeffs", "1,1,1,1"}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("determinism") {
    std::vector<std::string> args{"verdict", "--field", "Q(mu3)", "--d", "3", "--coeffs", "1,z,2,3+z", "--json"};
    CHECK(run(args).out == run(args).out);
    CHECK(run({"demo"}).out == run({"demo"}).out);
}

TEST_CASE("demo") {
    auto r = run({"demo", "--json"});
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j["demo"].size() == 5);
    for (int i = 0; i < 4; ++i) {
        CHECK(j["demo"][i]["verdict"] == "HasseFailure");
        CHECK(j["demo"][i]["local_checks"]["with_line"] == j["demo"][i]["local_checks"]["places"]);
    }
    CHECK(j["demo"][4]["beta"]["beta"] == 883);
    CHECK(j["demo"][4]["alpha_is_cube_in_Q(mu21)"] == true);
    CHECK(j["demo"][4]["alpha_is_cube_in_Q(mu3)"] == false);
}

TEST_CASE("config") {
    auto c = Config::from_json_text(R"({"scan_bound": 100, "output": "json", "max_x": 50})");
    CHECK(c.scan_bound == 100);
    CHECK(c.max_x == 50);
    CHECK(c.output == "json");
    CHECK(c.beta_bound == Config{}.beta_bound);
    CHECK_THROWS_AS(Config::from_json_text(R"({"scan_bound": 0})"), hasse::Error);
    CHECK_THROWS_AS(Config::from_json_text(R"({"output": "xml"})"), hasse::Error);
    CHECK_THROWS_AS(Config::from_json_text("{"), hasse::Error);
    // budget error from the counting sieve is reported as undecided
    auto r = run({"count", "--x", "1000"}, c);
    CHECK(r.code == 2);
    auto ok = run({"count", "--x", "30"}, c);
    CHECK(json::parse(ok.out)["rows"][0]["D"] == 18);
}
