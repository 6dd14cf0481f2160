#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

#include "doctest.h"
#include "gie/config.hpp"
#include "gie/output.hpp"
#include "gie/rng.hpp"

using namespace gie;

TEST_SUITE("output") {

TEST_CASE("format_double is the shortest round-tripping form") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-0.0) == "-0");
    CHECK(format_double(1e-300) == "1e-300");
    Rng rng(2718);
    for (int t = 0; t < 200; ++t) {
        const double v = rng.normal() * std::pow(10.0, rng.uniform_int(-12, 12));
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("csv output quotes exactly the fields that need it") {
    std::ostringstream os;
    OutputRecord plain;
    plain.add("name", "alpha").add("value", 0.25).add("count", 3);
    OutputRecord tricky;
    tricky.add("name", "a,b \"c\"").add("value", -1.5).add("count", uint64_t{7});
    emit_csv(os, {"name", "value", "count"}, {plain, tricky});
    CHECK(os.str() ==
          "name,value,count\n"
          "alpha,0.25,3\n"
          "\"a,b \"\"c\"\"\",-1.5,7\n");
}

TEST_CASE("csv columns select and reorder record fields") {
    std::ostringstream os;
    OutputRecord rec;
    rec.add("x", 1.0).add("y", 2.0);
    emit_csv(os, {"y", "x"}, {rec});
    CHECK(os.str() == "y,x\n2,1\n");
    std::ostringstream os2;
    CHECK_THROWS_AS(emit_csv(os2, {"z"}, {rec}), std::logic_error);
}

TEST_CASE("json output keeps insertion order and parses back") {
    std::ostringstream os;
    OutputRecord rec;
    rec.add("zeta", 0.5).add("alpha", "x").add("mid", -2);
    emit_json(os, {rec});
    const std::string text = os.str();
    CHECK(text == "[{\"zeta\":0.5,\"alpha\":\"x\",\"mid\":-2}]\n");
    const auto parsed = nlohmann::ordered_json::parse(text);
    CHECK(parsed[0]["zeta"].get<double>() == 0.5);
    // re-serializing is byte-stable
    std::ostringstream os2;
    emit_json(os2, {rec});
    CHECK(os2.str() == text);
}

TEST_CASE("plot data is a comment header plus bare pairs") {
    std::ostringstream os;
    OutputRecord a, b;
    a.add("gamma", 0.1).add("negativity", 0.4);
    b.add("gamma", 0.2).add("negativity", 0.3);
    emit_plot_data(os, "gamma", "negativity", {a, b});
    CHECK(os.str() == "# gamma,negativity\n0.1,0.4\n0.2,0.3\n");
}

TEST_CASE("config parsing accepts flat scalar objects") {
    const ConfigFile cfg = ConfigFile::parse_text(
        "{\"mass\": 1e-12, \"points\": 20, \"scale\": \"log\", \"keep_going\": true}", "test.json");
    CHECK(cfg.entries.size() == 4);
    CHECK(cfg.entries.at("mass").get<double>() == 1e-12);
    CHECK(cfg.entries.at("points").get<int>() == 20);
    CHECK(cfg.entries.at("scale").get<std::string>() == "log");
    CHECK(cfg.entries.at("keep_going").get<bool>() == true);
}

TEST_CASE("config parse errors carry origin and line") {
    try {
        ConfigFile::parse_text("{\n  \"a\": 1,\n  oops\n}", "bad.json");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("bad.json:3") != std::string::npos);
    }
}

TEST_CASE("config rejects non-object and non-scalar shapes by name") {
    CHECK_THROWS_AS(ConfigFile::parse_text("[1,2]", "arr.json"), config_error);
    try {
        ConfigFile::parse_text("{\"grid\": [1,2]}", "nested.json");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(std::string(e.what()).find("grid") != std::string::npos);
    }
    CHECK_THROWS_AS(ConfigFile::load("/nonexistent/path/cfg.json"), config_error);
}

}  // TEST_SUITE
