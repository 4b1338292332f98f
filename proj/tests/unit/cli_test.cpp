#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "qgf/cli.hpp"
#include "qgf/config.hpp"
#include "qgf/errors.hpp"

using namespace qgf;
using nlohmann::json;

namespace {

json generic2() {
    return json::parse(R"({
      "generators": ["1", "2"],
      "base_params": ["a", "b", "c", "d"],
      "phi_exponents": {"1,1": [1,0,0,0], "1,2": [0,1,0,0], "2,1": [0,0,1,0], "2,2": [0,0,0,1]},
      "grade_cutoff": 2
    })");
}

std::string write_temp(const json& j, const std::string& name) {
    std::string path =
        (std::filesystem::temp_directory_path() / ("qgf_test_" + name + ".json")).string();
    std::ofstream(path) << j.dump();
    return path;
}

} // namespace

TEST_CASE("monomial parsing") {
    CHECK(parse_monomial("q^-2") == Scalar::variable("q", -2));
    CHECK(parse_monomial("-1") == Scalar(-1));
    CHECK(parse_monomial("2/3 q^(-1)*s") ==
          Scalar::rational(2, 3) * Scalar::variable("q", -1) * Scalar::variable("s"));
    CHECK_THROWS_AS(parse_monomial(""), ConfigParse);
    CHECK_THROWS_AS(parse_monomial("q^"), ConfigParse);
    CHECK_THROWS_AS(parse_monomial("q+1"), ConfigParse);
}

TEST_CASE("config validation") {
    CHECK_NOTHROW(parse_config(generic2()));
    json j = generic2();
    j["phi_exponents"].erase("2,1");
    CHECK_THROWS_AS(parse_config(j), ConfigParse);
    j = generic2();
    j["colour"] = 1;
    CHECK_THROWS_AS(parse_config(j), ConfigParse);
    j = generic2();
    j["backend"] = "numeric";
    CHECK_THROWS_AS(parse_config(j), ConfigParse);
    j["numeric_point"] = {{"a", {1.1, 0}}, {"b", {0.9, 0.1}}, {"c", {1.2, 0}}, {"d", {0.8, 0}}};
    CHECK_NOTHROW(parse_config(j));
    j = generic2();
    j["surface"] = {{"2,1", "b^-1"}};
    AlgebraSpec spec = build_spec(parse_config(j));
    CHECK((spec.x(0, 1) * spec.x(1, 0)).is_one());
}

TEST_CASE("exit codes") {
    CliOptions o;
    o.command = "nonsense";
    auto r = run(o);
    CHECK(r.exit_code == 2);
    CHECK(r.report["error"]["kind"] == "UnknownCommand");

    o.command = "yb-check";
    r = run(o);
    CHECK(r.exit_code == 2);

    o.config_path = write_temp(generic2(), "generic2");
    r = run(o);
    CHECK(r.exit_code == 0);

    o.command = "elliptic";
    o.config_path.reset();
    o.grade = 2; // two factors: YBE residual far above tolerance
    CHECK(run(o).exit_code == 1);
}

TEST_CASE("reports are deterministic and round-trip through JSON") {
    CliOptions o;
    o.command = "yb-check";
    o.config_path = write_temp(generic2(), "generic2");
    o.out = "json";
    std::string a = render(run(o).report, "json"), b = render(run(o).report, "json");
    CHECK(a == b);
    auto parsed = nlohmann::ordered_json::parse(a);
    CHECK(parsed.dump(2) + "\n" == a);

    o.command = "elliptic";
    o.config_path.reset();
    o.eps = 0.3;
    o.u = 0.17;
    o.q = 0.8;
    auto rep = run(o).report;
    std::string s = render(rep, "json");
    CHECK(nlohmann::ordered_json::parse(s).dump(2) + "\n" == s);
    CHECK(rep["results"][0].contains("a"));
    CHECK(rep["results"][1]["name"] == "ybe_residual");
}

TEST_CASE("every residual states truncation and backend") {
    CliOptions o;
    o.command = "hopf-check";
    o.config_path = write_temp(generic2(), "generic2");
    auto rep = run(o).report;
    for (auto& e : rep["results"])
        if (e["kind"] == "residual") {
            CHECK(e.contains("truncation"));
            CHECK(e.contains("backend"));
        }
}

TEST_CASE("QGF_THREADS") {
    setenv("QGF_THREADS", "3", 1);
    CHECK(threads_from_env() == 3);
    setenv("QGF_THREADS", "zero", 1);
    CHECK_THROWS_AS(threads_from_env(), InvalidInput);
    unsetenv("QGF_THREADS");
    CHECK(threads_from_env() == 1);
}
