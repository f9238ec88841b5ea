#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef CYMON_CLI_PATH
#error "CYMON_CLI_PATH must be defined by the build"
#endif

namespace {

int run(const std::string& args) {
    const std::string cmd =
        std::string(CYMON_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("exit codes: parse errors and missing options") {
    CHECK(run("shoot --alpha -1") == 2);            // --epsilon is required
    CHECK(run("moduli --epsilon 1 --alpha-grid nonsense") == 2);
    CHECK(run("cone --m 0") == 2);                  // constant Higgs must be nonzero
    CHECK(run("definitely-not-a-subcommand") == 2);
    CHECK(run("--help") == 0);
}

TEST_CASE("verification families run clean") {
    CHECK(run("verify --family mc") == 0);
    CHECK(run("verify --family volume") == 0);
}

TEST_CASE("geometry CSV is deterministic across runs") {
    CHECK(run("geometry --epsilon 1 --out /tmp/cymon_geo_a.csv --t-max 5 --n-log 40 --n-lin 100") == 0);
    CHECK(run("geometry --epsilon 1 --out /tmp/cymon_geo_b.csv --t-max 5 --n-log 40 --n-lin 100") == 0);
    const std::string a = slurp("/tmp/cymon_geo_a.csv");
    const std::string b = slurp("/tmp/cymon_geo_b.csv");
    REQUIRE(!a.empty());
    CHECK(a == b);
    // header row documents the columns
    CHECK(a.rfind("r,", 0) == 0);
    std::remove("/tmp/cymon_geo_a.csv");
    std::remove("/tmp/cymon_geo_b.csv");
}

TEST_CASE("shoot emits a well-formed JSON report") {
    CHECK(run("shoot --epsilon 1 --mass 1 --out /tmp/cymon_shoot.json") == 0);
    const nlohmann::json j = nlohmann::json::parse(slurp("/tmp/cymon_shoot.json"));
    CHECK(j.contains("alpha"));
    CHECK(j.contains("mass"));
    CHECK(j.contains("mass_magnitude"));
    CHECK(j.contains("tail"));
    CHECK(j.contains("drift"));
    CHECK(std::abs(j["mass_magnitude"].get<double>() - 1.0) <= 1e-5);
    CHECK(j["mass"].get<double>() < 0.0);
    std::remove("/tmp/cymon_shoot.json");
}

TEST_CASE("dirac suite reports its checks as JSON") {
    CHECK(run("dirac --epsilon 1 --l 1 --m 1 --C 0.5 --out /tmp/cymon_dirac.json") == 0);
    const nlohmann::json j = nlohmann::json::parse(slurp("/tmp/cymon_dirac.json"));
    REQUIRE(j.contains("checks"));
    CHECK(j["all_pass"].get<bool>());
    for (const auto& c : j["checks"]) {
        CHECK(c.contains("check"));
        CHECK(c.contains("params"));
        CHECK(c.contains("value"));
        CHECK(c.contains("tolerance"));
        CHECK(c.contains("pass"));
    }
    std::remove("/tmp/cymon_dirac.json");
}
