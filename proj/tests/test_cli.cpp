#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "newcoef/cli.hpp"

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = newcoef::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("tau csv and json")
    {
        const auto r = cli({"tau", "--bound", "4"});
        CHECK(r.code == 0);
        CHECK(r.out == "n,tau\n1,1\n2,-24\n3,252\n4,-1472\n");
        const auto j = cli({"tau", "--bound", "3", "--format", "json"});
        REQUIRE(j.code == 0);
        const auto doc = nlohmann::json::parse(j.out);
        CHECK(doc["schema"] == "newcoef-report/1");
        CHECK(doc["result"]["tau"] == nlohmann::json::array({"1", "-24", "252"}));
    }

    TEST_CASE("usage errors exit with 2")
    {
        CHECK(cli({}).code == 2);
        CHECK(cli({"nonsense"}).code == 2);
        CHECK(cli({"tau"}).code == 2);
        CHECK(cli({"tau", "--bound", "abc"}).code == 2);
        CHECK(cli({"exclude", "--alpha", "21"}).code == 2);
        CHECK(cli({"exclude", "--alpha", "19", "--weight", "4"}).code == 2);
        CHECK(cli({"thue", "--form", "F_5", "--rhs", "1"}).code == 2);
        CHECK(cli({"--static-data", "/nonexistent.csv", "exclude", "--alpha", "19"}).code == 2);
        CHECK(cli({"--help"}).code == 0);
    }

    TEST_CASE("sieve exit codes follow the verdict")
    {
        const auto e = cli({"sieve", "--a", "7", "--b", "4", "--d", "11"});
        CHECK(e.code == 0);
        CHECK(nlohmann::json::parse(e.out)["result"]["outcome"] == "Eliminated");
        CHECK(cli({"sieve", "--a", "7", "--b", "4", "--d", "7"}).code == 1);
    }

    TEST_CASE("bounds text")
    {
        const auto r = cli({"bounds"});
        CHECK(r.code == 0);
        CHECK(r.out.find("exp(10^281) < exp(10^298)") != std::string::npos);
        CHECK(cli({"bounds", "--L", "5"}).code == 2);
    }

    TEST_CASE("frey subcommands")
    {
        const auto r = cli({"frey", "level", "--A", "5", "--B", "76", "--C", "1", "--n", "23", "--b-mod4", "1"});
        REQUIRE(r.code == 0);
        CHECK(nlohmann::json::parse(r.out)["result"]["levels"] == nlohmann::json::array({"380"}));
        const auto p = cli({"frey", "points", "--a2", "0", "--a4", "19", "--p", "3"});
        REQUIRE(p.code == 0);
        CHECK(nlohmann::json::parse(p.out)["result"]["trace"] == 0);
    }

    TEST_CASE("output is deterministic")
    {
        const std::vector<std::string> args{"thue", "--form", "Fhat_5", "--rhs", "5", "--rhs", "-5",
                                            "--x-bound", "50", "--y-bound", "50"};
        const auto a = cli(args), b = cli(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}
