#include <doctest.h>

#include <fstream>

#include "newcoef/static_tables.hpp"

using namespace newcoef;

namespace {

const std::string header = "# newcoef-static-tables v1\n";

mpz_class ipow(const mpz_class & b, unsigned long e)
{
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

} // namespace

TEST_SUITE("static_tables")
{
    TEST_CASE("embedded tables load and every point is on its curve")
    {
        const auto & t = default_static_tables();
        CHECK_FALSE(t.points.empty());
        CHECK_FALSE(t.coverage.empty());
        for (const auto & p : t.points) {
            CHECK(point_on_curve(p));
            // independent restatement of the curve equations
            const mpz_class rhs = p.curve == 'C' ? mpz_class(ipow(p.x, p.exponent) + p.sign * p.alpha)
                                                 : mpz_class(5 * ipow(p.x, 2 * p.exponent) + 4 * p.sign * p.alpha);
            CHECK(p.y * p.y == rhs);
        }
        CHECK(t.covers('C', 11, 19, 1));
        CHECK(t.covers('C', 11, 19, -1));
    }

    TEST_CASE("file on disk matches the embedded copy")
    {
        const auto t = load_static_tables(std::string(NEWCOEF_TEST_DATA_DIR) + "/static_tables.csv");
        CHECK(t.points.size() == default_static_tables().points.size());
        CHECK(t.coverage.size() == default_static_tables().coverage.size());
    }

    TEST_CASE("row validation")
    {
        const auto ok = parse_static_tables(header + "H,3,1,1,2,18,test\n", "inline");
        REQUIRE(ok.points.size() == 1);
        CHECK(ok.points[0].curve == 'H');
        CHECK(ok.points[0].y == 18);

        CHECK_THROWS_AS(parse_static_tables(header + "H,3,1,1,2,19,test\n", "inline"), table_load_error);
        CHECK_THROWS_AS(parse_static_tables(header + "Q,3,1,1,2,18,test\n", "inline"), table_load_error);
        CHECK_THROWS_AS(parse_static_tables(header + "H,3,1,2,2,18,test\n", "inline"), table_load_error);
        CHECK_THROWS_AS(parse_static_tables(header + "H,3,1,1,2\n", "inline"), table_load_error);
        CHECK_THROWS_AS(parse_static_tables("C,11,1,1,0,1,x\n", "inline"), table_load_error);
        CHECK_THROWS_AS(parse_static_tables("", "inline"), table_load_error);
        CHECK_THROWS_AS(load_static_tables("/nonexistent/tables.csv"), table_load_error);
        try {
            parse_static_tables(header + "#coverage C,11,1..5,1\nC,11,2,1,-1,2,x\n", "inline");
            FAIL("row with a wrong point was accepted");
        } catch (const table_load_error & e) {
            CHECK(std::string(e.what()).find("inline:3") != std::string::npos);
        }
    }

    TEST_CASE("coverage queries")
    {
        const auto t = parse_static_tables(header + "#coverage C,11,1..5,1\nC,11,3,1,1,2,x\n", "inline");
        CHECK(t.covers('C', 11, 3, 1));
        CHECK_FALSE(t.covers('C', 11, 6, 1));
        CHECK_FALSE(t.covers('C', 11, 3, -1));
        CHECK_FALSE(t.covers('H', 11, 3, 1));
        CHECK(t.points_for('C', 11, 3, 1).size() == 1);
        CHECK(t.points_for('C', 11, 2, 1).empty());
    }
}
