#include "newcoef/static_tables.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

namespace newcoef {

namespace detail {
extern const std::string_view embedded_static_tables;
}

namespace {

constexpr std::string_view magic = "# newcoef-static-tables v1";

std::vector<std::string> split(const std::string & line, char sep, std::size_t max_fields)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (out.size() + 1 < max_fields) {
        auto pos = line.find(sep, start);
        if (pos == std::string::npos)
            break;
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    out.push_back(line.substr(start));
    return out;
}

char parse_curve(const std::string & s)
{
    if (s == "C" || s == "H")
        return s[0];
    throw invalid_input("curve must be C or H");
}

int parse_sign(const std::string & s)
{
    if (s == "1" || s == "+1")
        return 1;
    if (s == "-1")
        return -1;
    throw invalid_input("sign must be 1 or -1");
}

} // namespace

bool StaticTables::covers(char curve, unsigned exponent, i64 alpha, int sign) const
{
    for (const auto & c : coverage)
        if (c.curve == curve && c.exponent == exponent && c.sign == sign && c.alpha_lo <= alpha && alpha <= c.alpha_hi)
            return true;
    return false;
}

std::vector<TablePoint> StaticTables::points_for(char curve, unsigned exponent, i64 alpha, int sign) const
{
    std::vector<TablePoint> out;
    for (const auto & p : points)
        if (p.curve == curve && p.exponent == exponent && p.alpha == alpha && p.sign == sign)
            out.push_back(p);
    return out;
}

bool point_on_curve(const TablePoint & p)
{
    mpz_class rhs;
    if (p.curve == 'C') {
        mpz_pow_ui(rhs.get_mpz_t(), p.x.get_mpz_t(), p.exponent);
        rhs += p.sign * mpz_class(p.alpha);
    } else {
        mpz_pow_ui(rhs.get_mpz_t(), p.x.get_mpz_t(), 2 * p.exponent);
        rhs = 5 * rhs + p.sign * 4 * mpz_class(p.alpha);
    }
    return p.y * p.y == rhs;
}

StaticTables parse_static_tables(std::string_view text, const std::string & origin)
{
    StaticTables t;
    t.origin = origin;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    bool seen_magic = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const std::string where = origin + ":" + std::to_string(lineno);
        if (line.empty())
            continue;
        if (!seen_magic) {
            if (line != magic)
                throw table_load_error(where + ": missing header '" + std::string(magic) + "'");
            seen_magic = true;
            continue;
        }
        try {
            if (line.rfind("#coverage ", 0) == 0) {
                auto f = split(line.substr(10), ',', 4);
                if (f.size() != 4)
                    throw invalid_input("coverage needs curve,exponent,lo..hi,sign");
                auto dots = f[2].find("..");
                if (dots == std::string::npos)
                    throw invalid_input("alpha range must be lo..hi");
                TableCoverage c{parse_curve(f[0]), unsigned(std::stoul(f[1])), std::stoll(f[2].substr(0, dots)),
                                std::stoll(f[2].substr(dots + 2)), parse_sign(f[3])};
                t.coverage.push_back(c);
                continue;
            }
            if (line[0] == '#')
                continue;
            auto f = split(line, ',', 7);
            if (f.size() != 7)
                throw invalid_input("expected 7 fields");
            TablePoint p;
            p.curve = parse_curve(f[0]);
            p.exponent = unsigned(std::stoul(f[1]));
            p.alpha = std::stoll(f[2]);
            p.sign = parse_sign(f[3]);
            p.x = mpz_class(f[4]);
            p.y = mpz_class(f[5]);
            p.source = f[6];
            if (p.y < 0)
                throw invalid_input("y must be nonnegative");
            if (!point_on_curve(p))
                throw invalid_input("point (" + f[4] + ", " + f[5] + ") is not on its curve");
            t.points.push_back(std::move(p));
        } catch (const table_load_error &) {
            throw;
        } catch (const std::exception & e) {
            throw table_load_error(where + ": " + e.what() + " in row '" + line + "'");
        }
    }
    if (!seen_magic)
        throw table_load_error(origin + ": empty table file");
    return t;
}

StaticTables load_static_tables(const std::string & path)
{
    std::ifstream in(path);
    if (!in)
        throw table_load_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_static_tables(buf.str(), path);
}

const StaticTables & default_static_tables()
{
    static const StaticTables tables = [] {
        if (const char * env = std::getenv("NEWCOEF_STATIC_DATA"); env && *env)
            return load_static_tables(env);
        return parse_static_tables(detail::embedded_static_tables, "<embedded>");
    }();
    return tables;
}

} // namespace newcoef
