#ifndef NEWCOEF_STATIC_TABLES_HPP
#define NEWCOEF_STATIC_TABLES_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "newcoef/arith.hpp"

namespace newcoef {

struct table_load_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/*
 * Integral points on
 *   C: y^2 = x^e + sign * alpha
 *   H: y^2 = 5 x^{2e} + sign * 4 alpha
 * with a declared coverage: a covered (curve, e, alpha, sign) block lists all
 * points according to its source.
 */
struct TablePoint {
    char curve = 'C';
    unsigned exponent = 0;
    i64 alpha = 0;
    int sign = 1;
    mpz_class x, y;
    std::string source;
};

struct TableCoverage {
    char curve = 'C';
    unsigned exponent = 0;
    i64 alpha_lo = 0, alpha_hi = 0;
    int sign = 1;
};

struct StaticTables {
    std::string origin;
    std::vector<TablePoint> points;
    std::vector<TableCoverage> coverage;

    bool covers(char curve, unsigned exponent, i64 alpha, int sign) const;
    std::vector<TablePoint> points_for(char curve, unsigned exponent, i64 alpha, int sign) const;
};

/// Whether (x, y) lies on the curve the row names.
bool point_on_curve(const TablePoint & p);

/// Parses and validates every row; errors name the offending line.
StaticTables parse_static_tables(std::string_view text, const std::string & origin);
StaticTables load_static_tables(const std::string & path);

/// $NEWCOEF_STATIC_DATA when set, otherwise the copy compiled into the library.
const StaticTables & default_static_tables();

} // namespace newcoef

#endif
