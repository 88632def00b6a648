#ifndef NEWCOEF_THUE_FORMS_HPP
#define NEWCOEF_THUE_FORMS_HPP

#include <string>
#include <vector>

#include <gmpxx.h>

#include "newcoef/arith.hpp"

namespace newcoef {

struct invalid_degree : invalid_input {
    using invalid_input::invalid_input;
};

/*
 * Binary form sum_j c_j X^j Y^{degree-j}. When `root_ratios` is nonempty the
 * form is monic in Y and factors over R as prod_k (Y - r_k X).
 */
struct ThueForm {
    std::string name;
    unsigned degree = 0;
    std::vector<mpz_class> coefficients; // size degree + 1
    std::vector<long double> root_ratios;

    friend bool operator==(const ThueForm & a, const ThueForm & b)
    {
        return a.degree == b.degree && a.coefficients == b.coefficients;
    }
};

/// F_{2m}(X, Y), degree m; generating function 1/(1 - sqrt(Y) T + X T^2).
ThueForm build_F(unsigned m);

/// prod_{k=1}^{(n-1)/2} (Y - 2X cos(2 pi k / n)) for an odd prime n.
ThueForm build_Fhat(u64 n);

/// G(X, Z) = F(X, Z + shift * X).
ThueForm shift_form(const ThueForm & form, long shift);

mpz_class evaluate(const ThueForm & form, const mpz_class & x, const mpz_class & y);

/// Floating product prod_k (y - r_k x); requires root_ratios.
long double evaluate_product(const ThueForm & form, long double x, long double y);

struct ThueSolution {
    i64 x;
    i64 y;
    mpz_class value;

    friend bool operator==(const ThueSolution & a, const ThueSolution & b)
    {
        return a.x == b.x && a.y == b.y && a.value == b.value;
    }
};

enum class SearchMode { Pruned, FullScan };

/*
 * All (x, y) with |x| <= x_bound, |y| <= y_bound and form(x, y) in rhs, sorted
 * by (x, y). Pruned mode only evaluates y within |rhs|^{1/degree} of a real
 * root line y = r_k x; forms without root data are scanned in full.
 */
std::vector<ThueSolution> bounded_search(const ThueForm & form, const std::vector<mpz_class> & rhs, i64 x_bound,
                                         i64 y_bound, SearchMode mode = SearchMode::Pruned, unsigned threads = 1);

} // namespace newcoef

#endif
