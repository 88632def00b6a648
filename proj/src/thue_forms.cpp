#include "newcoef/thue_forms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "parallel.hpp"

namespace newcoef {

ThueForm build_F(unsigned m)
{
    if (m < 1)
        throw invalid_degree("F_{2m} needs m >= 1");
    // G_m = (Y - 2X) G_{m-1} - X^2 G_{m-2}, coefficients indexed by the power of X.
    std::vector<mpz_class> g0{1}, g1{1, -1};
    for (unsigned k = 2; k <= m; ++k) {
        std::vector<mpz_class> g(k + 1, 0);
        for (std::size_t j = 0; j < g1.size(); ++j) {
            g[j] += g1[j];
            g[j + 1] -= 2 * g1[j];
        }
        for (std::size_t j = 0; j < g0.size(); ++j)
            g[j + 2] -= g0[j];
        g0 = std::move(g1);
        g1 = std::move(g);
    }
    ThueForm f;
    f.name = "F_" + std::to_string(2 * m);
    f.degree = m;
    f.coefficients = std::move(g1);
    const long double pi = std::numbers::pi_v<long double>;
    for (unsigned k = 1; k <= m; ++k) {
        long double c = std::cos(pi * k / (2 * m + 1));
        f.root_ratios.push_back(4 * c * c);
    }
    return f;
}

ThueForm shift_form(const ThueForm & form, long shift)
{
    ThueForm out;
    out.name = form.name;
    out.degree = form.degree;
    out.coefficients.assign(form.degree + 1, 0);
    const mpz_class s = shift;
    for (unsigned j = 0; j <= form.degree; ++j) {
        const unsigned rest = form.degree - j;
        mpz_class binom = 1, spow = 1;
        for (unsigned i = 0; i <= rest; ++i) {
            out.coefficients[j + i] += form.coefficients[j] * binom * spow;
            binom = binom * (rest - i) / (i + 1);
            spow *= s;
        }
    }
    for (long double r : form.root_ratios)
        out.root_ratios.push_back(r - shift);
    return out;
}

ThueForm build_Fhat(u64 n)
{
    if (n < 3 || !is_prime_u64(n))
        throw invalid_input("Fhat_n needs an odd prime n");
    // With y = 2 cos(theta), the Dirichlet kernel 1 + sum_{j=1}^m 2 cos(j theta)
    // vanishes at theta = 2 pi k / n. Homogenized: H_0 = 2, H_1 = Y,
    // H_{j+1} = Y H_j - X^2 H_{j-1}, Fhat = X^m + sum_j X^{m-j} H_j.
    const unsigned m = unsigned((n - 1) / 2);
    std::vector<mpz_class> coef(m + 1, 0); // by power of X
    coef[m] = 1;
    std::vector<mpz_class> h0(m + 1, 0), h1(m + 1, 0);
    h0[0] = 2;
    h1[0] = 1; // H_j stored by power of X
    for (unsigned j = 1; j <= m; ++j) {
        for (unsigned i = 0; i + (m - j) <= m; ++i)
            coef[i + (m - j)] += h1[i];
        std::vector<mpz_class> h2(m + 1, 0);
        for (unsigned i = 0; i <= m; ++i) {
            h2[i] += h1[i];
            if (i + 2 <= m)
                h2[i + 2] -= h0[i];
        }
        h0 = std::move(h1);
        h1 = std::move(h2);
    }
    ThueForm f;
    f.name = "Fhat_" + std::to_string(n);
    f.degree = m;
    f.coefficients = std::move(coef);
    const long double pi = std::numbers::pi_v<long double>;
    for (unsigned k = 1; k <= m; ++k)
        f.root_ratios.push_back(2 * std::cos(2 * pi * k / n));
    return f;
}

mpz_class evaluate(const ThueForm & form, const mpz_class & x, const mpz_class & y)
{
    // ((c_d x + c_{d-1} y) x + c_{d-2} y^2) x + ...
    mpz_class acc = form.coefficients[form.degree];
    mpz_class ypow = 1;
    for (unsigned i = 1; i <= form.degree; ++i) {
        ypow *= y;
        acc = acc * x + form.coefficients[form.degree - i] * ypow;
    }
    return acc;
}

long double evaluate_product(const ThueForm & form, long double x, long double y)
{
    if (form.root_ratios.size() != form.degree)
        throw invalid_input("form " + form.name + " has no root data");
    long double p = 1;
    for (long double r : form.root_ratios)
        p *= y - r * x;
    return p;
}

std::vector<ThueSolution> bounded_search(const ThueForm & form, const std::vector<mpz_class> & rhs, i64 x_bound,
                                         i64 y_bound, SearchMode mode, unsigned threads)
{
    if (x_bound < 0 || y_bound < 0)
        throw invalid_input("search bounds must be nonnegative");
    if (rhs.empty())
        return {};
    const std::set<mpz_class> targets(rhs.begin(), rhs.end());
    mpz_class max_abs = 0;
    for (const auto & r : targets)
        max_abs = std::max(max_abs, mpz_class(abs(r)));

    const bool pruned = mode == SearchMode::Pruned && form.root_ratios.size() == form.degree && form.degree > 0 &&
                        form.coefficients[0] == 1;
    // |F(x, y)| >= min_k |y - r_k x|^degree, so a solution lies within
    // |rhs|^{1/degree} of some root line.
    const long double reach = std::pow(static_cast<long double>(max_abs.get_d()), 1.0L / form.degree) + 1.0L;

    const std::size_t width = std::size_t(2 * x_bound + 1);
    std::vector<std::vector<ThueSolution>> found(width);
    detail::parallel_for(width, threads, [&](std::size_t i) {
        const i64 x = i64(i) - x_bound;
        const mpz_class mx = x;
        std::vector<i64> ys;
        if (pruned) {
            for (long double r : form.root_ratios) {
                const long double centre = r * x;
                i64 lo = std::max<i64>(-y_bound, i64(std::floor(centre - reach)) - 1);
                i64 hi = std::min<i64>(y_bound, i64(std::ceil(centre + reach)) + 1);
                for (i64 y = lo; y <= hi; ++y)
                    ys.push_back(y);
            }
            std::sort(ys.begin(), ys.end());
            ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
        } else {
            for (i64 y = -y_bound; y <= y_bound; ++y)
                ys.push_back(y);
        }
        for (i64 y : ys) {
            mpz_class v = evaluate(form, mx, mpz_class(y));
            if (targets.count(v))
                found[i].push_back({x, y, std::move(v)});
        }
    });
    std::vector<ThueSolution> out;
    for (auto & part : found)
        for (auto & s : part)
            out.push_back(std::move(s));
    return out;
}

} // namespace newcoef
