#include "newcoef/quad_field.hpp"

#include <algorithm>
#include <cmath>

namespace newcoef {

QuadElement::QuadElement(mpz_class s, mpz_class t) : s_(std::move(s)), t_(std::move(t))
{
    if (mpz_odd_p(s_.get_mpz_t()) != mpz_odd_p(t_.get_mpz_t()))
        throw invalid_input("(s + t*sqrt5)/2 needs s = t mod 2");
}

std::optional<QuadElement> QuadElement::divide(const QuadElement & divisor) const
{
    const mpz_class n = norm(divisor);
    if (n == 0)
        throw invalid_input("division by zero element");
    QuadElement num = multiply(*this, divisor.conjugate());
    if (!mpz_divisible_p(num.s_.get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(num.t_.get_mpz_t(), n.get_mpz_t()))
        return std::nullopt;
    mpz_class s = num.s_ / n;
    mpz_class t = num.t_ / n;
    if (mpz_odd_p(s.get_mpz_t()) != mpz_odd_p(t.get_mpz_t()))
        return std::nullopt;
    return QuadElement(std::move(s), std::move(t));
}

bool QuadElement::has_even_integer_shape() const
{
    return mpz_divisible_ui_p(s_.get_mpz_t(), 4) && mpz_divisible_ui_p(t_.get_mpz_t(), 4);
}

std::string QuadElement::to_string() const
{
    if (mpz_even_p(s_.get_mpz_t())) {
        mpz_class a = s_ / 2, b = t_ / 2;
        return a.get_str() + (b < 0 ? " - " : " + ") + mpz_class(abs(b)).get_str() + "*sqrt5";
    }
    return "(" + s_.get_str() + (t_ < 0 ? " - " : " + ") + mpz_class(abs(t_)).get_str() + "*sqrt5)/2";
}

mpz_class norm(const QuadElement & z)
{
    mpz_class n = z.s() * z.s() - 5 * z.t() * z.t();
    mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), 4);
    return n;
}

QuadElement multiply(const QuadElement & x, const QuadElement & y)
{
    mpz_class s = x.s() * y.s() + 5 * x.t() * y.t();
    mpz_class t = x.s() * y.t() + x.t() * y.s();
    mpz_divexact_ui(s.get_mpz_t(), s.get_mpz_t(), 2);
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), 2);
    return {s, t};
}

QuadElement omega_power(i64 k)
{
    // 2 omega^k = v_k + u_k sqrt5 for every integer k.
    return {lucas(k), fib(k)};
}

bool are_associate(const QuadElement & x, const QuadElement & y)
{
    if (y.is_zero() || x.is_zero())
        return x.is_zero() && y.is_zero();
    if (abs(norm(x)) != abs(norm(y)))
        return false;
    return x.divide(y).has_value();
}

namespace {

// log|z| in the real embedding with sqrt5 > 0, for a unit z. The larger
// embedding (|s| + |t| sqrt5)/2 is computed without cancellation and the
// smaller one is its reciprocal.
double log_abs_real_unit(const QuadElement & z)
{
    mpf_class s(abs(z.s()), 256), t(abs(z.t()), 256), r5(5, 256);
    r5 = sqrt(r5);
    mpf_class v = (s + t * r5) / 2;
    long exp2 = 0;
    double mant = mpf_get_d_2exp(&exp2, v.get_mpf_t());
    double big = std::log(mant) + double(exp2) * std::log(2.0);
    bool same_sign = (z.s() >= 0) == (z.t() >= 0) || z.t() == 0;
    return same_sign ? big : -big;
}

const double log_omega = std::log((1.0 + std::sqrt(5.0)) / 2.0);

// Exact comparison of |s1| + |t1| sqrt5 against |s2| + |t2| sqrt5.
int compare_size(const QuadElement & x, const QuadElement & y)
{
    mpz_class a = abs(x.s()) - abs(y.s());
    mpz_class b = abs(y.t()) - abs(x.t());
    // compare a with b*sqrt5
    if (a >= 0 && b <= 0)
        return (a == 0 && b == 0) ? 0 : 1;
    if (a <= 0 && b >= 0)
        return -1;
    mpz_class lhs = a * a, rhs = 5 * b * b;
    int c = cmp(lhs, rhs);
    return a > 0 ? c : -c;
}

QuadElement sign_normalized(const QuadElement & z)
{
    if (z.s() < 0 || (z.s() == 0 && z.t() < 0))
        return -z;
    return z;
}

QuadElement canonical_associate(const QuadElement & z)
{
    std::vector<QuadElement> candidates;
    for (i64 j = -6; j <= 6; ++j)
        candidates.push_back(sign_normalized(multiply(omega_power(j), z)));
    bool any_shape = std::any_of(candidates.begin(), candidates.end(),
                                 [](const QuadElement & c) { return c.has_even_integer_shape(); });
    const QuadElement * best = nullptr;
    for (const auto & c : candidates) {
        if (any_shape && !c.has_even_integer_shape())
            continue;
        if (!best) {
            best = &c;
            continue;
        }
        int cmp_size = compare_size(c, *best);
        if (cmp_size < 0 || (cmp_size == 0 && c.t() > best->t()))
            best = &c;
    }
    return *best;
}

} // namespace

std::optional<std::pair<int, i64>> unit_ratio(const QuadElement & x, const QuadElement & y, i64 max_abs_k)
{
    auto q = x.divide(y);
    if (!q)
        return std::nullopt;
    mpz_class n = norm(*q);
    if (n != 1 && n != -1)
        return std::nullopt;
    const i64 guess = std::llround(log_abs_real_unit(*q) / log_omega);
    for (i64 k = guess - 2; k <= guess + 2; ++k) {
        if (k > max_abs_k || k < -max_abs_k)
            continue;
        QuadElement w = omega_power(k);
        if (*q == w)
            return std::pair<int, i64>{1, k};
        if (*q == -w)
            return std::pair<int, i64>{-1, k};
    }
    return std::nullopt;
}

NormClassSet elements_of_norm(const mpz_class & target)
{
    if (target == 0)
        throw invalid_input("target norm must be nonzero");
    const mpz_class abs_n = abs(target);
    NormClassSet out{target, {}};

    // Each class has a member with |z|, |conj z| <= sqrt(|N| * omega); then
    // |t| sqrt5 <= 2 sqrt(|N| omega), i.e. 5 t^2 <= 4 |N| omega < 6.48 |N|.
    mpz_class t_max;
    mpz_class bound = (abs_n * 648) / 500 + 1;
    mpz_sqrt(t_max.get_mpz_t(), bound.get_mpz_t());
    t_max += 1;

    std::vector<QuadElement> found;
    for (mpz_class t = -t_max; t <= t_max; ++t) {
        for (int sign : {1, -1}) {
            mpz_class s2 = 4 * sign * abs_n + 5 * t * t;
            if (s2 < 0 || !mpz_perfect_square_p(s2.get_mpz_t()))
                continue;
            mpz_class s;
            mpz_sqrt(s.get_mpz_t(), s2.get_mpz_t());
            if (mpz_odd_p(s.get_mpz_t()) != mpz_odd_p(t.get_mpz_t()))
                continue;
            found.emplace_back(s, t);
            if (s != 0)
                found.emplace_back(-s, t);
        }
    }
    for (const auto & z : found) {
        bool known = std::any_of(out.representatives.begin(), out.representatives.end(),
                                 [&](const QuadElement & r) { return are_associate(z, r); });
        if (!known)
            out.representatives.push_back(canonical_associate(z));
    }
    std::sort(out.representatives.begin(), out.representatives.end(), [](const QuadElement & x, const QuadElement & y) {
        int c = cmp(abs(x.s()), abs(y.s()));
        if (c != 0)
            return c < 0;
        if (x.s() != y.s())
            return x.s() < y.s();
        return x.t() < y.t();
    });
    return out;
}

SequenceSpec sequence_from_element(const QuadElement & z)
{
    if (!z.has_even_integer_shape())
        throw representation_error("element " + z.to_string() + " is not of the form 2(a + b*sqrt5)");
    return {z.s() / 4, z.t() / 4};
}

std::optional<CurvePoint> curve_point_from_power(const SequenceSpec & spec, i64 n, unsigned long d)
{
    if (d == 0)
        throw invalid_input("power must be at least 1");
    mpz_class xn = fib_type(spec, n);
    auto root = exact_root(xn, d);
    if (!root)
        return std::nullopt;
    // 2(a + b sqrt5) omega^n = (a v_n + 5 b u_n) + x_n sqrt5
    mpz_class y = spec.a * lucas(n) + 5 * spec.b * fib(n);
    int sign = (n % 2 == 0) ? 1 : -1;
    return CurvePoint{*root, abs(y), sign};
}

std::optional<Decomposition> decompose_curve_point(const mpz_class & x, const mpz_class & y, unsigned long d,
                                                   const mpz_class & alpha, int sign, i64 index_ceiling)
{
    if (sign != 1 && sign != -1)
        throw invalid_input("sign must be +1 or -1");
    mpz_class xd;
    mpz_pow_ui(xd.get_mpz_t(), x.get_mpz_t(), d);
    if (y * y != 5 * xd * xd + sign * 4 * alpha)
        throw not_on_curve("(" + x.get_str() + ", " + y.get_str() + ") is not on Y^2 = 5X^" + std::to_string(2 * d) +
                           (sign > 0 ? " + " : " - ") + "4*" + alpha.get_str());
    if (alpha == 0)
        throw invalid_input("alpha must be nonzero");
    const QuadElement z(2 * y, 2 * xd);
    for (const auto & rep : elements_of_norm(4 * alpha).representatives) {
        if (!rep.has_even_integer_shape())
            continue;
        auto ratio = unit_ratio(z, rep, index_ceiling);
        if (!ratio)
            continue;
        return Decomposition{sequence_from_element(rep), ratio->second, ratio->first};
    }
    return std::nullopt;
}

} // namespace newcoef
