#include "newcoef/frey_modular.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace newcoef {

namespace {

std::vector<mpz_class> prime_divisors(const mpz_class & x)
{
    std::vector<mpz_class> out;
    if (abs(x) <= 1)
        return out;
    for (const auto & [p, e] : factor_mpz(x)) {
        (void)e;
        out.push_back(p);
    }
    return out;
}

unsigned ord2(const mpz_class & x) { return x == 0 ? 0 : unsigned(mpz_scan1(x.get_mpz_t(), 0)); }

int mod4(const mpz_class & x) { return int(mod_u64(x, 4)); }

std::string join_primes(const std::vector<mpz_class> & ps)
{
    std::string s;
    for (const auto & p : ps)
        s += (s.empty() ? "" : " * ") + p.get_str();
    return s.empty() ? "1" : s;
}

} // namespace

void FermatInstance::validate() const
{
    if (A == 0 || B == 0 || C == 0)
        throw invalid_input("A, B, C must be nonzero");
    if (n < 3 || !is_prime_u64(n))
        throw invalid_input("exponent n must be an odd prime");
    if (abs(C) > 1)
        for (const auto & [p, e] : factor_mpz(C))
            if (e > 1)
                throw invalid_input("C must be squarefree (" + p.get_str() + "^2 divides it)");
}

void require_solution(const FermatInstance & inst, const FreySolution & sol)
{
    inst.validate();
    mpz_class an, bn;
    mpz_pow_ui(an.get_mpz_t(), sol.a.get_mpz_t(), inst.n);
    mpz_pow_ui(bn.get_mpz_t(), sol.b.get_mpz_t(), inst.n);
    if (inst.A * an + inst.B * bn != inst.C * sol.c * sol.c)
        throw not_a_solution("(" + sol.a.get_str() + ", " + sol.b.get_str() + ", " + sol.c.get_str() +
                             ") does not satisfy A a^n + B b^n = C c^2");
}

bool is_primitive(const FermatInstance & inst, const FreySolution & sol)
{
    require_solution(inst, sol);
    const mpz_class x = inst.A * sol.a, y = inst.B * sol.b, z = inst.C * sol.c;
    return gcd(x, y) == 1 && gcd(x, z) == 1 && gcd(y, z) == 1;
}

bool gcd_of_three_is_one(const FermatInstance & inst, const FreySolution & sol)
{
    require_solution(inst, sol);
    mpz_class g = gcd(inst.A * sol.a, inst.B * sol.b);
    return gcd(g, mpz_class(inst.C * sol.c)) == 1;
}

SolutionShape shape_of(const FreySolution & sol)
{
    SolutionShape s;
    s.ab = sol.a * sol.b;
    s.ab_even = mpz_even_p(s.ab->get_mpz_t());
    s.b_mod4 = mod4(sol.b);
    return s;
}

std::optional<mpz_class> ConductorResult::value() const
{
    if (alpha.size() != 1 || ab_symbolic)
        return std::nullopt;
    mpz_class v = known_part;
    if (alpha[0] >= 0)
        v <<= alpha[0];
    else if (mpz_even_p(v.get_mpz_t()))
        v >>= 1;
    else
        return std::nullopt;
    return v;
}

namespace {

std::vector<int> alpha_candidates(const FermatInstance & inst, const SolutionShape & shape, std::string & why)
{
    const unsigned e = ord2(inst.B);
    if (e == 2) {
        const mpz_class q = inst.B * inst.C / 4;
        if (shape.b_mod4) {
            const int b = *shape.b_mod4;
            if (b == mod4(-q)) {
                why = "ord_2(B) = 2 and b = -BC/4 (mod 4): alpha = 1";
                return {1};
            }
            if (b == mod4(q)) {
                why = "ord_2(B) = 2 and b = BC/4 (mod 4): alpha = 2";
                return {2};
            }
            why = "ord_2(B) = 2 but b matches neither +-BC/4 (mod 4): alpha <= 4";
            return {-1, 0, 1, 2, 3, 4};
        }
        why = "ord_2(B) = 2 with b (mod 4) unknown: alpha in {1, 2}";
        return {1, 2};
    }
    if (e >= 2) {
        why = "4 | B: alpha in [-1, 4]";
        return {-1, 0, 1, 2, 3, 4};
    }
    why = "alpha in [-1, 6]";
    return {-1, 0, 1, 2, 3, 4, 5, 6};
}

} // namespace

ConductorResult frey_conductor(const FermatInstance & inst, const SolutionShape & shape)
{
    inst.validate();
    ConductorResult r;
    std::string why;
    r.alpha = alpha_candidates(inst, shape, why);
    mpz_class rad_input = inst.A * inst.B;
    if (shape.ab) {
        if (*shape.ab == 0)
            throw invalid_input("ab must be nonzero");
        rad_input *= *shape.ab;
    } else {
        r.ab_symbolic = true;
        if (shape.ab_even)
            rad_input *= 2;
    }
    const auto primes = prime_divisors(rad_input);
    r.known_part = inst.C * inst.C;
    for (const auto & p : primes)
        r.known_part *= p;
    std::string alpha_text = r.alpha.size() == 1 ? std::to_string(r.alpha[0])
                                                 : "alpha, alpha in {" + std::to_string(r.alpha.front()) + ".." +
                                                       std::to_string(r.alpha.back()) + "}";
    r.formula = "2^" + alpha_text + " * " + mpz_class(inst.C * inst.C).get_str() + " * " + join_primes(primes) +
                (r.ab_symbolic ? " * rad(ab)" : "") + "  [" + why + "]";
    return r;
}

ConductorResult frey_conductor(const FermatInstance & inst, const FreySolution & sol)
{
    if (!is_primitive(inst, sol))
        throw precondition_error("solution is not primitive");
    return frey_conductor(inst, shape_of(sol));
}

LevelResult lowered_level(const FermatInstance & inst, const SolutionShape & shape)
{
    inst.validate();
    if (inst.n < 7)
        throw inapplicable("hypothesis n >= 7 fails (n = " + std::to_string(inst.n) + ")");
    const mpz_class abc = inst.A * inst.B * inst.C;
    if (mpz_divisible_ui_p(abc.get_mpz_t(), inst.n))
        throw inapplicable("hypothesis n does not divide ABC fails");

    LevelResult out;
    std::string why;
    const auto alphas = alpha_candidates(inst, shape, why);
    out.trace.push_back(why);

    const bool beta_is_one = shape.ab_even && mpz_odd_p(mpz_class(inst.A * inst.B).get_mpz_t());
    out.trace.push_back(beta_is_one ? "ab even and AB odd: beta = 1" : "beta = alpha");

    mpz_class factor = 1; // the prime 2 is included when it divides AB
    for (const auto & p : prime_divisors(inst.C))
        if (p != inst.n)
            factor *= p * p;
    for (const auto & q : prime_divisors(inst.A * inst.B))
        if (q != inst.n)
            factor *= q;
    out.trace.push_back("prod_{p | C} p^2 * prod_{q | AB} q = " + factor.get_str());

    std::set<mpz_class> levels;
    for (int alpha : alphas) {
        const int beta = beta_is_one ? 1 : alpha;
        mpz_class level = factor;
        if (beta >= 0) {
            level <<= beta;
        } else if (mpz_even_p(level.get_mpz_t())) {
            level >>= 1;
        } else {
            out.trace.push_back("beta = -1 gives a non-integral level; skipped");
            continue;
        }
        levels.insert(level);
    }
    out.levels.assign(levels.begin(), levels.end());
    std::string list;
    for (const auto & l : out.levels)
        list += (list.empty() ? "" : ", ") + l.get_str();
    out.trace.push_back("level in {" + list + "}");
    return out;
}

LevelResult lowered_level(const FermatInstance & inst, const FreySolution & sol)
{
    if (!is_primitive(inst, sol))
        throw inapplicable("hypothesis 'primitive solution' fails");
    if (abs(sol.a * sol.b) == 1)
        throw inapplicable("hypothesis ab != +-1 fails");
    return lowered_level(inst, shape_of(sol));
}

NormTestResult norm_test(const QuadCoords & cp, const mpz_class & field_disc, u64 p, const mpz_class & n)
{
    if (n == 0)
        throw invalid_input("n must be nonzero");
    if (!is_prime_u64(p))
        throw invalid_prime(std::to_string(p) + " is not prime");
    mpz_class D;
    if (field_disc == 1) {
        if (cp.y != 0)
            throw invalid_input("rational coefficient must have y = 0");
        D = 0;
    } else if (mpz_divisible_ui_p(field_disc.get_mpz_t(), 4)) {
        D = field_disc / 4;
    } else if (mod_u64(field_disc, 4) == 1) {
        D = field_disc;
    } else {
        throw invalid_input("not a quadratic field discriminant: " + field_disc.get_str());
    }
    std::set<mpz_class> norms;
    const u64 rmax = u64(std::sqrt(double(p)));
    for (u64 r = 0; r <= rmax + 1; ++r) {
        if (r * r > p)
            break;
        for (int sign : {1, -1}) {
            const mpz_class x = cp.x + sign * 2 * mpz_class(r);
            norms.insert(field_disc == 1 ? x : mpz_class(x * x - D * cp.y * cp.y));
        }
    }
    NormTestResult out;
    out.norms.assign(norms.begin(), norms.end());
    out.divisible = std::any_of(out.norms.begin(), out.norms.end(),
                                [&](const mpz_class & v) { return mpz_divisible_p(v.get_mpz_t(), n.get_mpz_t()) != 0; });
    return out;
}

const std::vector<IrrationalNewform> & level380_irrational_newforms()
{
    // c_3 over Q(sqrt 2) is -2 + sqrt 2: it meets the Hasse bound |c_3| <= 2 sqrt 3 in
    // both embeddings and gives the norm set {2, -2, 14}.
    static const std::vector<IrrationalNewform> forms{
        {"380.2.a.c", 8, 3, {-2, 1}},
        {"380.2.a.d", 12, 3, {1, 1}},
    };
    return forms;
}

PointCount count_points_fp(i64 a2, i64 a4, u64 p)
{
    if (!is_prime_u64(p))
        throw invalid_prime(std::to_string(p) + " is not prime");
    if (p > 10'000'000)
        throw invalid_input("naive point count limited to p <= 10^7");
    auto red = [p](i64 v) { return u64(((v % i64(p)) + i64(p)) % i64(p)); };
    const u64 A2 = red(a2), A4 = red(a4);
    // discriminant 16 a4^2 (a2^2 - 4 a4)
    const u64 disc = mulmod(mulmod(16 % p, mulmod(A4, A4, p), p), (mulmod(A2, A2, p) + p - mulmod(4 % p, A4, p)) % p, p);
    PointCount out;
    if (disc == 0) {
        out.singular = true;
        return out;
    }
    std::vector<u64> squares(p, 0);
    for (u64 y = 0; y < p; ++y)
        ++squares[mulmod(y, y, p)];
    u64 count = 1;
    for (u64 x = 0; x < p; ++x) {
        u64 rhs = (mulmod(mulmod(x, x, p), x, p) + mulmod(A2, mulmod(x, x, p), p) + mulmod(A4, x, p)) % p;
        count += squares[rhs];
    }
    out.count = count;
    out.trace = i64(p + 1) - i64(count);
    return out;
}

} // namespace newcoef
