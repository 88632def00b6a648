#include "newcoef/analytic_bounds.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace newcoef {

namespace {

Real ln_of(unsigned long x) { return log(Real(x)); }

const Real & pi() {
    static const Real value = boost::math::constants::pi<Real>();
    return value;
}

} // namespace

LogMagnitude LogMagnitude::from_value(const Real & x)
{
    if (x <= 0)
        throw invalid_input("log-magnitudes represent positive quantities only");
    return LogMagnitude(log(x));
}

LogMagnitude LogMagnitude::from_integer(const mpz_class & x)
{
    if (x <= 0)
        throw invalid_input("log-magnitudes represent positive quantities only");
    return LogMagnitude(log(Real(x.get_str())));
}

LogMagnitude LogMagnitude::power(const Real & base, const Real & exponent)
{
    if (base <= 0)
        throw invalid_input("power base must be positive");
    return LogMagnitude(exponent * log(base));
}

Real LogMagnitude::log10() const { return ln_ / log(Real(10)); }

Real LogMagnitude::log10_ln() const
{
    if (ln_ <= 0)
        throw invalid_input("log10(ln x) needs x > 1");
    return boost::multiprecision::log10(ln_);
}

Real log_star(const Real & x)
{
    Real l = log(x);
    return l > 1 ? l : Real(1);
}

LogMagnitude c3(unsigned long n, unsigned long r)
{
    if (n < 2)
        throw invalid_input("c3 needs n >= 2");
    Real ln = Real(r + 27) * ln_of(3) + Real(7 * r + 19) * ln_of(r + 1) + Real(2 * n + 6 * r + 14) * ln_of(n);
    return LogMagnitude::from_ln(ln);
}

LogMagnitude thue_solution_bound(const Real & regulator, const LogMagnitude & height, const LogMagnitude & rhs_bound,
                                 unsigned long n, unsigned long r)
{
    if (regulator <= 0)
        throw invalid_input("regulator must be positive");
    const Real c = exp(c3(n, r).ln());
    return LogMagnitude::from_ln(c * regulator * log_star(regulator) * (regulator + height.ln() + rhs_bound.ln()));
}

LogMagnitude regulator_function(const Real & L, unsigned degree, unsigned u, unsigned v, unsigned w, const Real & s)
{
    if (degree != u + 2 * v)
        throw invalid_input("degree must equal u + 2v");
    if (L <= 0 || w < 1)
        throw invalid_input("need L > 0 and w >= 1");
    if (s <= 1)
        throw invalid_input("s must exceed 1");
    const Real ln_a = -Real(v) * ln_of(2) - Real(degree) / 2 * log(pi()) + log(L) / 2;
    Real ln = -Real(u) * ln_of(2) + ln_of(w) + s * ln_a;
    if (u)
        ln += Real(u) * boost::math::lgamma(s / 2);
    if (v)
        ln += Real(v) * boost::math::lgamma(s);
    ln += Real(degree + 1) * log(s);
    if (degree != 1)
        ln += (Real(1) - Real(degree)) * log(s - 1);
    return LogMagnitude::from_ln(ln);
}

LogMagnitude regulator_bound(const Real & L, unsigned degree, unsigned u, unsigned v, unsigned w)
{
    LogMagnitude best = regulator_function(L, degree, u, v, w, Real(2));
    for (int t = 1; t < 1000; ++t) {
        LogMagnitude f = regulator_function(L, degree, u, v, w, Real(2) - Real(t) / 1000);
        if (f < best)
            best = f;
    }
    return best;
}

mpz_class dedekind_psi(const mpz_class & N)
{
    if (N < 1)
        throw invalid_input("psi needs N >= 1");
    mpz_class out = N;
    if (N == 1)
        return out;
    for (const auto & [p, e] : factor_mpz(N)) {
        (void)e;
        out = out / p * (p + 1);
    }
    return out;
}

LogMagnitude irrational_level_bound(const mpz_class & N)
{
    const mpz_class psi = dedekind_psi(N);
    const Real rp(psi.get_str());
    return LogMagnitude::power(rp, 1 + rp / 12);
}

namespace {

mpz_class radical_mpz(const mpz_class & m)
{
    mpz_class r = 1;
    if (abs(m) == 1)
        return r;
    for (const auto & [p, e] : factor_mpz(m)) {
        (void)e;
        r *= p;
    }
    return r;
}

LogMagnitude at_least_17(const LogMagnitude & x)
{
    LogMagnitude floor = LogMagnitude::from_value(17);
    return x < floor ? floor : x;
}

} // namespace

LogMagnitude f_C(const mpz_class & m)
{
    if (m == 0)
        throw invalid_input("f_C needs m != 0");
    return at_least_17(irrational_level_bound(64 * radical_mpz(m)));
}

LogMagnitude f_H(const mpz_class & m)
{
    if (m == 0)
        throw invalid_input("f_H needs m != 0");
    return at_least_17(irrational_level_bound(16 * radical_mpz(5 * m)));
}

std::optional<unsigned> growth_offset(const SequenceSpec & spec)
{
    for (unsigned k = 0; k <= 5; ++k) {
        mpz_class x0 = fib_type(spec, k), x1 = fib_type(spec, k + 1);
        if ((x0 >= 0 && x1 >= 1) || (x0 <= 0 && x1 <= -1))
            return k;
    }
    return std::nullopt;
}

ChainReport chained_bound_check(const ChainParameters & p)
{
    ChainReport rep;
    const Real n = p.degree;
    rep.c3 = c3(p.degree, p.unit_rank);
    rep.steps.push_back({"c3(n, r)", rep.c3});
    rep.steps.push_back({"regulator R (taken as 4L)", LogMagnitude::from_value(p.regulator)});

    rep.solution_bound = thue_solution_bound(p.regulator, LogMagnitude::from_value(p.height_bound),
                                             LogMagnitude::from_value(p.rhs_bound), p.degree, p.unit_rank);
    rep.steps.push_back({"max(|A|, |B|) for the Thue equations", rep.solution_bound});

    // |A + B omega| <= (1 + |omega|) max(|A|, |B|)
    rep.unit_combination_bound = LogMagnitude::from_ln(log(1 + p.omega_bound) + rep.solution_bound.ln());
    rep.steps.push_back({"|A + B omega|", rep.unit_combination_bound});

    // |y| <= 2 |gamma| |A + B omega|^n
    rep.y_bound = LogMagnitude::from_ln(log(2 * p.gamma_bound) + n * rep.unit_combination_bound.ln());
    rep.steps.push_back({"|y|", rep.y_bound});

    // |x^n| <= |x^{2n}| = (y^2 -+ 4 ell) / 5 <= y^2 (1 + 4 ell) / 5
    rep.x_power_bound = LogMagnitude::from_ln(2 * rep.y_bound.ln() + log(Real(1 + 4 * p.ell)) - log(Real(5)));
    rep.steps.push_back({"|x^n| from the curve", rep.x_power_bound});

    // |n| > index bound gives |x_n| >= |u_m| with m = bound + 1 - k, and
    // |u_m| >= phi^m / sqrt5 - 1 >= phi^m / (2 sqrt5).
    const Real phi = (1 + sqrt(Real(5))) / 2;
    const Real m = Real(mpz_class(p.index_bound + 1 - p.growth_offset).get_str());
    rep.growth_lower = LogMagnitude::from_ln(m * log(phi) - log(2 * sqrt(Real(5))));
    rep.steps.push_back({"|x_n| lower bound from the index bound", rep.growth_lower});

    rep.phi_cubed_exceeds_e = phi * phi * phi > exp(Real(1));
    rep.closed = rep.growth_lower > rep.x_power_bound && rep.phi_cubed_exceeds_e;
    return rep;
}

} // namespace newcoef
