#include <doctest.h>

#include <random>

#include <boost/math/constants/constants.hpp>

#include "newcoef/analytic_bounds.hpp"

using namespace newcoef;

namespace {

Real ln_of(unsigned long b, unsigned long e) { return Real(e) * log(Real(b)); }

bool near(const Real & a, const Real & b, const Real & tol = Real("1e-80"))
{
    return abs(a - b) <= tol * std::max(Real(1), abs(b));
}

} // namespace

TEST_SUITE("analytic_bounds")
{
    TEST_CASE("c3")
    {
        CHECK(near(c3(11, 10).ln(), ln_of(3, 37) + ln_of(11, 185)));
        CHECK(near(c3(2, 0).ln(), ln_of(3, 27) + ln_of(2, 18)));
        CHECK(near(c3(2, 1).ln(), ln_of(3, 28) + ln_of(2, 50)));
        // exact integer route
        mpz_class v, w;
        mpz_ui_pow_ui(v.get_mpz_t(), 3, 37);
        mpz_ui_pow_ui(w.get_mpz_t(), 11, 185);
        CHECK(near(c3(11, 10).ln(), LogMagnitude::from_integer(v * w).ln()));
    }

    TEST_CASE("Thue solution bound")
    {
        const auto H = LogMagnitude::from_value(Real("1e50"));
        const auto B = LogMagnitude::from_value(4);
        const auto b = thue_solution_bound(Real("4e32"), H, B, 11, 10);
        CHECK(b.log10_ln() > 277);
        CHECK(b.log10_ln() <= 278);
        CHECK(50 * log(Real(10)) + 2 * log(Real(2)) < Real("4e32"));
        CHECK(thue_solution_bound(Real("8e32"), H, B, 11, 10) > b);
        CHECK_THROWS_AS(thue_solution_bound(0, H, B, 11, 10), invalid_input);
    }

    TEST_CASE("monotone in every argument")
    {
        std::mt19937_64 rng(51);
        std::uniform_int_distribution<unsigned long> n(2, 40), r(0, 30);
        std::uniform_real_distribution<double> R(0.5, 1e6);
        const auto H = LogMagnitude::from_value(Real("1e10"));
        const auto B = LogMagnitude::from_value(7);
        for (int i = 0; i < 1000; ++i) {
            const auto a = n(rng), b = r(rng);
            CHECK(c3(a + 1, b) > c3(a, b));
            CHECK(c3(a, b + 1) > c3(a, b));
            const Real rr = R(rng);
            CHECK(thue_solution_bound(2 * rr, H, B, a, b) > thue_solution_bound(rr, H, B, a, b));
        }
    }

    TEST_CASE("regulator bound")
    {
        const Real pi = boost::math::constants::pi<Real>();
        CHECK(near(exp(regulator_function(5, 2, 2, 0, 2, 2).ln()), 20 / (pi * pi), Real("1e-60")));
        CHECK(log(Real("0.4812118250596034474977589")) < regulator_function(5, 2, 2, 0, 2, 2).ln());
        const auto at0 = regulator_function(Real("1e32"), 11, 11, 0, 2, 2);
        CHECK(at0 <= LogMagnitude::from_value(Real("4e32")));
        CHECK(regulator_bound(Real("1e32"), 11, 11, 0, 2) <= at0);
        CHECK_THROWS_AS(regulator_bound(5, 3, 2, 0, 2), invalid_input);
    }

    TEST_CASE("psi and level bounds")
    {
        CHECK(dedekind_psi(1) == 1);
        CHECK(dedekind_psi(13) == 14);
        CHECK(dedekind_psi(380) == 720);
        CHECK(dedekind_psi(64) == 96);
        CHECK(dedekind_psi(80) == 144);
        CHECK(near(irrational_level_bound(380).ln(), ln_of(720, 61)));
        CHECK(near(irrational_level_bound(11).ln(), ln_of(12, 2)));
        CHECK(irrational_level_bound(1).ln() == 0);
        CHECK(near(f_C(1).ln(), ln_of(96, 9)));
        CHECK(near(f_H(1).ln(), ln_of(144, 13)));
        CHECK(f_C(-7) >= LogMagnitude::from_value(17));
        CHECK_THROWS_AS(f_C(0), invalid_input);
    }

    TEST_CASE("bound chain with the default constants")
    {
        const auto rep = chained_bound_check();
        CHECK(rep.phi_cubed_exceeds_e);
        CHECK(rep.x_power_bound.log10_ln() <= 281);
        CHECK(rep.growth_lower.log10_ln() >= 298);
        CHECK(rep.closed);
        ChainParameters small;
        small.index_bound = 1000;
        CHECK_FALSE(chained_bound_check(small).closed);
    }

    TEST_CASE("growth offset")
    {
        CHECK(growth_offset({1, 0}) == 0u);
        for (SequenceSpec s : {SequenceSpec(1, 2), SequenceSpec(4, -1), SequenceSpec(14, 5), SequenceSpec(6, -5)}) {
            const auto k = growth_offset(s);
            REQUIRE(k.has_value());
            // |x_n| >= |u_{n-k}| on a stretch of positive n
            for (i64 n = i64(*k); n < 200; ++n)
                CHECK(abs(fib_type(s, n)) >= abs(fib(n - i64(*k))));
        }
    }
}
