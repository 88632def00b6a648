#include <doctest.h>

#include <numeric>

#include "newcoef/newform_engine.hpp"

using namespace newcoef;

namespace {

// q prod (1 - q^n)^24 by dense multiplication, one factor at a time.
std::vector<mpz_class> dense_delta(std::size_t bound)
{
    std::vector<mpz_class> c(bound + 1, 0);
    c[0] = 1; // coefficient of q^{k+1} stored at k
    for (std::size_t n = 1; n <= bound; ++n)
        for (int rep = 0; rep < 24; ++rep)
            for (std::size_t k = bound; k >= n; --k)
                c[k] -= c[k - n];
    std::vector<mpz_class> tau(bound + 1, 0);
    for (std::size_t k = 1; k <= bound; ++k)
        tau[k] = c[k - 1];
    return tau;
}

mpz_class pow_ui(u64 b, unsigned long e)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), b, e);
    return r;
}

} // namespace

TEST_SUITE("newform_engine")
{
    TEST_CASE("tau against the series and known values")
    {
        const auto t = tau_table(10'000);
        CHECK(t[0] == 0);
        CHECK(t[1] == 1);
        CHECK(t[2] == -24);
        CHECK(t[3] == 252);
        CHECK(t[4] == -1472);
        CHECK(t[6] == -6048);
        CHECK(t[7] == -16744);
        CHECK(t[12] == -370944);
        const auto d = dense_delta(400);
        for (std::size_t n = 1; n <= 400; ++n)
            CHECK(t[n] == d[n]);
        CHECK(tau(7) == -16744);
        CHECK(tau(9999) == t[9999]);
    }

    TEST_CASE("multiplicativity and the Hecke relation over the table")
    {
        const auto t = tau_table(10'000);
        for (std::size_t m = 2; m <= 100; ++m)
            for (std::size_t n = 2; m * n <= 10'000; ++n)
                if (std::gcd(m, n) == 1)
                    CHECK(t[m * n] == t[m] * t[n]);
        for (u64 p : {2, 3, 5, 7, 11, 13})
            for (std::size_t n = p; p * n <= 10'000; n += p)
                CHECK(t[p] * t[n] == t[p * n] + pow_ui(p, 11) * t[n / p]);
    }

    TEST_CASE("Hecke prime powers")
    {
        CHECK(hecke_prime_power(-24, 2, 12, 2) == -1472);
        CHECK(hecke_prime_power(252, 3, 12, 4) == 1665188361);
        CHECK(hecke_prime_power(252, 3, 12, 0) == 1);
        CHECK(hecke_prime_power(252, 3, 12, 1) == 252);
    }

    TEST_CASE("coefficient assembly")
    {
        const auto delta = NewformParams::delta(100);
        CHECK(coefficient(delta, 12) == -370944);
        CHECK(coefficient(delta, 1) == 1);
        CHECK(delta.hasse_violations().empty());
        CHECK_THROWS_AS(coefficient(delta, 101), incomplete_data);

        NewformParams level4;
        level4.level = 4;
        level4.prime_coefficients = {{3, 252}};
        CHECK(coefficient(level4, 4) == 0);
        CHECK(coefficient(level4, 12) == 0);

        NewformParams level2;
        level2.level = 2;
        level2.prime_coefficients = {{2, 32}, {3, 252}};
        CHECK(coefficient(level2, 8) == 32 * 32 * 32);
        CHECK(coefficient(level2, 24) == 32 * 32 * 32 * 252);
        level2.prime_coefficients[2] = 30;
        CHECK_THROWS_AS(coefficient(level2, 2), invalid_input);
    }

    TEST_CASE("Ramanujan congruence mod 5")
    {
        CHECK(ramanujan_mod5_check(10'000).empty());
    }

    TEST_CASE("admissible d")
    {
        CHECK(admissible_d_values(19) == std::vector<u64>{3, 5, 19});
        CHECK(admissible_d_values(5) == std::vector<u64>{3, 5});
        CHECK(admissible_d_values(31) == std::vector<u64>{3, 5, 31});
    }

    TEST_CASE("curve points from coefficients")
    {
        const auto c3 = curve_point_C(3, 252, 12);
        CHECK(c3.alpha == -113643);
        CHECK(c3.alpha == tau(9));
        CHECK(curve_point_C(2, -24, 12).alpha == -1472);

        const auto h3 = curve_point_H(3, 252, 12);
        CHECK(h3.y == -404433);
        CHECK(h3.y * h3.y - 5 * pow_ui(3, 22) == 4 * mpz_class(1665188361));
        CHECK(curve_point_H(2, -24, 12).y == -4992);
    }

    TEST_CASE("H-curve identity for many primes and weights")
    {
        for (unsigned w : {12u, 16u, 18u, 20u, 22u, 26u})
            for (u64 p : primes_up_to(400)) {
                const mpz_class a = (w == 12) ? tau(p) : mpz_class(long(p % 97) - 48);
                const auto h = curve_point_H(p, a, w);
                const mpz_class P = pow_ui(p, w - 1);
                CHECK(h.y * h.y == 5 * P * P + 4 * hecke_prime_power(a, p, w, 4));
            }
    }

    TEST_CASE("divisor constraint")
    {
        CHECK(divisor_constraint_check(3, 1665188361));
        CHECK(divisor_constraint_check(2, tau(16)));
        CHECK_FALSE(divisor_constraint_check(2, 0));
        CHECK(divisor_constraint_check(2, 1));
        CHECK(divisor_constraint_check(2, -1));
        CHECK_FALSE(divisor_constraint_check(7, 13)); // 13 = 3 mod 5
        for (u64 p : primes_up_to(60))
            CHECK(divisor_constraint_check(p, hecke_prime_power(tau(p), p, 12, 4)));
    }

    TEST_CASE("exclusion input validation")
    {
        CHECK_THROWS_AS(exclude_value(21, 12), invalid_input);
        CHECK_THROWS_AS(exclude_value(38, 12), invalid_input);
        CHECK_THROWS_AS(exclude_value(1, 12), invalid_input);
        CHECK_THROWS_AS(exclude_value(19, 4), invalid_input);
        CHECK_THROWS_AS(exclude_value(19, 11), invalid_input);
    }

    TEST_CASE("exclusion of -5")
    {
        const auto rep = exclude_value(-5, 12);
        CHECK(rep.excluded);
        CHECK(rep.ell == 5);
        CHECK(rep.ell_exponent == 1);
        REQUIRE(rep.cases.size() == 2);
        CHECK(rep.cases[0].d == 3);
        CHECK(rep.cases[0].route == "mod-5 congruence");
        CHECK(rep.cases[1].d == 5);
        CHECK_FALSE(rep.assumptions.empty());
    }
}
