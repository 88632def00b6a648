#include <doctest.h>

#include <random>

#include "newcoef/frey_modular.hpp"

using namespace newcoef;

namespace {

// Level for C = 1, ord_2(B) = 2, odd A, ab odd: 2^alpha * rad(AB) without n.
mpz_class level_oracle(long A, long B, int b_mod4, unsigned long n)
{
    const long bc4 = ((B / 4) % 4 + 4) % 4;
    const int alpha = (b_mod4 == (4 - bc4) % 4) ? 1 : 2;
    mpz_class level = mpz_class(1) << alpha;
    long ab = std::labs(A * B);
    for (long q = 2; q <= ab; ++q) {
        if (ab % q)
            continue;
        if (q != long(n))
            level *= q;
        while (ab % q == 0)
            ab /= q;
    }
    return level;
}

int brute_points(i64 a2, i64 a4, i64 p)
{
    int count = 1;
    for (i64 x = 0; x < p; ++x)
        for (i64 y = 0; y < p; ++y)
            if (((y * y - x * x * x - a2 * x * x - a4 * x) % p + p) % p == 0)
                ++count;
    return count;
}

} // namespace

TEST_SUITE("frey_modular")
{
    TEST_CASE("instances and solutions")
    {
        CHECK_THROWS_AS(FermatInstance({5, 76, 4, 23}).validate(), invalid_input);
        CHECK_THROWS_AS(FermatInstance({5, 76, 1, 9}).validate(), invalid_input);
        const FermatInstance inst{5, 76, 1, 23};
        CHECK(is_primitive(inst, {1, 1, 9}));
        CHECK(gcd_of_three_is_one(inst, {1, 1, 9}));
        CHECK_THROWS_AS(is_primitive(inst, {1, 1, 8}), not_a_solution);
        CHECK_THROWS_AS(lowered_level(inst, FreySolution{1, 1, 9}), inapplicable);
        CHECK(is_primitive({1, 1, 1, 3}, {1, 2, 3}));   // 1 + 2^3 = 3^2
        CHECK_FALSE(is_primitive({1, 1, 1, 3}, {9, 18, 81})); // 9^3 + 18^3 = 81^2
    }

    TEST_CASE("conductor")
    {
        SolutionShape s;
        s.b_mod4 = 1;
        const auto r = frey_conductor(FermatInstance{5, 76, 1, 23}, s);
        CHECK(r.alpha == std::vector<int>{1});
        CHECK(r.ab_symbolic);
        CHECK(r.known_part == 190);
        const auto u = frey_conductor(FermatInstance{5, 4, 1, 23}, SolutionShape{});
        CHECK(u.alpha == std::vector<int>{1, 2});
        SolutionShape known;
        known.b_mod4 = 3;
        known.ab = 7;
        const auto k = frey_conductor(FermatInstance{5, 76, 1, 23}, known);
        REQUIRE(k.value().has_value());
        CHECK(*k.value() == 4 * 2 * 5 * 19 * 7);
    }

    TEST_CASE("lowered level")
    {
        SolutionShape b1;
        b1.b_mod4 = 1;
        CHECK(lowered_level(FermatInstance{5, 76, 1, 23}, b1).levels == std::vector<mpz_class>{380});
        CHECK(lowered_level(FermatInstance{5, 4, 1, 23}, SolutionShape{}).levels == std::vector<mpz_class>{20, 40});
        CHECK_THROWS_AS(lowered_level(FermatInstance{5, 76, 1, 5}, b1), inapplicable);
        CHECK_THROWS_AS(lowered_level(FermatInstance{5, 76, 1, 19}, b1), inapplicable);
    }

    TEST_CASE("lowered level against a direct formula")
    {
        std::mt19937_64 rng(61);
        const long odd_primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
        std::uniform_int_distribution<int> pick(0, 11), bm(0, 1);
        for (int i = 0; i < 1000; ++i) {
            long A = odd_primes[pick(rng)], Bq = odd_primes[pick(rng)];
            if (A == Bq)
                continue;
            const long B = 4 * Bq * (bm(rng) ? 1 : -1);
            const unsigned long n = 43;
            SolutionShape s;
            s.b_mod4 = bm(rng) ? 1 : 3;
            const auto r = lowered_level(FermatInstance{A, B, 1, n}, s);
            REQUIRE(r.levels.size() == 1);
            CHECK(r.levels[0] == level_oracle(A, B, *s.b_mod4, n));
        }
    }

    TEST_CASE("norm test")
    {
        const auto q2 = norm_test({-2, 1}, 8, 3, 23);
        CHECK(q2.norms == std::vector<mpz_class>{-2, 2, 14});
        CHECK_FALSE(q2.divisible);
        const auto q3 = norm_test({1, 1}, 12, 3, 23);
        CHECK(q3.norms == std::vector<mpz_class>{-2, 6});
        CHECK_FALSE(q3.divisible);
        CHECK(norm_test({1, 1}, 12, 3, 3).divisible);
        // rational even c_p with p >= (c_p/2)^2: r = |c_p|/2 makes c_p -+ 2r vanish
        for (long c : {-6, -2, 0, 2, 4, 8}) {
            const u64 p = c == 8 ? 17 : c == -6 ? 11 : 5;
            CHECK(norm_test({c, 0}, 1, p, 10007).divisible);
        }
        const auto & forms = level380_irrational_newforms();
        REQUIRE(forms.size() == 2);
        CHECK(forms[0].label == "380.2.a.c");
        CHECK(forms[1].label == "380.2.a.d");
    }

    TEST_CASE("point counts")
    {
        const auto c0 = count_points_fp(0, 19, 3);
        CHECK_FALSE(c0.singular);
        CHECK(c0.count == 4);
        CHECK(c0.trace == 0);
        CHECK(count_points_fp(1, 19, 3).singular);
        for (i64 c = 0; c < 3; ++c) {
            const auto r = count_points_fp(c, 19, 3);
            CHECK((r.singular || r.trace != 2));
        }
        for (u64 p : {5, 7, 11, 13, 29, 31})
            for (i64 a2 = -3; a2 <= 3; ++a2)
                for (i64 a4 = -3; a4 <= 3; ++a4) {
                    const auto r = count_points_fp(a2, a4, p);
                    const i64 P = i64(p);
                    const i64 disc = ((a4 * a4 % P) * ((a2 * a2 - 4 * a4) % P) % P + P) % P;
                    CHECK(r.singular == (disc == 0));
                    if (!r.singular)
                        CHECK(int(r.count) == brute_points(a2, a4, P));
                }
    }
}
