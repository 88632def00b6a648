#include <doctest.h>

#include <random>

#include "newcoef/core_sequences.hpp"

using namespace newcoef;

namespace {

// Walks the recurrence from (x_0, x_1) in both directions.
mpz_class walk(mpz_class x0, mpz_class x1, i64 n)
{
    if (n >= 0) {
        for (i64 i = 0; i < n; ++i) {
            mpz_class t = x0 + x1;
            x0 = x1;
            x1 = t;
        }
        return x0;
    }
    for (i64 i = 0; i > n; --i) {
        mpz_class prev = x1 - x0;
        x1 = x0;
        x0 = prev;
    }
    return x0;
}

u64 brute_period(u64 x0, u64 x1, u64 m)
{
    x0 %= m;
    x1 %= m;
    const u64 s0 = x0, s1 = x1;
    for (u64 k = 1;; ++k) {
        const u64 t = (x0 + x1) % m;
        x0 = x1;
        x1 = t;
        if (x0 == s0 && x1 == s1)
            return k;
    }
}

} // namespace

TEST_SUITE("sequences")
{
    TEST_CASE("fibonacci and lucas, including negative indices")
    {
        CHECK(fib(-1) == 1);
        CHECK(fib(-2) == -1);
        CHECK(fib(10) == 55);
        CHECK(lucas(-1) == -1);
        CHECK(lucas(0) == 2);
        for (i64 n = -60; n <= 60; ++n) {
            CHECK(fib(n) == walk(0, 1, n));
            CHECK(lucas(n) == walk(2, 1, n));
        }
    }

    TEST_CASE("fib_type")
    {
        CHECK(fib_type({7, 4}, 0) == 8);
        CHECK(fib_type({1, 2}, -1) == -1);
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<int> coef(-50, 50);
        std::uniform_int_distribution<i64> idx(-80, 80);
        for (int i = 0; i < 1000; ++i) {
            const SequenceSpec s(coef(rng), coef(rng));
            const i64 n = idx(rng);
            CHECK(fib_type(s, n) == walk(2 * s.b, s.a + s.b, n));
        }
    }

    TEST_CASE("reductions mod m")
    {
        CHECK(fib_type_mod({1, 0}, 10, 7) == 6);
        CHECK(fib_type_mod({7, 4}, 0, 5) == 3);
        std::mt19937_64 rng(12);
        std::uniform_int_distribution<int> coef(-1000, 1000);
        std::uniform_int_distribution<i64> idx(-300, 300);
        std::uniform_int_distribution<u64> mod(2, 5000);
        for (int i = 0; i < 1000; ++i) {
            const SequenceSpec s(coef(rng), coef(rng));
            const i64 n = idx(rng);
            const u64 m = mod(rng);
            mpz_class r = fib_type(s, n) % mpz_class(m);
            if (r < 0)
                r += m;
            CHECK(fib_type_mod(s, n, m) == r.get_ui());
        }
    }

    TEST_CASE("periods")
    {
        CHECK(pisano_period(2) == 3);
        CHECK(pisano_period(5) == 20);
        CHECK(pisano_period(10) == 60);
        CHECK(sequence_period({1, 0}, 7) == 16);
        CHECK(sequence_period({7, 4}, 3) == 8);
        // 19 divides a^2 - 5b^2 here, so the period can drop below pisano(19).
        CHECK(sequence_period({1, 2}, 19) == brute_period(4, 3, 19));
        for (u64 m = 2; m < 400; ++m)
            CHECK(pisano_period(m) == brute_period(0, 1, m));
    }

    TEST_CASE("degenerate spec")
    {
        CHECK_NOTHROW(SequenceSpec(1, 0).require_nondegenerate());
        CHECK_THROWS_AS(SequenceSpec(0, 0).require_nondegenerate(), invalid_input);
    }
}
