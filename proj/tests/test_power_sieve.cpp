#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "newcoef/power_sieve.hpp"

using namespace newcoef;

namespace {

std::set<u64> dth_powers_mod(unsigned long d, u64 q)
{
    std::set<u64> out;
    for (u64 x = 0; x < q; ++x)
        out.insert(powmod(x, d, q));
    return out;
}

bool is_dth_power(const mpz_class & x, unsigned long d)
{
    mpz_class r;
    if (x < 0 && d % 2 == 0)
        return false;
    const mpz_class ax = abs(x);
    return mpz_root(r.get_mpz_t(), ax.get_mpz_t(), d) != 0;
}

} // namespace

TEST_SUITE("power_sieve")
{
    TEST_CASE("d-th power residues")
    {
        CHECK_FALSE(is_dth_power_residue(5, 11, 23));
        for (u64 q : {3, 5, 7, 11, 23, 67, 89, 199, 331}) {
            for (unsigned long d : {3ul, 5ul, 7ul, 11ul}) {
                const auto ref = dth_powers_mod(d, q);
                for (u64 x = 0; x < q; ++x)
                    CHECK(is_dth_power_residue(x, d, q) == (ref.count(x) > 0));
            }
        }
    }

    TEST_CASE("allowed indices over one period")
    {
        for (SequenceSpec s : {SequenceSpec(1, 0), SequenceSpec(7, 4)}) {
            const auto got = power_residue_indices(s, 11, 23);
            REQUIRE(got.has_value());
            const u64 period = sequence_period(s, 23);
            CHECK(pisano_period(23) == 48);
            const auto ref = dth_powers_mod(11, 23);
            std::vector<u64> expect;
            for (u64 k = 0; k < period; ++k)
                if (ref.count(fib_type_mod(s, i64(k), 23)))
                    expect.push_back(k);
            CHECK(*got == expect);
        }
        // 19 divides 1 - 20
        CHECK_FALSE(power_residue_indices({1, 2}, 11, 19).has_value());
    }

    TEST_CASE("congruence system")
    {
        CongruenceSystem cs;
        CHECK(cs.refine(2, 1, {0}));
        CHECK(cs.admits(2, 2, 2));
        CHECK_FALSE(cs.admits(2, 2, 1));
        CHECK_FALSE(cs.refine(2, 1, {0, 1}));
        CHECK(cs.refine(3, 1, {}));
        CHECK(cs.is_empty());
    }

    TEST_CASE("congruence sieve verdicts")
    {
        CHECK(congruence_sieve({7, 4}, 11, 10'000).outcome == SieveOutcome::Eliminated);
        CHECK(congruence_sieve({7, 4}, 7, 10'000).outcome == SieveOutcome::Inconclusive);
        CHECK(congruence_sieve({1, 0}, 11, 10'000).outcome == SieveOutcome::Inconclusive);
        CHECK_THROWS_AS(congruence_sieve({7, 4}, 4, 100), invalid_exponent);
    }

    TEST_CASE("congruence sieve never eliminates a sequence containing a power")
    {
        std::mt19937_64 rng(31);
        std::uniform_int_distribution<int> coef(-30, 30);
        const unsigned long ds[] = {3, 5, 7};
        for (int i = 0; i < 300; ++i) {
            const SequenceSpec s(coef(rng), coef(rng));
            if (s.disc_norm() == 0)
                continue;
            const unsigned long d = ds[i % 3];
            const auto v = congruence_sieve(s, d, 200);
            if (v.outcome != SieveOutcome::Eliminated)
                continue;
            for (i64 n = -150; n <= 150; ++n)
                CHECK_MESSAGE(!is_dth_power(fib_type(s, n), d), s.to_string(), " n=", n);
        }
    }

    TEST_CASE("deep sieve at desk scale")
    {
        const auto v = deep_sieve({4, 1}, 11, mpz_class(10'000'000'000ul));
        CHECK(v.outcome == SieveOutcome::IndexExceeds);
        CHECK(v.nontrivial_powers.empty());
        for (i64 n : v.exceptions)
            CHECK(abs(fib_type({4, 1}, n)) == 1);
        for (i64 n = -3000; n <= 3000; ++n)
            if (is_dth_power(fib_type({4, 1}, n), 11))
                CHECK(std::find(v.exceptions.begin(), v.exceptions.end(), n) != v.exceptions.end());

        const auto fibs = deep_sieve({1, 0}, 11, mpz_class(1000));
        CHECK(fibs.outcome != SieveOutcome::Eliminated);
        for (i64 n : {-1, 1, 2})
            CHECK(std::find(fibs.exceptions.begin(), fibs.exceptions.end(), n) != fibs.exceptions.end());
    }

    TEST_CASE("brute force index scan")
    {
        const auto idx = brute_force_power_indices({1, 0}, 3, 100);
        std::vector<i64> expect;
        for (i64 n = -100; n <= 100; ++n)
            if (is_dth_power(fib(n), 3))
                expect.push_back(n);
        CHECK(idx == expect);
    }
}
