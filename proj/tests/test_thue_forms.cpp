#include <doctest.h>

#include <cmath>
#include <random>

#include "newcoef/newform_engine.hpp"
#include "newcoef/thue_forms.hpp"

using namespace newcoef;

namespace {

std::vector<mpz_class> coeffs(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

} // namespace

TEST_SUITE("thue_forms")
{
    TEST_CASE("small forms")
    {
        CHECK(build_F(1).coefficients == coeffs({1, -1}));
        CHECK(build_F(2).coefficients == coeffs({1, -3, 1}));
        CHECK(build_Fhat(3).coefficients == coeffs({1, 1}));
        CHECK(build_Fhat(5).coefficients == coeffs({1, 1, -1}));
        CHECK(evaluate(build_F(2), 1, 4) == 5);
        CHECK(evaluate(build_Fhat(5), 1, 2) == 5);
        CHECK_THROWS_AS(build_F(0), invalid_degree);
        CHECK_THROWS_AS(build_Fhat(9), invalid_input);
    }

    TEST_CASE("F_{2m}(p^11, tau(p)^2) = tau(p^{2m})")
    {
        // series coefficients where the table reaches, the Hecke recurrence beyond
        const auto t = tau_table(10'000);
        for (u64 p : {2, 3, 5, 7, 11}) {
            mpz_class x;
            mpz_ui_pow_ui(x.get_mpz_t(), p, 11);
            u64 pk = p * p;
            for (unsigned m = 1; m <= 6; ++m, pk *= p * p) {
                const mpz_class v = evaluate(build_F(m), x, t[p] * t[p]);
                CHECK(v == hecke_prime_power(t[p], p, 12, 2 * m));
                if (pk < t.size())
                    CHECK(v == t[pk]);
            }
        }
    }

    TEST_CASE("F_{l-1}(X, Y) = Fhat_l(X, Y - 2X)")
    {
        for (u64 l : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31})
            CHECK(shift_form(build_Fhat(l), -2) == build_F(unsigned((l - 1) / 2)));
        std::mt19937_64 rng(41);
        std::uniform_int_distribution<long> c(-10'000, 10'000);
        const auto F = build_F(9);
        const auto Fh = build_Fhat(19);
        for (int i = 0; i < 1000; ++i) {
            const mpz_class x = c(rng), y = c(rng);
            CHECK(evaluate(F, x, y) == evaluate(Fh, x, y - 2 * x));
        }
    }

    TEST_CASE("product formula agrees with the coefficients")
    {
        std::mt19937_64 rng(42);
        std::uniform_int_distribution<long> c(-1000, 1000);
        for (unsigned m = 1; m <= 20; ++m) {
            const auto F = build_F(m);
            for (int i = 0; i < 60; ++i) {
                const long x = c(rng), y = c(rng);
                const long double exact = evaluate(F, x, y).get_d();
                const long double prod = evaluate_product(F, x, y);
                CHECK(std::fabs(prod - exact) <= 1e-6L * std::max(1.0L, std::fabs(exact)));
            }
        }
    }

    TEST_CASE("bounded search")
    {
        const auto F4 = build_F(2);
        const auto pruned = bounded_search(F4, {5, -5}, 100, 100);
        const auto full = bounded_search(F4, {5, -5}, 100, 100, SearchMode::FullScan);
        CHECK(pruned == full);
        CHECK(std::find(pruned.begin(), pruned.end(), ThueSolution{1, 4, 5}) != pruned.end());

        const auto F18 = build_F(9);
        const auto sols = bounded_search(F18, {19, -19}, 300, 1300);
        CHECK(sols == bounded_search(F18, {19, -19}, 300, 1300, SearchMode::FullScan));
        REQUIRE(sols.size() == 2);
        for (const auto & s : sols) {
            CHECK(std::abs(s.x) == 1);
            CHECK(std::abs(s.y) == 4);
        }
    }
}
