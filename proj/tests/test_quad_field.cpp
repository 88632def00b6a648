#include <doctest.h>

#include <random>

#include "newcoef/quad_field.hpp"

using namespace newcoef;

namespace {

bool has_associate(const std::vector<QuadElement> & reps, const QuadElement & z)
{
    for (const auto & r : reps)
        if (are_associate(r, z))
            return true;
    return false;
}

QuadElement random_element(std::mt19937_64 & rng, int range)
{
    std::uniform_int_distribution<int> c(-range, range);
    int s = c(rng), t = c(rng);
    if ((s - t) % 2)
        ++t;
    return {s, t};
}

} // namespace

TEST_SUITE("quad_field")
{
    TEST_CASE("membership and norms")
    {
        CHECK_THROWS_AS(QuadElement(1, 2), invalid_input);
        CHECK(norm(QuadElement::from_integers(7, 4)) == -31);
        CHECK(norm(QuadElement::from_integers(0, 2)) == -20);
        CHECK(norm(QuadElement::omega()) == -1);
        const QuadElement two_omega{2, 2};
        CHECK(two_omega * two_omega == QuadElement::from_integers(6, 2));
    }

    TEST_CASE("omega powers match fibonacci and lucas")
    {
        // 2 omega^n = v_n + u_n sqrt 5
        CHECK(omega_power(10) == QuadElement(123, 55));
        CHECK(omega_power(-2) == QuadElement(3, -1));
        CHECK(omega_power(0) == QuadElement::one());
    }

    TEST_CASE("norm is multiplicative")
    {
        std::mt19937_64 rng(21);
        for (int i = 0; i < 1000; ++i) {
            const auto x = random_element(rng, 10000);
            const auto y = random_element(rng, 10000);
            CHECK(norm(x * y) == norm(x) * norm(y));
        }
    }

    TEST_CASE("associates")
    {
        std::mt19937_64 rng(22);
        std::uniform_int_distribution<i64> k(-40, 40);
        for (int i = 0; i < 1000; ++i) {
            auto z = random_element(rng, 500);
            if (z.is_zero())
                continue;
            const i64 e = k(rng);
            const auto w = omega_power(e) * z;
            CHECK(are_associate(z, w));
            CHECK(are_associate(z, -w));
            const auto ratio = unit_ratio(w, z, 100);
            REQUIRE(ratio.has_value());
            CHECK(ratio->second == e);
        }
        CHECK_FALSE(are_associate(QuadElement::from_integers(7, 4), QuadElement::from_integers(7, -4)));
    }

    TEST_CASE("norm classes")
    {
        const auto c31 = elements_of_norm(4 * 31);
        CHECK(c31.representatives.size() == 2);
        CHECK(has_associate(c31.representatives, QuadElement::from_integers(14, 8)));
        CHECK(has_associate(c31.representatives, QuadElement::from_integers(14, -8)));

        const auto c19 = elements_of_norm(4 * 361);
        CHECK(c19.representatives.size() == 3);
        CHECK(has_associate(c19.representatives, QuadElement::from_integers(38, 0)));
        CHECK(has_associate(c19.representatives, QuadElement::from_integers(42, 8)));
        CHECK(has_associate(c19.representatives, QuadElement::from_integers(42, -8)));

        for (unsigned m = 1; m <= 12; ++m) {
            mpz_class p5;
            mpz_ui_pow_ui(p5.get_mpz_t(), 5, m / 2);
            const auto z = m % 2 ? QuadElement::from_integers(0, 2 * p5) : QuadElement::from_integers(2 * p5, 0);
            mpz_class target;
            mpz_ui_pow_ui(target.get_mpz_t(), 5, m);
            const auto c = elements_of_norm(4 * target);
            CHECK(c.representatives.size() == 1);
            CHECK(has_associate(c.representatives, z));
        }
    }

    TEST_CASE("every representative has the requested norm and they are pairwise distinct")
    {
        for (int t = 1; t <= 400; ++t) {
            const auto c = elements_of_norm(t);
            for (std::size_t i = 0; i < c.representatives.size(); ++i) {
                CHECK(abs(norm(c.representatives[i])) == t);
                for (std::size_t j = 0; j < i; ++j)
                    CHECK_FALSE(are_associate(c.representatives[i], c.representatives[j]));
            }
        }
    }

    TEST_CASE("sequences from elements")
    {
        CHECK(sequence_from_element(QuadElement::from_integers(14, 8)) == SequenceSpec(7, 4));
        CHECK(sequence_from_element(QuadElement::from_integers(42, -8)) == SequenceSpec(21, -4));
        CHECK_THROWS_AS(sequence_from_element(QuadElement::omega()), representation_error);
    }

    TEST_CASE("curve points")
    {
        const auto p = curve_point_from_power({1, 0}, 6, 3);
        REQUIRE(p.has_value());
        CHECK(p->x == 2);
        CHECK(p->y == 18);
        CHECK(p->sign == 1);

        const auto q = curve_point_from_power({1, 2}, 0, 1);
        REQUIRE(q.has_value());
        CHECK(q->x == 4);
        CHECK(q->y == 2);
        CHECK(q->sign == 1);

        CHECK_FALSE(curve_point_from_power({1, 0}, 7, 3).has_value());

        const auto back = decompose_curve_point(2, 18, 3, 1, 1);
        REQUIRE(back.has_value());
        CHECK(back->sign * fib_type(back->spec, back->index) == 8);
        CHECK(are_associate(QuadElement::from_integers(2 * back->spec.a, 2 * back->spec.b),
                            QuadElement::from_integers(2, 0)));

        // Y^2 = 5 X^22 + 76 at (1, 9)
        const auto triv = decompose_curve_point(1, 9, 11, 19, 1);
        REQUIRE(triv.has_value());
        CHECK(abs(fib_type(triv->spec, triv->index)) == 1);
    }
}
