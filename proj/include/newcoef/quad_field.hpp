#ifndef NEWCOEF_QUAD_FIELD_HPP
#define NEWCOEF_QUAD_FIELD_HPP

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "newcoef/core_sequences.hpp"

namespace newcoef {

struct representation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct not_on_curve : invalid_input {
    using invalid_input::invalid_input;
};

/*
 * Element (s + t*sqrt(5)) / 2 of the ring of integers of Q(sqrt 5).
 * Membership requires s = t (mod 2).
 */
class QuadElement
{
  public:
    QuadElement() : s_(0), t_(0) {}
    /// Throws invalid_input unless s and t have the same parity.
    QuadElement(mpz_class s, mpz_class t);

    /// a + b*sqrt(5) with integer a, b.
    static QuadElement from_integers(const mpz_class & a, const mpz_class & b) { return {2 * a, 2 * b}; }
    static QuadElement omega() { return {1, 1}; }
    static QuadElement omega_bar() { return {1, -1}; }
    static QuadElement one() { return {2, 0}; }

    const mpz_class & s() const { return s_; }
    const mpz_class & t() const { return t_; }

    QuadElement conjugate() const { return {s_, -t_}; }
    QuadElement operator-() const { return {-s_, -t_}; }

    /// Exact quotient when divisor divides this element in the ring.
    std::optional<QuadElement> divide(const QuadElement & divisor) const;

    /// True when this element lies in 2*Z[sqrt 5], the shape 2(a + b*sqrt 5).
    bool has_even_integer_shape() const;

    bool is_zero() const { return s_ == 0 && t_ == 0; }

    std::string to_string() const;

    friend bool operator==(const QuadElement & x, const QuadElement & y) { return x.s_ == y.s_ && x.t_ == y.t_; }

  private:
    mpz_class s_;
    mpz_class t_;
};

mpz_class norm(const QuadElement & z);
QuadElement multiply(const QuadElement & x, const QuadElement & y);
inline QuadElement operator*(const QuadElement & x, const QuadElement & y) { return multiply(x, y); }

/// omega^k for any integer k.
QuadElement omega_power(i64 k);

/// x and y generate the same ideal (x = +-omega^k * y).
bool are_associate(const QuadElement & x, const QuadElement & y);

/// If x = sign * omega^k * y, returns (sign, k); y must be nonzero.
std::optional<std::pair<int, i64>> unit_ratio(const QuadElement & x, const QuadElement & y, i64 max_abs_k);

struct NormClassSet {
    mpz_class target_norm;
    std::vector<QuadElement> representatives;
};

/// Non-associate representatives of all elements with |norm| = |target|.
NormClassSet elements_of_norm(const mpz_class & target);

/// (a, b) for z = 2(a + b*sqrt 5); throws representation_error otherwise.
SequenceSpec sequence_from_element(const QuadElement & z);

struct CurvePoint {
    mpz_class x;
    mpz_class y; // >= 0
    int sign;    // curve Y^2 = 5 X^{2d} + sign * 4 (a^2 - 5 b^2)
};

/// Point on Y^2 = 5X^{2d} +- 4(a^2 - 5b^2) when x_n is a perfect d-th power.
std::optional<CurvePoint> curve_point_from_power(const SequenceSpec & spec, i64 n, unsigned long d);

struct Decomposition {
    SequenceSpec spec;
    i64 index;
    int sign; // x^d = sign * fib_type(spec, index)
};

/// Inverse of curve_point_from_power for a point on Y^2 = 5x^{2d} + sign*4*alpha.
std::optional<Decomposition> decompose_curve_point(const mpz_class & x, const mpz_class & y, unsigned long d,
                                                   const mpz_class & alpha, int sign, i64 index_ceiling = 2000);

} // namespace newcoef

#endif
