#ifndef NEWCOEF_FREY_MODULAR_HPP
#define NEWCOEF_FREY_MODULAR_HPP

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "newcoef/arith.hpp"

namespace newcoef {

struct not_a_solution : invalid_input {
    using invalid_input::invalid_input;
};
struct precondition_error : invalid_input {
    using invalid_input::invalid_input;
};
/// A hypothesis of the level-lowering formula fails; the message names it.
struct inapplicable : invalid_input {
    using invalid_input::invalid_input;
};

/// A X^n + B Y^n = C Z^2 with C squarefree and n an odd prime.
struct FermatInstance {
    mpz_class A, B, C;
    unsigned long n = 0;

    /// Throws invalid_input on zero coefficients, non-squarefree C or n not an odd prime.
    void validate() const;
};

struct FreySolution {
    mpz_class a, b, c;
};

/// Throws not_a_solution unless A a^n + B b^n = C c^2.
void require_solution(const FermatInstance & inst, const FreySolution & sol);

/// Aa, Bb, Cc pairwise coprime.
bool is_primitive(const FermatInstance & inst, const FreySolution & sol);
/// gcd(Aa, Bb, Cc) = 1; equivalent to is_primitive for genuine solutions.
bool gcd_of_three_is_one(const FermatInstance & inst, const FreySolution & sol);

/// The features of a solution that the conductor and level formulas consult.
struct SolutionShape {
    bool ab_even = false;
    std::optional<int> b_mod4;       // needed when ord_2(B) = 2
    std::optional<mpz_class> ab;     // unknown ab leaves rad(ab) symbolic
};

SolutionShape shape_of(const FreySolution & sol);

struct ConductorResult {
    std::vector<int> alpha;   // exponent candidates, in [-1, 6]
    mpz_class known_part;     // C^2 rad(AB ab) with the known part of ab
    bool ab_symbolic = false; // true when a factor rad(ab) remains symbolic
    std::string formula;
    /// 2^alpha * known_part when alpha is determined and ab known.
    std::optional<mpz_class> value() const;
};

ConductorResult frey_conductor(const FermatInstance & inst, const SolutionShape & shape);
/// Concrete solution; throws precondition_error when it is not primitive.
ConductorResult frey_conductor(const FermatInstance & inst, const FreySolution & sol);

struct LevelResult {
    std::vector<mpz_class> levels; // one per resolved 2-exponent, sorted, deduplicated
    std::vector<std::string> trace;
};

/// 2^beta prod_{p | C, p != n} p^2 prod_{q | AB, q != n} q. Hypotheses: n >= 7, n does not divide ABC.
LevelResult lowered_level(const FermatInstance & inst, const SolutionShape & shape);
/// Adds the checks that the solution is primitive with ab != +-1.
LevelResult lowered_level(const FermatInstance & inst, const FreySolution & sol);

/// x + y sqrt(D) where D is the squarefree part of the field discriminant.
struct QuadCoords {
    mpz_class x, y;
};

struct NormTestResult {
    bool divisible = false;
    std::vector<mpz_class> norms; // distinct, sorted
};

/// Whether n divides Norm(c_p + 2r) or Norm(c_p - 2r) for some 0 <= r <= sqrt(p).
NormTestResult norm_test(const QuadCoords & cp, const mpz_class & field_disc, u64 p, const mpz_class & n);

/// Coefficient data for the irrational weight-2 newforms of level 380.
struct IrrationalNewform {
    std::string label;
    mpz_class field_disc;
    u64 prime;
    QuadCoords coefficient;
};
const std::vector<IrrationalNewform> & level380_irrational_newforms();

struct PointCount {
    bool singular = false;
    u64 count = 0; // including the point at infinity
    i64 trace = 0; // p + 1 - count
};

/// Points on Y^2 = X^3 + a2 X^2 + a4 X over F_p by enumeration.
PointCount count_points_fp(i64 a2, i64 a4, u64 p);

} // namespace newcoef

#endif
