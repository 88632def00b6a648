#ifndef NEWCOEF_CORE_SEQUENCES_HPP
#define NEWCOEF_CORE_SEQUENCES_HPP

#include <compare>
#include <string>

#include <gmpxx.h>

#include "newcoef/arith.hpp"

namespace newcoef {

/*
 * A sequence of Fibonacci type x_n = a*u_n + b*v_n, where u is the Fibonacci
 * sequence and v the Lucas sequence, both continued to negative n by the
 * recurrence x_{n+2} = x_{n+1} + x_n.
 */
struct SequenceSpec {
    mpz_class a;
    mpz_class b;

    SequenceSpec() = default;
    SequenceSpec(mpz_class a_, mpz_class b_) : a(std::move(a_)), b(std::move(b_)) {}

    /// a^2 - 5 b^2, the norm of a + b*sqrt(5).
    mpz_class disc_norm() const { return a * a - 5 * b * b; }

    /// Throws invalid_input when disc_norm() == 0 (such specs are rejected by the sieves).
    void require_nondegenerate() const;

    std::string to_string() const;

    friend bool operator==(const SequenceSpec & x, const SequenceSpec & y) { return x.a == y.a && x.b == y.b; }
};

struct SequenceValue {
    i64 index;
    mpz_class value;
};

mpz_class fib(i64 n);
mpz_class lucas(i64 n);
mpz_class fib_type(const SequenceSpec & spec, i64 n);

/// fib_type(spec, n) mod m via 2x2 matrix powers, without the full integer.
u64 fib_type_mod(const SequenceSpec & spec, i64 n, u64 m);

/// Pair (u_n mod m, u_{n+1} mod m) for n >= 0.
std::pair<u64, u64> fib_pair_mod(u64 n, u64 m);

/// Period of the Fibonacci sequence mod m (cached per process).
u64 pisano_period(u64 m);

/// Least period of (x_n mod m).
u64 sequence_period(const SequenceSpec & spec, u64 m);

} // namespace newcoef

#endif
