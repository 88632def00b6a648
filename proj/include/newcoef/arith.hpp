#ifndef NEWCOEF_ARITH_HPP
#define NEWCOEF_ARITH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace newcoef {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct invalid_modulus : invalid_input {
    using invalid_input::invalid_input;
};
struct invalid_prime : invalid_input {
    using invalid_input::invalid_input;
};

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }
u64 powmod(u64 base, u64 exp, u64 m);

/// Least nonnegative residue of an arbitrary integer.
u64 mod_u64(const mpz_class & x, u64 m);

bool is_prime_u64(u64 n);
std::vector<u64> primes_up_to(u64 bound);

/// Prime factorization as prime -> exponent; n >= 1.
std::map<u64, unsigned> factor_u64(u64 n);

/// Prime factorization of |n| (n != 0) using trial division and Pollard-Brent.
std::map<mpz_class, unsigned> factor_mpz(const mpz_class & n);

/// Product of the distinct primes dividing n (n != 0).
u64 radical(u64 n);

/// All positive divisors in increasing order.
std::vector<u64> divisors(const std::map<u64, unsigned> & fact);

u64 gcd_u64(u64 a, u64 b);
u64 lcm_u64(u64 a, u64 b);

/// Exact integer d-th root when x = r^d for some integer r (odd d allows x < 0).
std::optional<mpz_class> exact_root(const mpz_class & x, unsigned long d);
bool is_perfect_power(const mpz_class & x, unsigned long d);

/// Parse a decimal integer, also accepting the forms "10^300" and "4*10^32".
mpz_class parse_integer(const std::string & text);

std::string to_string(const mpz_class & x);

/// (a/p) for odd prime p.
int legendre(const mpz_class & a, u64 p);

} // namespace newcoef

#endif
