#include "newcoef/core_sequences.hpp"

#include <mutex>
#include <unordered_map>

namespace newcoef {

void SequenceSpec::require_nondegenerate() const
{
    if (disc_norm() == 0)
        throw invalid_input("sequence spec " + to_string() + " has a^2 - 5b^2 = 0");
}

std::string SequenceSpec::to_string() const { return "(" + a.get_str() + ", " + b.get_str() + ")"; }

namespace {

// Fast doubling: returns (u_k, u_{k+1}) for k >= 0.
std::pair<mpz_class, mpz_class> fib_pair(u64 k)
{
    if (k == 0)
        return {0, 1};
    auto [f, g] = fib_pair(k >> 1);
    mpz_class c = f * (2 * g - f);
    mpz_class d = f * f + g * g;
    if (k & 1)
        return {d, c + d};
    return {c, d};
}

u64 magnitude(i64 n) { return n < 0 ? u64(-(n + 1)) + 1 : u64(n); }

} // namespace

mpz_class fib(i64 n)
{
    mpz_class u = fib_pair(magnitude(n)).first;
    // u_{-k} = (-1)^{k+1} u_k
    if (n < 0 && magnitude(n) % 2 == 0)
        u = -u;
    return u;
}

mpz_class lucas(i64 n)
{
    auto [u, u1] = fib_pair(magnitude(n));
    mpz_class v = 2 * u1 - u;
    // v_{-k} = (-1)^k v_k
    if (n < 0 && magnitude(n) % 2 == 1)
        v = -v;
    return v;
}

mpz_class fib_type(const SequenceSpec & spec, i64 n)
{
    auto [u, u1] = fib_pair(magnitude(n));
    mpz_class v = 2 * u1 - u;
    if (n < 0) {
        if (magnitude(n) % 2 == 0)
            u = -u;
        else
            v = -v;
    }
    return spec.a * u + spec.b * v;
}

std::pair<u64, u64> fib_pair_mod(u64 n, u64 m)
{
    // Powers of [[1,1],[1,0]]: A^n = [[u_{n+1}, u_n], [u_n, u_{n-1}]].
    u64 r00 = 1 % m, r01 = 0, r11 = 1 % m;
    u64 b00 = 1 % m, b01 = 1 % m, b11 = 0;
    while (n) {
        if (n & 1) {
            u64 t00 = (mulmod(r00, b00, m) + mulmod(r01, b01, m)) % m;
            u64 t01 = (mulmod(r00, b01, m) + mulmod(r01, b11, m)) % m;
            u64 t11 = (mulmod(r01, b01, m) + mulmod(r11, b11, m)) % m;
            r00 = t00, r01 = t01, r11 = t11;
        }
        u64 t00 = (mulmod(b00, b00, m) + mulmod(b01, b01, m)) % m;
        u64 t01 = (mulmod(b00, b01, m) + mulmod(b01, b11, m)) % m;
        u64 t11 = (mulmod(b01, b01, m) + mulmod(b11, b11, m)) % m;
        b00 = t00, b01 = t01, b11 = t11;
        n >>= 1;
    }
    return {r01, r00};
}

u64 fib_type_mod(const SequenceSpec & spec, i64 n, u64 m)
{
    if (m < 2)
        throw invalid_modulus("modulus must be at least 2");
    u64 k = magnitude(n);
    auto [u, u1] = fib_pair_mod(k, m);
    u64 v = (2 * u1 % m + m - u) % m;
    if (n < 0) {
        if (k % 2 == 0)
            u = (m - u) % m;
        else
            v = (m - v) % m;
    }
    return (mulmod(mod_u64(spec.a, m), u, m) + mulmod(mod_u64(spec.b, m), v, m)) % m;
}

namespace {

// Order of the Fibonacci matrix mod p^e: a divisor of p^{e-1} * (p-1),
// 2(p+1), or 20 (p = 5) times p^{e-1}; 3 * 2^{e-1} for p = 2.
u64 prime_power_period(u64 p, unsigned e)
{
    u64 pe = 1;
    for (unsigned i = 0; i < e; ++i)
        pe *= p;
    u64 bound;
    if (p == 2)
        bound = 3;
    else if (p == 5)
        bound = 20;
    else if (p % 5 == 1 || p % 5 == 4)
        bound = p - 1;
    else
        bound = 2 * (p + 1);
    bound *= pe / p;
    if (pe == 2)
        return 3;
    u64 order = bound;
    for (auto [q, k] : factor_u64(bound)) {
        for (unsigned i = 0; i < k; ++i) {
            if (fib_pair_mod(order / q, pe) == std::pair<u64, u64>{0, 1 % pe})
                order /= q;
            else
                break;
        }
    }
    return order;
}

std::mutex period_mutex;
std::unordered_map<u64, u64> period_cache;

} // namespace

u64 pisano_period(u64 m)
{
    if (m < 2)
        throw invalid_modulus("modulus must be at least 2");
    {
        std::lock_guard lock(period_mutex);
        if (auto it = period_cache.find(m); it != period_cache.end())
            return it->second;
    }
    u64 period = 1;
    for (auto [p, e] : factor_u64(m))
        period = lcm_u64(period, prime_power_period(p, e));
    std::lock_guard lock(period_mutex);
    period_cache.emplace(m, period);
    return period;
}

u64 sequence_period(const SequenceSpec & spec, u64 m)
{
    const u64 full = pisano_period(m);
    if (gcd(spec.disc_norm(), mpz_class(std::to_string(m))) == 1)
        return full;
    // The matrix is invertible mod m, so the sequence is purely periodic with
    // a period dividing the matrix order.
    const u64 x0 = fib_type_mod(spec, 0, m);
    const u64 x1 = fib_type_mod(spec, 1, m);
    for (u64 d : divisors(factor_u64(full))) {
        if (fib_type_mod(spec, i64(d), m) == x0 && fib_type_mod(spec, i64(d) + 1, m) == x1)
            return d;
    }
    return full;
}

} // namespace newcoef
