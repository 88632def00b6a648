#include "newcoef/arith.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace newcoef {

u64 powmod(u64 base, u64 exp, u64 m)
{
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1)
            result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 mod_u64(const mpz_class & x, u64 m)
{
    if (m == 0)
        throw invalid_modulus("modulus must be positive");
    mpz_class r;
    mpz_class mm;
    mpz_import(mm.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &m);
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), mm.get_mpz_t());
    u64 out = 0;
    mpz_export(&out, nullptr, 1, sizeof(u64), 0, 0, r.get_mpz_t());
    return out;
}

bool is_prime_u64(u64 n)
{
    if (n < 2)
        return false;
    static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : small) {
        if (n % p == 0)
            return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : small) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

std::vector<u64> primes_up_to(u64 bound)
{
    std::vector<u64> out;
    if (bound < 2)
        return out;
    std::vector<bool> composite(bound + 1, false);
    for (u64 i = 2; i <= bound; ++i) {
        if (composite[i])
            continue;
        out.push_back(i);
        for (u64 j = i * i; j <= bound; j += i)
            composite[j] = true;
    }
    return out;
}

namespace {

u64 pollard_brent(u64 n)
{
    if (n % 2 == 0)
        return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        const u64 m = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i)
                y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

void factor_rec(u64 n, std::map<u64, unsigned> & out)
{
    if (n == 1)
        return;
    if (is_prime_u64(n)) {
        ++out[n];
        return;
    }
    u64 d = pollard_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

bool fits_u64(const mpz_class & n) { return mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

u64 to_u64(const mpz_class & n)
{
    u64 out = 0;
    mpz_export(&out, nullptr, 1, sizeof(u64), 0, 0, n.get_mpz_t());
    return out;
}

mpz_class from_u64(u64 v)
{
    mpz_class out;
    mpz_import(out.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &v);
    return out;
}

mpz_class pollard_brent_mpz(const mpz_class & n)
{
    for (unsigned long c = 1;; ++c) {
        mpz_class y = 2, x = 2, g = 1, q = 1, ys = 2, diff;
        const unsigned long m = 256;
        unsigned long r = 1;
        auto f = [&](mpz_class & v) {
            v = v * v + c;
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i)
                f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    f(y);
                    diff = abs(x - y);
                    q = q * diff;
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                f(ys);
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

void factor_rec_mpz(const mpz_class & n, std::map<mpz_class, unsigned> & out)
{
    if (n == 1)
        return;
    if (fits_u64(n)) {
        std::map<u64, unsigned> small;
        factor_rec(to_u64(n), small);
        for (auto [p, e] : small)
            out[from_u64(p)] += e;
        return;
    }
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) > 0) {
        ++out[n];
        return;
    }
    mpz_class d = pollard_brent_mpz(n);
    factor_rec_mpz(d, out);
    factor_rec_mpz(n / d, out);
}

} // namespace

std::map<u64, unsigned> factor_u64(u64 n)
{
    if (n == 0)
        throw invalid_input("cannot factor zero");
    std::map<u64, unsigned> out;
    for (u64 p = 2; p < 1000 && p * p <= n; ++p) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    factor_rec(n, out);
    return out;
}

std::map<mpz_class, unsigned> factor_mpz(const mpz_class & n)
{
    if (n == 0)
        throw invalid_input("cannot factor zero");
    mpz_class m = abs(n);
    std::map<mpz_class, unsigned> out;
    for (unsigned long p = 2; p < 100000; ++p) {
        if (m == 1)
            break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                ++e;
            }
            out[mpz_class(p)] = e;
        }
    }
    factor_rec_mpz(m, out);
    return out;
}

u64 radical(u64 n)
{
    u64 r = 1;
    for (auto [p, e] : factor_u64(n))
        r *= p;
    return r;
}

std::vector<u64> divisors(const std::map<u64, unsigned> & fact)
{
    std::vector<u64> out{1};
    for (auto [p, e] : fact) {
        const std::size_t base = out.size();
        u64 pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i)
                out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }
u64 lcm_u64(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

std::optional<mpz_class> exact_root(const mpz_class & x, unsigned long d)
{
    if (d == 0)
        throw invalid_input("root degree must be positive");
    if (x < 0 && d % 2 == 0)
        return std::nullopt;
    mpz_class r;
    mpz_class ax = abs(x);
    if (mpz_root(r.get_mpz_t(), ax.get_mpz_t(), d) == 0)
        return std::nullopt;
    if (x < 0)
        r = -r;
    return r;
}

bool is_perfect_power(const mpz_class & x, unsigned long d) { return exact_root(x, d).has_value(); }

mpz_class parse_integer(const std::string & text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        throw invalid_input("empty integer");
    auto parse_term = [&](const std::string & term) -> mpz_class {
        auto caret = term.find('^');
        if (caret == std::string::npos) {
            mpz_class v;
            if (v.set_str(term, 10) != 0)
                throw invalid_input("not an integer: " + text);
            return v;
        }
        mpz_class base;
        if (base.set_str(term.substr(0, caret), 10) != 0)
            throw invalid_input("not an integer: " + text);
        unsigned long e = std::stoul(term.substr(caret + 1));
        mpz_class out;
        mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
        return out;
    };
    mpz_class product = 1;
    std::size_t start = 0;
    bool negative = false;
    if (s[0] == '-') {
        negative = true;
        start = 1;
    }
    while (true) {
        auto star = s.find('*', start);
        product *= parse_term(s.substr(start, star == std::string::npos ? std::string::npos : star - start));
        if (star == std::string::npos)
            break;
        start = star + 1;
    }
    return negative ? mpz_class(-product) : product;
}

std::string to_string(const mpz_class & x) { return x.get_str(10); }

int legendre(const mpz_class & a, u64 p)
{
    mpz_class pp = from_u64(p);
    return mpz_legendre(a.get_mpz_t(), pp.get_mpz_t());
}

} // namespace newcoef
