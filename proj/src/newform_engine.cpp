#include "newcoef/newform_engine.hpp"

#include <mutex>

namespace newcoef {

namespace {

mpz_class pow_ui(u64 p, unsigned long e)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, e);
    return r;
}

void require_weight(unsigned weight)
{
    if (weight < 2 || weight % 2)
        throw invalid_input("weight must be an even integer >= 2");
}

} // namespace

std::vector<mpz_class> tau_table(std::size_t bound)
{
    // tau(n) is the coefficient of q^{n-1} in P^24, P = prod (1 - q^n).
    const std::size_t len = bound; // coefficients q^0 .. q^{bound-1}
    std::vector<mpz_class> out(bound + 1);
    if (bound == 0)
        return out;

    // Pentagonal theorem: P = sum_j (-1)^j q^{j(3j-1)/2}, j over all integers.
    std::vector<std::pair<std::size_t, int>> pent{{0, 1}};
    for (std::size_t j = 1; j * (3 * j - 1) / 2 < len; ++j) {
        const int sign = j % 2 ? -1 : 1;
        pent.emplace_back(j * (3 * j - 1) / 2, sign);
        if (j * (3 * j + 1) / 2 < len)
            pent.emplace_back(j * (3 * j + 1) / 2, sign);
    }

    std::vector<mpz_class> cur(len), next(len);
    cur[0] = 1;
    for (int round = 0; round < 24; ++round) {
        for (auto & c : next)
            c = 0;
        for (std::size_t i = 0; i < len; ++i) {
            if (cur[i] == 0)
                continue;
            for (const auto & [e, sign] : pent) {
                if (i + e >= len)
                    continue;
                if (sign > 0)
                    next[i + e] += cur[i];
                else
                    next[i + e] -= cur[i];
            }
        }
        cur.swap(next);
    }
    for (std::size_t n = 1; n <= bound; ++n)
        out[n] = cur[n - 1];
    return out;
}

mpz_class tau(u64 n)
{
    static std::mutex mu;
    static std::vector<mpz_class> table;
    if (n == 0)
        throw invalid_input("tau(n) needs n >= 1");
    std::lock_guard lock(mu);
    if (n >= table.size()) {
        std::size_t want = std::max<std::size_t>(1024, table.size() * 2);
        while (want <= n)
            want *= 2;
        table = tau_table(want);
    }
    return table[n];
}

mpz_class hecke_prime_power(const mpz_class & a_p, u64 p, unsigned weight, unsigned m)
{
    require_weight(weight);
    if (!is_prime_u64(p))
        throw invalid_prime(std::to_string(p) + " is not prime");
    const mpz_class P = pow_ui(p, weight - 1);
    mpz_class prev = 1, cur = a_p;
    if (m == 0)
        return prev;
    for (unsigned i = 2; i <= m; ++i) {
        mpz_class nxt = a_p * cur - P * prev;
        prev = std::move(cur);
        cur = std::move(nxt);
    }
    return cur;
}

NewformParams NewformParams::delta(u64 prime_bound)
{
    NewformParams params;
    params.weight = 12;
    params.level = 1;
    for (u64 p : primes_up_to(prime_bound))
        params.prime_coefficients[p] = tau(p);
    return params;
}

std::vector<u64> NewformParams::hasse_violations() const
{
    std::vector<u64> out;
    for (const auto & [p, a] : prime_coefficients)
        if (level % p != 0 && a * a > 4 * pow_ui(p, weight - 1))
            out.push_back(p);
    return out;
}

mpz_class coefficient(const NewformParams & params, u64 n)
{
    require_weight(params.weight);
    if (n == 0)
        throw invalid_input("coefficients are indexed from n = 1");
    if (params.level == 0)
        throw invalid_input("level must be >= 1");
    mpz_class out = 1;
    if (n == 1)
        return out;
    for (const auto & [p, m] : factor_u64(n)) {
        unsigned ordN = 0;
        for (u64 N = params.level; N % p == 0; N /= p)
            ++ordN;
        if (ordN >= 2)
            return 0;
        auto it = params.prime_coefficients.find(p);
        if (it == params.prime_coefficients.end())
            throw incomplete_data("no coefficient supplied for p = " + std::to_string(p));
        if (ordN == 1) {
            if (it->second * it->second != pow_ui(p, params.weight - 2))
                throw invalid_input("a_f(" + std::to_string(p) + ") must be +-p^{k-1} for p || N");
            mpz_class pm;
            mpz_pow_ui(pm.get_mpz_t(), it->second.get_mpz_t(), m);
            out *= pm;
        } else {
            out *= hecke_prime_power(it->second, p, params.weight, m);
        }
    }
    return out;
}

std::vector<Mod5Violation> ramanujan_mod5_check(std::size_t bound)
{
    const auto t = tau_table(bound);
    std::vector<u64> sigma(bound + 1, 0);
    for (u64 d = 1; d <= bound; ++d)
        for (u64 k = d; k <= bound; k += d)
            sigma[k] += d;
    std::vector<Mod5Violation> out;
    for (u64 n = 1; n <= bound; ++n) {
        const u64 want = (n % 5) * (sigma[n] % 5) % 5;
        if (mod_u64(t[n], 5) != want)
            out.push_back({n, t[n], mpz_class(static_cast<unsigned long>(want))});
    }
    return out;
}

std::vector<u64> admissible_d_values(u64 ell)
{
    if (ell < 3 || !is_prime_u64(ell))
        throw invalid_input("ell must be an odd prime");
    std::map<u64, unsigned> primes;
    for (u64 v : {ell - 1, ell, ell + 1})
        for (const auto & [q, e] : factor_u64(v))
            primes[q] += e;
    std::vector<u64> out;
    for (const auto & [q, e] : primes)
        if (q != 2)
            out.push_back(q);
    return out;
}

CPoint curve_point_C(u64 p, const mpz_class & a_p, unsigned weight)
{
    require_weight(weight);
    if (!is_prime_u64(p))
        throw invalid_prime(std::to_string(p) + " is not prime");
    CPoint pt{p, a_p, a_p * a_p - pow_ui(p, weight - 1)};
    if (pt.alpha != hecke_prime_power(a_p, p, weight, 2))
        throw internal_consistency_error("C-curve identity failed");
    return pt;
}

HPoint curve_point_H(u64 p, const mpz_class & a_p, unsigned weight)
{
    require_weight(weight);
    if (!is_prime_u64(p))
        throw invalid_prime(std::to_string(p) + " is not prime");
    const mpz_class P = pow_ui(p, weight - 1);
    HPoint pt{p, 2 * a_p * a_p - 3 * P, hecke_prime_power(a_p, p, weight, 4)};
    if (pt.y * pt.y - 5 * P * P != 4 * pt.alpha)
        throw internal_consistency_error("H-curve identity failed");
    return pt;
}

bool divisor_constraint_check(u64 p, const mpz_class & value)
{
    if (value == 0)
        return false; // every prime divides 0
    if (abs(value) == 1)
        return true;
    for (const auto & [q, e] : factor_mpz(value)) {
        (void)e;
        if (q == p)
            continue;
        const u64 r = mod_u64(q, 5);
        if (r != 0 && r != 1 && r != 4)
            return false;
    }
    return true;
}

} // namespace newcoef
