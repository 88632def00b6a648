#include "newcoef/power_sieve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "parallel.hpp"

namespace newcoef {

namespace {

u64 ipow(u64 base, unsigned e)
{
    u64 r = 1;
    while (e--)
        r *= base;
    return r;
}

void require_prime_exponent(unsigned long d)
{
    if (d < 2 || !is_prime_u64(d))
        throw invalid_exponent("power d = " + std::to_string(d) + " must be prime");
}

u64 primitive_root(u64 q)
{
    if (q == 2)
        return 1;
    const auto fact = factor_u64(q - 1);
    for (u64 c = 2;; ++c) {
        bool ok = true;
        for (auto [r, e] : fact) {
            (void)e;
            if (powmod(c, (q - 1) / r, q) == 1) {
                ok = false;
                break;
            }
        }
        if (ok)
            return c;
    }
}

// table[x] != 0 iff x is 0 or a d-th power mod q.
std::vector<char> power_table(unsigned long d, u64 q)
{
    const u64 g = gcd_u64(d, q - 1);
    std::vector<char> table(q, g == 1 ? 1 : 0);
    table[0] = 1;
    if (g == 1)
        return table;
    // The d-th powers are the subgroup of index g, generated by gamma^g.
    const u64 h = powmod(primitive_root(q), g, q);
    u64 x = 1;
    for (u64 i = 0; i < (q - 1) / g; ++i) {
        table[x] = 1;
        x = mulmod(x, h, q);
    }
    return table;
}

template <class Visit>
void walk_period(const SequenceSpec & spec, u64 q, u64 period, Visit && visit)
{
    u64 x0 = mod_u64(2 * spec.b, q);
    u64 x1 = mod_u64(spec.a + spec.b, q);
    for (u64 k = 0; k < period; ++k) {
        visit(k, x0);
        u64 x2 = x0 + x1;
        if (x2 >= q)
            x2 -= q;
        x0 = x1;
        x1 = x2;
    }
}

bool coprime_to_disc(const SequenceSpec & spec, u64 q) { return mod_u64(spec.disc_norm(), q) != 0; }

} // namespace

std::vector<u64> CongruenceSystem::Constraint::residues() const
{
    std::vector<u64> out;
    for (u64 r = 0; r < modulus; ++r)
        if (allowed[r])
            out.push_back(r);
    return out;
}

std::size_t CongruenceSystem::Constraint::size() const { return std::size_t(std::count(allowed.begin(), allowed.end(), 1)); }

bool CongruenceSystem::refine(u64 prime, unsigned exponent, const std::vector<u64> & allowed)
{
    const u64 mod = ipow(prime, exponent);
    std::vector<char> incoming(mod, 0);
    for (u64 r : allowed) {
        if (r >= mod)
            throw invalid_input("residue outside [0, modulus)");
        incoming[r] = 1;
    }
    auto it = constraints_.find(prime);
    if (it == constraints_.end()) {
        Constraint c{prime, exponent, mod, std::move(incoming)};
        bool shrank = c.size() < mod;
        constraints_.emplace(prime, std::move(c));
        return shrank;
    }
    Constraint & c = it->second;
    bool shrank = false;
    if (c.exponent >= exponent) {
        for (u64 r = 0; r < c.modulus; ++r) {
            if (c.allowed[r] && !incoming[r % mod]) {
                c.allowed[r] = 0;
                shrank = true;
            }
        }
        return shrank;
    }
    std::vector<char> lifted(mod, 0);
    const std::size_t before = c.size() * std::size_t(mod / c.modulus);
    std::size_t after = 0;
    for (u64 r = 0; r < mod; ++r) {
        if (c.allowed[r % c.modulus] && incoming[r]) {
            lifted[r] = 1;
            ++after;
        }
    }
    c.exponent = exponent;
    c.modulus = mod;
    c.allowed = std::move(lifted);
    return after < before;
}

bool CongruenceSystem::admits(u64 prime, unsigned exponent, u64 r) const
{
    auto it = constraints_.find(prime);
    if (it == constraints_.end())
        return true;
    const Constraint & c = it->second;
    if (c.exponent <= exponent)
        return c.allowed[r % c.modulus];
    const u64 mod = ipow(prime, exponent);
    for (u64 x = r % mod; x < c.modulus; x += mod)
        if (c.allowed[x])
            return true;
    return false;
}

bool CongruenceSystem::is_empty() const
{
    return std::any_of(constraints_.begin(), constraints_.end(), [](const auto & kv) { return kv.second.size() == 0; });
}

std::string to_string(SieveOutcome outcome)
{
    switch (outcome) {
    case SieveOutcome::Eliminated:
        return "Eliminated";
    case SieveOutcome::IndexExceeds:
        return "IndexExceeds";
    case SieveOutcome::Inconclusive:
        return "Inconclusive";
    }
    return "?";
}

bool is_dth_power_residue(u64 x, unsigned long d, u64 q)
{
    if (!is_prime_u64(q))
        throw invalid_prime(std::to_string(q) + " is not prime");
    x %= q;
    if (x == 0)
        return true;
    return powmod(x, (q - 1) / gcd_u64(d, q - 1), q) == 1;
}

std::optional<std::vector<u64>> power_residue_indices(const SequenceSpec & spec, unsigned long d, u64 q)
{
    if (!is_prime_u64(q))
        throw invalid_prime(std::to_string(q) + " is not prime");
    if (!coprime_to_disc(spec, q))
        return std::nullopt;
    const u64 period = sequence_period(spec, q);
    const auto table = power_table(d, q);
    std::vector<u64> out;
    walk_period(spec, q, period, [&](u64 k, u64 x) {
        if (table[x])
            out.push_back(k);
    });
    return out;
}

SieveVerdict congruence_sieve(const SequenceSpec & spec, unsigned long d, u64 prime_bound,
                              const CongruenceSieveOptions & options)
{
    require_prime_exponent(d);
    spec.require_nondegenerate();

    SieveVerdict verdict;
    verdict.spec = spec;
    verdict.power = d;

    std::vector<u64> primes;
    for (u64 q : primes_up_to(prime_bound))
        if (q % d == 1 && coprime_to_disc(spec, q))
            primes.push_back(q);

    struct Entry {
        u64 period = 0;
        std::map<u64, unsigned> fact;
        std::vector<u64> allowed;
    };
    std::vector<Entry> entries(primes.size());
    detail::parallel_for(primes.size(), options.threads, [&](std::size_t i) {
        Entry & e = entries[i];
        e.allowed = *power_residue_indices(spec, d, primes[i]);
        e.period = sequence_period(spec, primes[i]);
        e.fact = factor_u64(e.period);
    });
    for (std::size_t i = 0; i < primes.size(); ++i)
        verdict.primes_used.push_back({primes[i], entries[i].period, entries[i].allowed.size()});

    CongruenceSystem & sys = verdict.witness;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Entry & e : entries) {
            std::vector<u64> kept;
            for (u64 k : e.allowed) {
                bool ok = std::all_of(e.fact.begin(), e.fact.end(), [&](const auto & pe) {
                    return sys.admits(pe.first, pe.second, k % ipow(pe.first, pe.second));
                });
                if (ok)
                    kept.push_back(k);
            }
            for (auto [l, x] : e.fact) {
                const u64 mod = ipow(l, x);
                std::vector<u64> proj;
                for (u64 k : kept)
                    proj.push_back(k % mod);
                std::sort(proj.begin(), proj.end());
                proj.erase(std::unique(proj.begin(), proj.end()), proj.end());
                changed |= sys.refine(l, x, proj);
            }
            if (sys.is_empty()) {
                verdict.outcome = SieveOutcome::Eliminated;
                return verdict;
            }
        }
    }
    verdict.outcome = SieveOutcome::Inconclusive;
    return verdict;
}

std::vector<i64> brute_force_power_indices(const SequenceSpec & spec, unsigned long d, i64 limit)
{
    std::vector<i64> out;
    for (i64 n = -limit; n <= limit; ++n)
        if (is_perfect_power(fib_type(spec, n), d))
            out.push_back(n);
    return out;
}

/*
 * Deep sieve. Residues of the index modulo a growing M are kept explicitly.
 * A prime q contributes the filter "n mod P_q lies in S_q" once P_q | M; M is
 * extended by lcm with a chosen P_q, lifting every residue r to r + jM.
 */
namespace {

struct Bits {
    std::vector<std::uint64_t> words;
    explicit Bits(u64 n = 0) : words((n + 63) / 64, 0) {}
    void set(u64 i) { words[i >> 6] |= std::uint64_t(1) << (i & 63); }
    bool test(u64 i) const { return (words[i >> 6] >> (i & 63)) & 1; }
};

struct Filter {
    u64 q = 0;
    u64 period = 0;
    std::map<u64, unsigned> fact;
    bool computed = false;
    bool applied = false;
    std::size_t count = 0;
    double log_density = 0;
    Bits mask;
};

struct DeepState {
    std::map<u64, unsigned> mfact;
    mpz_class modulus = 1;
    std::vector<mpz_class> residues{mpz_class(0)};
};

void compute_filter(const SequenceSpec & spec, unsigned long d, Filter & f)
{
    if (f.computed)
        return;
    const auto table = power_table(d, f.q);
    f.mask = Bits(f.period);
    std::size_t count = 0;
    walk_period(spec, f.q, f.period, [&](u64 k, u64 x) {
        if (table[x]) {
            f.mask.set(k);
            ++count;
        }
    });
    f.count = count;
    f.log_density = count == 0 ? -1e9 : std::log(double(count) / double(f.period));
    f.computed = true;
}

// Factor by which lcm(M, P) exceeds M.
double missing_log(const std::map<u64, unsigned> & fact, const std::map<u64, unsigned> & mfact, u64 * growth)
{
    double lg = 0;
    u64 g = 1;
    for (auto [l, e] : fact) {
        auto it = mfact.find(l);
        unsigned have = it == mfact.end() ? 0 : it->second;
        for (unsigned i = have; i < e; ++i) {
            lg += std::log(double(l));
            g = (g > std::numeric_limits<u64>::max() / l) ? std::numeric_limits<u64>::max() : g * l;
        }
    }
    if (growth)
        *growth = g;
    return lg;
}

// Keep residues (lifted by `growth` copies) passing every filter in `use`.
std::vector<mpz_class> lift_and_filter(const DeepState & st, u64 growth, const std::vector<Filter *> & use,
                                       unsigned threads)
{
    std::vector<u64> m_mod(use.size());
    for (std::size_t i = 0; i < use.size(); ++i)
        m_mod[i] = mod_u64(st.modulus, use[i]->period);

    const std::size_t n = st.residues.size();
    const unsigned workers = std::max(1u, threads);
    std::vector<std::vector<std::pair<std::size_t, u64>>> kept(workers);
    detail::parallel_for(workers, workers, [&](std::size_t w) {
        std::vector<u64> pos(use.size());
        for (std::size_t ri = w; ri < n; ri += workers) {
            for (std::size_t i = 0; i < use.size(); ++i)
                pos[i] = mod_u64(st.residues[ri], use[i]->period);
            for (u64 j = 0; j < growth; ++j) {
                bool ok = true;
                for (std::size_t i = 0; i < use.size(); ++i) {
                    if (!use[i]->mask.test(pos[i])) {
                        ok = false;
                        break;
                    }
                }
                if (ok)
                    kept[w].push_back({ri, j});
                for (std::size_t i = 0; i < use.size(); ++i) {
                    pos[i] += m_mod[i];
                    if (pos[i] >= use[i]->period)
                        pos[i] -= use[i]->period;
                }
            }
        }
    });
    std::vector<mpz_class> out;
    for (auto & part : kept)
        for (auto [ri, j] : part)
            out.push_back(st.residues[ri] + st.modulus * j);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

SieveVerdict deep_sieve(const SequenceSpec & spec, unsigned long d, const mpz_class & index_bound,
                        const DeepSieveOptions & options)
{
    require_prime_exponent(d);
    spec.require_nondegenerate();
    if (index_bound < 0)
        throw invalid_input("index bound must be nonnegative");

    SieveVerdict verdict;
    verdict.spec = spec;
    verdict.power = d;

    std::vector<Filter> filters;
    for (u64 q : primes_up_to(options.prime_limit)) {
        if (q % d != 1 || !coprime_to_disc(spec, q))
            continue;
        Filter f;
        f.q = q;
        f.period = sequence_period(spec, q);
        f.fact = factor_u64(f.period);
        if (f.fact.rbegin()->first > options.smooth_bound)
            continue;
        filters.push_back(std::move(f));
    }

    DeepState st;
    const mpz_class span = 2 * index_bound + 1;

    auto record_used = [&](const Filter & f) { verdict.primes_used.push_back({f.q, f.period, f.count}); };

    auto apply = [&](u64 growth, std::vector<Filter *> use, const std::map<u64, unsigned> & newfact) {
        std::sort(use.begin(), use.end(), [](const Filter * a, const Filter * b) {
            if (a->log_density != b->log_density)
                return a->log_density < b->log_density;
            return a->q < b->q;
        });
        st.residues = lift_and_filter(st, growth, use, options.threads);
        st.modulus *= mpz_class(std::to_string(growth));
        st.mfact = newfact;
        for (Filter * f : use) {
            f->applied = true;
            record_used(*f);
        }
    };

    auto merged = [&](const std::map<u64, unsigned> & extra) {
        auto m = st.mfact;
        for (auto [l, e] : extra)
            m[l] = std::max(m[l], e);
        return m;
    };

    // Resolve survivors once M exceeds the index window. Returns true when done.
    std::vector<i64> checked, exceptions, powers;
    auto try_finish = [&]() -> bool {
        if (st.modulus <= span)
            return false;
        bool unresolved = false;
        for (const mpz_class & r : st.residues) {
            mpz_class n;
            if (r <= index_bound)
                n = r;
            else if (st.modulus - r <= index_bound)
                n = r - st.modulus;
            else
                continue;
            if (abs(n) > options.explicit_check_limit) {
                unresolved = true;
                continue;
            }
            const i64 idx = n.get_si();
            if (std::find(checked.begin(), checked.end(), idx) != checked.end())
                continue;
            checked.push_back(idx);
            mpz_class x = fib_type(spec, idx);
            if (abs(x) == 1)
                exceptions.push_back(idx);
            else if (is_perfect_power(x, d))
                powers.push_back(idx);
        }
        return !unresolved || !powers.empty();
    };

    auto finish = [&](SieveOutcome outcome, std::string note) {
        std::sort(checked.begin(), checked.end());
        std::sort(exceptions.begin(), exceptions.end());
        std::sort(powers.begin(), powers.end());
        verdict.outcome = outcome;
        verdict.checked_indices = checked;
        verdict.exceptions = exceptions;
        verdict.nontrivial_powers = powers;
        verdict.modulus = st.modulus;
        verdict.surviving_residues = st.residues;
        verdict.note = std::move(note);
        if (outcome == SieveOutcome::IndexExceeds)
            verdict.index_bound = index_bound;
        return verdict;
    };

    const double log_d = std::log(double(d));
    constexpr std::size_t batch_size = 8;
    while (true) {
        // Filters whose period already divides M only shrink the residue set.
        // They are applied in batches of increasing q while they still help;
        // survivors that are genuine powers or +-1 would never fall.
        std::vector<Filter *> free_filters;
        for (Filter & f : filters) {
            u64 g = 1;
            if (!f.applied && (missing_log(f.fact, st.mfact, &g), g == 1))
                free_filters.push_back(&f);
        }
        for (std::size_t i = 0; i < free_filters.size(); i += batch_size) {
            std::vector<Filter *> batch(free_filters.begin() + i,
                                        free_filters.begin() + std::min(free_filters.size(), i + batch_size));
            for (Filter * f : batch)
                compute_filter(spec, d, *f);
            const std::size_t before = st.residues.size();
            apply(1, batch, st.mfact);
            if (st.residues.size() == before || st.residues.empty())
                break;
        }

        if (st.residues.empty())
            return finish(SieveOutcome::Eliminated, "no residue class survives");
        if (try_finish()) {
            if (!powers.empty())
                return finish(SieveOutcome::Inconclusive, "sequence contains a d-th power other than +-1");
            return finish(SieveOutcome::IndexExceeds, "");
        }

        // Choose the extension with the best predicted residue growth. A
        // pending filter becomes usable after extending by g exactly when its
        // own missing factor divides g.
        const bool wide = st.modulus > span;
        const double log_r = std::log(double(st.residues.size()));
        std::map<u64, std::vector<Filter *>> by_growth;
        for (Filter & f : filters) {
            if (f.applied)
                continue;
            u64 g = 1;
            missing_log(f.fact, st.mfact, &g);
            if (g > 1 && g != std::numeric_limits<u64>::max())
                by_growth[g].push_back(&f);
        }
        Filter * best = nullptr;
        double best_score = std::numeric_limits<double>::infinity();
        std::vector<Filter *> best_use;
        u64 best_growth = 1;
        double best_lg = 0;
        for (const auto & [growth, group] : by_growth) {
            if (double(st.residues.size()) * double(growth) > double(options.work_cap))
                break;
            const double lg = std::log(double(growth));
            std::vector<Filter *> use;
            double sum_delta = 0;
            for (u64 dv : divisors(factor_u64(growth))) {
                auto it = by_growth.find(dv);
                if (it == by_growth.end())
                    continue;
                for (Filter * f2 : it->second) {
                    // Unapplied filters are scored by the a-priori density 1/d.
                    sum_delta += f2->computed ? f2->log_density : -log_d;
                    use.push_back(f2);
                }
            }
            const double predicted = log_r + lg + sum_delta;
            if (predicted > std::log(double(options.residue_cap)))
                continue;
            const double score = wide ? predicted : (lg + sum_delta) / lg;
            if (score < best_score - 1e-12) {
                best_score = score;
                best = group.front();
                best_use = std::move(use);
                best_growth = growth;
                best_lg = lg;
            }
        }
        if (!best)
            return finish(SieveOutcome::Inconclusive, "prime supply exhausted");

        // Enough of the unlocked filters (cheapest first) to absorb the growth;
        // the rest stay available as free filters.
        std::sort(best_use.begin(), best_use.end(), [](const Filter * a, const Filter * b) { return a->q < b->q; });
        const std::size_t want = std::size_t(std::ceil(best_lg / log_d)) + 2;
        if (best_use.size() > want)
            best_use.resize(want);
        if (std::find(best_use.begin(), best_use.end(), best) == best_use.end())
            best_use.push_back(best);
        for (Filter * f : best_use)
            compute_filter(spec, d, *f);
        apply(best_growth, best_use, merged(best->fact));
    }
}

} // namespace newcoef
