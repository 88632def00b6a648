#ifndef NEWCOEF_POWER_SIEVE_HPP
#define NEWCOEF_POWER_SIEVE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "newcoef/core_sequences.hpp"

namespace newcoef {

struct invalid_exponent : invalid_input {
    using invalid_input::invalid_input;
};

/*
 * Constraints on a sequence index n: for each prime l, n mod l^e must lie in
 * an allowed set. Refinement only ever shrinks the sets; a constraint at a
 * lower power of l is merged into the stored one by lifting.
 */
class CongruenceSystem
{
  public:
    struct Constraint {
        u64 prime = 0;
        unsigned exponent = 0;
        u64 modulus = 1;
        std::vector<char> allowed; // indexed by residue mod `modulus`

        std::vector<u64> residues() const;
        std::size_t size() const;
    };

    /// Intersect with {n : n mod prime^exponent in allowed}. Returns true if anything shrank.
    bool refine(u64 prime, unsigned exponent, const std::vector<u64> & allowed);

    /// Whether residue r (mod prime^exponent) is compatible with the stored constraint.
    bool admits(u64 prime, unsigned exponent, u64 r) const;

    bool is_empty() const;
    const std::map<u64, Constraint> & constraints() const { return constraints_; }

  private:
    std::map<u64, Constraint> constraints_;
};

enum class SieveOutcome { Eliminated, IndexExceeds, Inconclusive };

std::string to_string(SieveOutcome outcome);

/// One prime q whose d-th power residues constrain the index mod the period.
struct PrimeFilter {
    u64 prime = 0;
    u64 period = 0;
    std::size_t allowed_count = 0;
};

struct SieveVerdict {
    SieveOutcome outcome = SieveOutcome::Inconclusive;
    SequenceSpec spec;
    unsigned long power = 0;
    std::optional<mpz_class> index_bound;  // set for IndexExceeds
    CongruenceSystem witness;              // congruence_sieve
    std::vector<PrimeFilter> primes_used;
    std::vector<i64> exceptions;           // indices n with |x_n| = 1
    // deep_sieve: survivors of the CRT-lifted system
    mpz_class modulus = 1;
    std::vector<mpz_class> surviving_residues;
    std::vector<i64> checked_indices;      // resolved by exact evaluation
    std::vector<i64> nontrivial_powers;    // indices where x_n is a d-th power other than +-1
    std::string note;
};

/// x is 0 or a d-th power modulo the prime q.
bool is_dth_power_residue(u64 x, unsigned long d, u64 q);

/// k in [0, period) with x_k a d-th power residue mod q; nullopt when q divides a^2 - 5b^2.
std::optional<std::vector<u64>> power_residue_indices(const SequenceSpec & spec, unsigned long d, u64 q);

struct CongruenceSieveOptions {
    unsigned threads = 1;
};

SieveVerdict congruence_sieve(const SequenceSpec & spec, unsigned long d, u64 prime_bound,
                              const CongruenceSieveOptions & options = {});

struct DeepSieveOptions {
    u64 prime_limit = 2'000'000;   // largest prime q consulted
    u64 smooth_bound = 2000;       // largest prime allowed in a usable period
    std::size_t residue_cap = 1'000'000;
    u64 work_cap = 60'000'000;     // lifted candidates per extension step
    i64 explicit_check_limit = 10'000;
    unsigned threads = 1;
};

SieveVerdict deep_sieve(const SequenceSpec & spec, unsigned long d, const mpz_class & index_bound,
                        const DeepSieveOptions & options = {});

/// Exhaustive check: indices |n| <= limit where x_n is a d-th power (value 0 and +-1 included).
std::vector<i64> brute_force_power_indices(const SequenceSpec & spec, unsigned long d, i64 limit);

} // namespace newcoef

#endif
