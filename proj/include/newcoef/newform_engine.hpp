#ifndef NEWCOEF_NEWFORM_ENGINE_HPP
#define NEWCOEF_NEWFORM_ENGINE_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "newcoef/analytic_bounds.hpp"
#include "newcoef/power_sieve.hpp"
#include "newcoef/static_tables.hpp"
#include "newcoef/thue_forms.hpp"

namespace newcoef {

struct incomplete_data : invalid_input {
    using invalid_input::invalid_input;
};
struct internal_consistency_error : std::logic_error {
    using std::logic_error::logic_error;
};

/// tau(0..bound) with tau(0) = 0, from q prod (1 - q^n)^24.
std::vector<mpz_class> tau_table(std::size_t bound);

/// tau(n) for a single n, from a cached table grown on demand.
mpz_class tau(u64 n);

/// a(p^m) by a(p^m) = a_p a(p^{m-1}) - p^{weight-1} a(p^{m-2}).
mpz_class hecke_prime_power(const mpz_class & a_p, u64 p, unsigned weight, unsigned m);

struct NewformParams {
    unsigned weight = 12;
    u64 level = 1;
    std::map<u64, mpz_class> prime_coefficients; // a_f(p); for p | N with ord_p N = 1 this is +-p^{k-1}

    /// The weight-12 level-1 form with tau(p) for p <= prime_bound.
    static NewformParams delta(u64 prime_bound);
    /// Primes p <= bound with |a_p| > 2 p^{(weight-1)/2}.
    std::vector<u64> hasse_violations() const;
};

/// Multiplicative assembly; throws incomplete_data when a prime of n has no coefficient.
mpz_class coefficient(const NewformParams & params, u64 n);

struct Mod5Violation {
    u64 n;
    mpz_class tau;
    mpz_class expected_mod5;
};
/// n <= bound with tau(n) != n sigma_1(n) (mod 5).
std::vector<Mod5Violation> ramanujan_mod5_check(std::size_t bound);

/// Odd primes dividing ell (ell^2 - 1).
std::vector<u64> admissible_d_values(u64 ell);

struct CPoint {
    mpz_class x, y;
    mpz_class alpha; // a(p^2) = a_p^2 - p^{weight-1}
};
CPoint curve_point_C(u64 p, const mpz_class & a_p, unsigned weight);

struct HPoint {
    mpz_class x, y;
    mpz_class alpha; // a(p^4)
};
/// (p, 2 a_p^2 - 3 p^{weight-1}), checked against Y^2 - 5 p^{2(weight-1)} = 4 a(p^4).
HPoint curve_point_H(u64 p, const mpz_class & a_p, unsigned weight);

/// Every prime factor of value is p or is 0, 1, 4 mod 5.
bool divisor_constraint_check(u64 p, const mpz_class & value);

// ---------------------------------------------------------------------------
// Exclusion of a value alpha = +-ell^m as a coefficient a_f(n).

enum class CaseStatus { Excluded, Inconclusive };
std::string to_string(CaseStatus s);

struct SequenceCertificate {
    SequenceSpec spec;
    std::string method; // "congruence-sieve", "deep-sieve+bound-chain", "scaled-fibonacci-lucas"
    CaseStatus status = CaseStatus::Inconclusive;
    std::optional<SieveVerdict> congruence;
    std::optional<SieveVerdict> deep;
    std::optional<ChainReport> chain;
    std::vector<std::string> notes;
};

struct ThueCandidate {
    ThueSolution solution;
    bool x_is_prime_power = false; // x = p^{weight-1} with p prime
    bool y_is_square = false;
    bool value_matches = false;
};

struct CaseVerdict {
    u64 d = 0;
    std::string route; // "C-curve table", "mod-5 congruence", "H-curve sequences", "Thue search"
    CaseStatus status = CaseStatus::Inconclusive;
    std::vector<std::string> assumptions;
    std::vector<std::string> notes;
    std::vector<TablePoint> table_points;
    std::vector<SequenceCertificate> sequences;
    std::vector<ThueCandidate> thue_solutions;
    std::optional<i64> thue_x_bound, thue_y_bound;
};

struct ExclusionConfig {
    u64 sieve_prime_bound = 10'000;
    mpz_class deep_index_bound = mpz_class("1" + std::string(300, '0'));
    DeepSieveOptions deep;
    i64 thue_x_bound = 3000;
    i64 thue_y_bound = 13000;
    unsigned threads = 1;
    const StaticTables * tables = nullptr; // default_static_tables() when null
    /// a_f(p) for weights other than 12; tau(p) is used at weight 12 when unset.
    std::function<std::optional<mpz_class>(u64)> prime_coefficient;
};

struct ExclusionReport {
    mpz_class alpha;
    unsigned weight = 12;
    u64 ell = 0;
    unsigned ell_exponent = 0;
    std::vector<CaseVerdict> cases; // one per admissible d
    std::vector<std::string> assumptions;
    bool excluded = false;
};

/// Throws invalid_input unless alpha = +-ell^m (ell odd prime, m >= 1) and weight is even and >= 6.
ExclusionReport exclude_value(const mpz_class & alpha, unsigned weight, const ExclusionConfig & config = {});

} // namespace newcoef

#endif
