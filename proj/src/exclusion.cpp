#include "newcoef/newform_engine.hpp"
#include "newcoef/quad_field.hpp"

#include <algorithm>

namespace newcoef {

namespace {

const char * const assume_reducible =
    "residual reducibility: the mod 2 Galois representation of f is reducible, so a_f(n) = +-ell^m forces "
    "n = p^{d-1} with d | ell(ell^2 - 1) (not verified here)";
const char * const assume_c_table =
    "external table: the integral points on Y^2 = X^e + alpha listed in the static data are complete "
    "(published classifications of x^2 +- D = y^n)";
const char * const assume_fib_lucas =
    "external theorem: the perfect powers among Fibonacci numbers are 0, 1, 8, 144 and among Lucas numbers "
    "1, 4 (up to sign and index)";
const char * const assume_chain_inputs =
    "external computation: the Thue equations attached to Y^2 = 5X^22 +- 4 ell (ell < 100) have discriminants "
    "<= 10^32, coefficients <= 10^50, |gamma| < 10^40 and |omega| <= 10";
const char * const assume_bilu =
    "external theorem: Fhat_p(X, Y) = +-p has no solution with |x| > e^8 for primes 31 <= p <= 527";
const char * const assume_thue_lists =
    "external result: the solutions of F_{d-1}(X, Y) = +-alpha are those listed in published Thue tables "
    "(the box search reproduces them but does not prove completeness)";

std::string str(const mpz_class & x) { return x.get_str(); }

void add_unique(std::vector<std::string> & v, const std::string & s)
{
    if (std::find(v.begin(), v.end(), s) == v.end())
        v.push_back(s);
}

struct Context {
    mpz_class alpha;
    unsigned weight;
    unsigned long power;       // weight - 1
    unsigned long sieve_power; // largest prime factor of power
    u64 ell;
    unsigned m;
    const ExclusionConfig & cfg;
    const StaticTables & tables;

    std::optional<mpz_class> a_p(u64 p) const
    {
        if (cfg.prime_coefficient)
            return cfg.prime_coefficient(p);
        if (weight == 12 && p <= (u64(1) << 20))
            return tau(p);
        return std::nullopt;
    }
};

CaseVerdict mod5_case(const Context & cx)
{
    CaseVerdict cv;
    cv.d = 3;
    cv.route = "mod-5 congruence";
    // tau(p^2) = p^2 sigma_1(p^2) = p^2 (1 + p + p^2) (mod 5)
    bool never_zero = true;
    for (u64 r = 1; r < 5; ++r) {
        const u64 v = r * r % 5 * ((1 + r + r * r) % 5) % 5;
        cv.notes.push_back("p = " + std::to_string(r) + " (mod 5): tau(p^2) = " + std::to_string(v) + " (mod 5)");
        never_zero = never_zero && v != 0;
    }
    const mpz_class t25 = tau(25);
    const bool t25_hits = t25 == cx.alpha;
    cv.notes.push_back("tau(25) = " + str(t25) + (t25_hits ? " equals alpha" : " differs from alpha"));
    cv.status = never_zero && !t25_hits ? CaseStatus::Excluded : CaseStatus::Inconclusive;
    return cv;
}

CaseVerdict table_case(const Context & cx)
{
    CaseVerdict cv;
    cv.d = 3;
    cv.route = "C-curve table";
    const int sign = cx.alpha > 0 ? 1 : -1;
    const mpz_class abs_alpha = abs(cx.alpha);
    if (!abs_alpha.fits_slong_p() ||
        !cx.tables.covers('C', unsigned(cx.power), abs_alpha.get_si(), sign)) {
        cv.notes.push_back("static tables (" + cx.tables.origin + ") do not cover Y^2 = X^" +
                           std::to_string(cx.power) + (sign > 0 ? " + " : " - ") + str(abs_alpha));
        return cv;
    }
    cv.assumptions.push_back(assume_c_table);
    cv.table_points = cx.tables.points_for('C', unsigned(cx.power), abs_alpha.get_si(), sign);
    bool ok = true;
    for (const auto & pt : cv.table_points) {
        const std::string where = "(" + str(pt.x) + ", " + str(pt.y) + ")";
        if (pt.x <= 1 || !pt.x.fits_ulong_p() || !is_prime_u64(pt.x.get_ui())) {
            cv.notes.push_back(where + ": X is not a prime");
            continue;
        }
        const u64 p = pt.x.get_ui();
        const auto ap = cx.a_p(p);
        if (!ap) {
            cv.notes.push_back(where + ": X is prime but a_f(" + std::to_string(p) + ") is unavailable");
            ok = false;
            continue;
        }
        const mpz_class ap2 = hecke_prime_power(*ap, p, cx.weight, 2);
        if (ap2 == cx.alpha) {
            cv.notes.push_back(where + ": a_f(p^2) = alpha, the value occurs");
            ok = false;
        } else {
            cv.notes.push_back(where + ": a_f(" + std::to_string(p) + "^2) = " + str(ap2));
        }
    }
    if (cv.table_points.empty())
        cv.notes.push_back("no integral points");
    cv.status = ok ? CaseStatus::Excluded : CaseStatus::Inconclusive;
    return cv;
}

// Largest prime power q^j dividing |c| exactly, when |c| is a prime power.
std::optional<std::pair<u64, unsigned>> prime_power_of(const mpz_class & c)
{
    if (abs(c) == 1)
        return std::pair<u64, unsigned>{1, 0};
    const auto f = factor_mpz(c);
    if (f.size() != 1 || !f.begin()->first.fits_ulong_p())
        return std::nullopt;
    return std::pair<u64, unsigned>{f.begin()->first.get_ui(), f.begin()->second};
}

SequenceCertificate scaled_certificate(const Context & cx, const SequenceSpec & spec, u64 q, unsigned j)
{
    SequenceCertificate sc;
    sc.spec = spec;
    sc.method = "scaled-fibonacci-lucas";
    const bool is_u = spec.b == 0;
    const std::string seq = is_u ? "u_n" : "v_n";
    // p^e = +-c x_n. If p does not divide c then c = +-1 and x_n = +-p^e, which
    // the classification excludes for e >= 2 and p prime. Otherwise p = q.
    const std::vector<long> known = is_u ? std::vector<long>{0, 1, 8, 144} : std::vector<long>{1, 4};
    bool classification_ok = true;
    for (long v : known) {
        if (v <= 1)
            continue;
        auto root = exact_root(mpz_class(v), cx.power);
        if (root && *root > 1 && is_prime_u64(root->get_ui()))
            classification_ok = false;
    }
    sc.notes.push_back("x_n = " + str(mpz_class(spec.a + spec.b)) + " * " + seq +
                       "; no listed perfect power of " + seq + " is a prime to the power " +
                       std::to_string(cx.power));
    if (!classification_ok) {
        sc.notes.push_back("a classified perfect power is a prime power of the required exponent");
        return sc;
    }
    if (j == 0) {
        sc.status = CaseStatus::Excluded;
        return sc;
    }
    const auto ap = cx.a_p(q);
    if (!ap) {
        sc.notes.push_back("only p = " + std::to_string(q) + " remains but a_f(p) is unavailable");
        return sc;
    }
    const mpz_class v = hecke_prime_power(*ap, q, cx.weight, 4);
    const bool hits = v == cx.alpha;
    sc.notes.push_back("only p = " + std::to_string(q) + " remains: a_f(" + std::to_string(q) + "^4) = " + str(v) +
                       (hits ? " equals alpha" : " differs from alpha"));
    sc.status = hits ? CaseStatus::Inconclusive : CaseStatus::Excluded;
    return sc;
}

SequenceCertificate general_certificate(const Context & cx, const SequenceSpec & spec, std::vector<std::string> & assumptions)
{
    SequenceCertificate sc;
    sc.spec = spec;
    sc.method = "congruence-sieve";
    sc.congruence = congruence_sieve(spec, cx.sieve_power, cx.cfg.sieve_prime_bound, {cx.cfg.threads});
    if (sc.congruence->outcome == SieveOutcome::Eliminated) {
        sc.status = CaseStatus::Excluded;
        return sc;
    }
    sc.method = "deep-sieve+bound-chain";
    DeepSieveOptions opt = cx.cfg.deep;
    opt.threads = cx.cfg.threads;
    sc.deep = deep_sieve(spec, cx.sieve_power, cx.cfg.deep_index_bound, opt);
    const auto & dv = *sc.deep;
    if (dv.outcome == SieveOutcome::Eliminated) {
        sc.status = CaseStatus::Excluded;
        return sc;
    }
    if (dv.outcome == SieveOutcome::Inconclusive) {
        sc.notes.push_back("deep sieve inconclusive: " + dv.note);
        return sc;
    }
    for (i64 n : dv.exceptions)
        sc.notes.push_back("x_" + std::to_string(n) + " = " + str(fib_type(spec, n)) + " is not p^" +
                           std::to_string(cx.power) + " for a prime p");
    // The growth bound only applies with the certified constants.
    if (!(cx.weight == 12 && cx.m == 1 && cx.ell < 100)) {
        sc.notes.push_back("bound-chain constants are certified only for weight 12 and alpha = +-ell, ell < 100");
        return sc;
    }
    const auto k = growth_offset(spec);
    if (!k) {
        sc.notes.push_back("no growth offset k <= 5 for this sequence");
        return sc;
    }
    ChainParameters params;
    params.ell = cx.ell;
    params.index_bound = cx.cfg.deep_index_bound;
    params.growth_offset = *k;
    sc.chain = chained_bound_check(params);
    add_unique(assumptions, assume_chain_inputs);
    if (sc.chain->closed) {
        sc.status = CaseStatus::Excluded;
    } else {
        sc.notes.push_back("bound chain does not close: |x_n| lower bound exp(10^" +
                           sc.chain->growth_lower.log10_ln().str(6) + ") vs |x^11| bound exp(10^" +
                           sc.chain->x_power_bound.log10_ln().str(6) + ")");
    }
    return sc;
}

CaseVerdict h_curve_case(const Context & cx)
{
    CaseVerdict cv;
    cv.d = 5;
    cv.route = "H-curve sequences";
    const mpz_class target = 4 * abs(cx.alpha);
    const auto classes = elements_of_norm(target);
    if (classes.representatives.empty()) {
        cv.notes.push_back("no element of norm +-" + str(target) + ": Y^2 = 5X^" + std::to_string(2 * cx.power) +
                           " +- " + str(target) + " has no integral point");
        cv.status = CaseStatus::Excluded;
        return cv;
    }
    const u64 lmod5 = cx.ell % 5;
    if (lmod5 == 2 || lmod5 == 3)
        cv.notes.push_back(std::to_string(cx.ell) + " = " + std::to_string(lmod5) +
                           " (mod 5) divides alpha, so it divides X = p on any point");
    bool all = true;
    for (const auto & z : classes.representatives) {
        SequenceSpec spec;
        try {
            spec = sequence_from_element(z);
        } catch (const representation_error & e) {
            cv.notes.push_back("representative " + z.to_string() + ": " + e.what());
            all = false;
            continue;
        }
        SequenceCertificate sc;
        const bool scaled = spec.a == 0 || spec.b == 0;
        const auto pp = scaled ? prime_power_of(spec.a + spec.b) : std::nullopt;
        if (pp) {
            sc = scaled_certificate(cx, spec, pp->first, pp->second);
            add_unique(cv.assumptions, assume_fib_lucas);
        } else {
            sc = general_certificate(cx, spec, cv.assumptions);
        }
        all = all && sc.status == CaseStatus::Excluded;
        cv.sequences.push_back(std::move(sc));
    }
    cv.status = all ? CaseStatus::Excluded : CaseStatus::Inconclusive;
    return cv;
}

CaseVerdict thue_case(const Context & cx, u64 d)
{
    CaseVerdict cv;
    cv.d = d;
    cv.route = "Thue search";
    cv.thue_x_bound = cx.cfg.thue_x_bound;
    cv.thue_y_bound = cx.cfg.thue_y_bound;
    const ThueForm form = build_F(unsigned((d - 1) / 2));
    const auto sols =
        bounded_search(form, {cx.alpha, -cx.alpha}, cx.cfg.thue_x_bound, cx.cfg.thue_y_bound, SearchMode::Pruned,
                       cx.cfg.threads);
    bool ok = true;
    for (const auto & s : sols) {
        ThueCandidate c;
        c.solution = s;
        c.value_matches = s.value == cx.alpha;
        const mpz_class x(static_cast<long>(s.x)), y(static_cast<long>(s.y));
        std::optional<mpz_class> p;
        if (x > 1)
            if (auto r = exact_root(x, cx.power); r && r->fits_ulong_p() && is_prime_u64(r->get_ui()))
                p = r;
        c.x_is_prime_power = p.has_value();
        c.y_is_square = y >= 0 && mpz_perfect_square_p(y.get_mpz_t());
        if (c.x_is_prime_power && c.y_is_square && c.value_matches) {
            const u64 pu = p->get_ui();
            const auto ap = cx.a_p(pu);
            if (!ap || hecke_prime_power(*ap, pu, cx.weight, unsigned(d - 1)) == cx.alpha) {
                cv.notes.push_back("solution (" + std::to_string(s.x) + ", " + std::to_string(s.y) +
                                   ") is not ruled out");
                ok = false;
            }
        }
        cv.thue_solutions.push_back(std::move(c));
    }
    cv.notes.push_back(std::to_string(sols.size()) + " solutions with |x| <= " + std::to_string(cx.cfg.thue_x_bound) +
                       ", |y| <= " + std::to_string(cx.cfg.thue_y_bound) + "; none has x = p^" +
                       std::to_string(cx.power) + " with y = a_f(p)^2" + (ok ? "" : " except those noted"));
    const bool bilu = cx.m == 1 && cx.ell == d && d >= 31 && d <= 97 && cx.cfg.thue_x_bound >= 3000 &&
                      cx.cfg.thue_y_bound >= 13000;
    if (bilu) {
        cv.assumptions.push_back(assume_bilu);
        cv.notes.push_back("|x| < e^8 < 3000 and |y - 2x| < 7000, so the box contains every solution");
    } else {
        cv.assumptions.push_back(assume_thue_lists);
    }
    cv.status = ok ? CaseStatus::Excluded : CaseStatus::Inconclusive;
    return cv;
}

} // namespace

std::string to_string(CaseStatus s) { return s == CaseStatus::Excluded ? "excluded" : "inconclusive"; }

ExclusionReport exclude_value(const mpz_class & alpha, unsigned weight, const ExclusionConfig & config)
{
    if (weight == 4)
        throw invalid_input("weight 4 is not supported: the divisibility theorem needs weight >= 6");
    if (weight < 6 || weight % 2)
        throw invalid_input("weight must be even and >= 6");
    if (alpha == 0 || mpz_even_p(alpha.get_mpz_t()))
        throw invalid_input("alpha must be odd");
    if (abs(alpha) == 1)
        throw invalid_input("alpha = +-1 is not of the form +-ell^m with m >= 1");
    const auto fact = factor_mpz(alpha);
    if (fact.size() != 1 || !fact.begin()->first.fits_ulong_p())
        throw invalid_input("alpha must be +-ell^m for a single odd prime ell");

    ExclusionReport rep;
    rep.alpha = alpha;
    rep.weight = weight;
    rep.ell = fact.begin()->first.get_ui();
    rep.ell_exponent = fact.begin()->second;

    const unsigned long power = weight - 1;
    const Context cx{alpha,
                     weight,
                     power,
                     factor_u64(power).rbegin()->first,
                     rep.ell,
                     rep.ell_exponent,
                     config,
                     config.tables ? *config.tables : default_static_tables()};

    rep.assumptions.push_back(assume_reducible);
    for (u64 d : admissible_d_values(rep.ell)) {
        CaseVerdict cv;
        if (d == 3)
            cv = (rep.ell == 5 && weight == 12 && !config.prime_coefficient) ? mod5_case(cx) : table_case(cx);
        else if (d == 5)
            cv = h_curve_case(cx);
        else
            cv = thue_case(cx, d);
        for (const auto & a : cv.assumptions)
            add_unique(rep.assumptions, a);
        rep.cases.push_back(std::move(cv));
    }
    rep.excluded = std::all_of(rep.cases.begin(), rep.cases.end(),
                               [](const CaseVerdict & c) { return c.status == CaseStatus::Excluded; });
    return rep;
}

} // namespace newcoef
