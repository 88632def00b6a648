#ifndef NEWCOEF_ANALYTIC_BOUNDS_HPP
#define NEWCOEF_ANALYTIC_BOUNDS_HPP

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gmpxx.h>

#include "newcoef/core_sequences.hpp"

namespace newcoef {

using Real = boost::multiprecision::cpp_bin_float_100;

/// A positive quantity stored as its natural logarithm.
class LogMagnitude
{
  public:
    LogMagnitude() = default;
    static LogMagnitude from_ln(Real ln) { return LogMagnitude(std::move(ln)); }
    /// x > 0; throws invalid_input otherwise.
    static LogMagnitude from_value(const Real & x);
    static LogMagnitude from_integer(const mpz_class & x);
    /// base^exponent for positive base.
    static LogMagnitude power(const Real & base, const Real & exponent);

    const Real & ln() const { return ln_; }
    /// log10 of the represented value.
    Real log10() const;
    /// log10(ln value), the scale used for towers such as exp(10^278); needs ln > 0.
    Real log10_ln() const;

    friend LogMagnitude operator*(const LogMagnitude & a, const LogMagnitude & b) { return from_ln(a.ln_ + b.ln_); }
    friend LogMagnitude operator/(const LogMagnitude & a, const LogMagnitude & b) { return from_ln(a.ln_ - b.ln_); }
    friend bool operator<(const LogMagnitude & a, const LogMagnitude & b) { return a.ln_ < b.ln_; }
    friend bool operator>(const LogMagnitude & a, const LogMagnitude & b) { return a.ln_ > b.ln_; }
    friend bool operator<=(const LogMagnitude & a, const LogMagnitude & b) { return a.ln_ <= b.ln_; }
    friend bool operator>=(const LogMagnitude & a, const LogMagnitude & b) { return a.ln_ >= b.ln_; }
    friend bool operator==(const LogMagnitude & a, const LogMagnitude & b) { return a.ln_ == b.ln_; }

  private:
    explicit LogMagnitude(Real ln) : ln_(std::move(ln)) {}
    Real ln_ = 0;
};

/// log*(x) = max(ln x, 1).
Real log_star(const Real & x);

/// 3^{r+27} (r+1)^{7r+19} n^{2n+6r+14}.
LogMagnitude c3(unsigned long n, unsigned long r);

/// max(|x|, |y|) < exp(c3 R log*(R) (R + ln(HB))) for a Thue equation F(x,y) = b.
LogMagnitude thue_solution_bound(const Real & regulator, const LogMagnitude & height, const LogMagnitude & rhs_bound,
                                 unsigned long n, unsigned long r);

/// f_K(L, s) in log-space, with a = 2^{-v} pi^{-d/2} sqrt(L).
LogMagnitude regulator_function(const Real & L, unsigned degree, unsigned u, unsigned v, unsigned w, const Real & s);

/// min over t = 0..999 of f_K(L, 2 - t/1000); the regulator is below this.
LogMagnitude regulator_bound(const Real & L, unsigned degree, unsigned u, unsigned v, unsigned w);

/// N prod_{p | N} (1 + 1/p).
mpz_class dedekind_psi(const mpz_class & N);

/// psi(N)^{1 + psi(N)/12}.
LogMagnitude irrational_level_bound(const mpz_class & N);

/// max(17, psi(2^6 rad m)^{1 + psi/12}).
LogMagnitude f_C(const mpz_class & m);
/// max(17, psi(2^4 rad 5m)^{1 + psi/12}).
LogMagnitude f_H(const mpz_class & m);

struct ChainParameters {
    Real discriminant_bound = Real("1e32");    // L
    Real height_bound = Real("1e50");          // H
    Real rhs_bound = 4;                        // B
    Real gamma_bound = Real("1e40");
    Real omega_bound = 10;
    unsigned long ell = 97;                    // curve Y^2 = 5X^22 +- 4 ell
    unsigned long degree = 11;                 // n, also the power
    unsigned long unit_rank = 10;              // r
    Real regulator = Real("4e32");             // taken as 4 L
    mpz_class index_bound = mpz_class("1" + std::string(300, '0'));
    unsigned long growth_offset = 5;           // k with |x_n| >= |u_{n-k}|
};

struct ChainStep {
    std::string label;
    LogMagnitude value;
};

struct ChainReport {
    LogMagnitude c3;
    LogMagnitude solution_bound;  // max(|A|, |B|)
    LogMagnitude unit_combination_bound; // |A + B omega|
    LogMagnitude y_bound;
    LogMagnitude x_power_bound;   // |x^d|
    LogMagnitude growth_lower;    // |x_n| for |n| > index bound
    bool phi_cubed_exceeds_e = false;
    bool closed = false;          // growth_lower > x_power_bound
    std::vector<ChainStep> steps;
};

ChainReport chained_bound_check(const ChainParameters & params = {});

/// Least k in [0, 5] with (x_k, x_{k+1}) dominating (0, 1) up to a common sign; nullopt if none.
std::optional<unsigned> growth_offset(const SequenceSpec & spec);

} // namespace newcoef

#endif
