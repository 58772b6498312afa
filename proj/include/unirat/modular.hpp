#pragma once

#include "unirat/count.hpp"
#include "unirat/poly.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace unirat {

/// Truncated integer q-expansion: coefficients of q^0..q^N, exact arithmetic
/// up to the truncation. Multiplication truncates to the shorter input.
class QSeries {
public:
    QSeries() = default;
    explicit QSeries(long truncation); // all coefficients zero
    static QSeries one(long truncation);

    long truncation() const { return static_cast<long>(c_.size()) - 1; }
    const Int& coeff(long k) const; // 0 for k > truncation, throws for k < 0
    void set_coeff(long k, Int value);

    QSeries operator+(const QSeries& rhs) const;
    QSeries operator-(const QSeries& rhs) const;
    QSeries operator*(const QSeries& rhs) const;

    /// Multiplicative inverse up to truncation; requires constant term 1.
    QSeries inverse() const;

    /// Multiply by q^k (k >= 0); the truncation grows by k.
    QSeries shifted(long k) const;

private:
    std::vector<Int> c_;
};

/// Coefficients of the Euler product prod_{n>=1} (1 - q^n) up to q^N via the
/// pentagonal-number expansion.
QSeries euler_product(long truncation);

/// An eta quotient prod_m eta(m*tau)^{e_m}, stored as (multiplier, exponent)
/// pairs. Valid only when sum(m*e) is a non-negative multiple of 24; the
/// weight is sum(e)/2.
struct EtaQuotientSpec {
    std::vector<std::pair<long, long>> factors;

    long prefactor_numerator() const; // sum of m*e
    /// Parses "m:e,m:e,..." as used by the CLI.
    static EtaQuotientSpec parse(const std::string& text);
    std::string to_string() const;
};

/// q^{sum(m e)/24} * prod_m E(q^m)^{e_m} truncated at q^N. Negative
/// exponents go through truncated series inversion. Throws when the
/// prefactor is not a non-negative integer.
QSeries eta_quotient(const EtaQuotientSpec& spec, long truncation);

/// A named integer coefficient sequence with weight/level metadata. The
/// source is either an eta quotient or a coefficient file; the anchored
/// prefix is checked exactly before any coefficient is served (a mismatch is
/// a hard error, not a warning).
struct NewformSpec {
    std::string name;
    int weight = 0;
    long level = 0;
    std::string group; // "Gamma0", "Gamma1", "Gamma"
    std::variant<EtaQuotientSpec, std::string /* coefficient file path */> source;
    std::vector<Int> anchor; // b_1..b_L, all checked
};

/// Runtime handle: generates (or loads) coefficients lazily, extends the
/// truncation on demand by doubling up to 2^20 terms, and validates the
/// anchored prefix once.
class Newform {
public:
    explicit Newform(NewformSpec spec);

    const NewformSpec& spec() const { return spec_; }
    /// Coefficient b_k (k >= 1), extending the series as needed.
    Int coeff(long k) const;
    std::map<long, Int> prime_coeffs(std::span<const long> primes) const;

private:
    void ensure(long k) const;
    void validate_anchor() const;

    NewformSpec spec_;
    mutable std::vector<Int> coeffs_; // index 0 unused; b_k at index k
    mutable bool validated_ = false;
};

/// Builtin newform fixtures: "nf6k4" (weight 4, level 6), "nf16k3"
/// (weight 3, level 16), "nf8k3" (weight 3, level 8), each anchored to its
/// printed coefficient prefix.
NewformSpec builtin_newform(const std::string& name);

/// Coefficient file format: UTF-8 lines "k b_k", ascending k, '#' comments.
std::vector<Int> read_coefficient_file(const std::string& path);
std::string write_coefficient_lines(const QSeries& series);

enum class VerdictKind {
    NotUnirationalGuess,
    Inconclusive,
    CongruencePass,
    CongruenceFail,
    ExactFit,
};

std::string verdict_kind_name(VerdictKind kind);

struct PrimeDetail {
    long p = 0;
    unsigned long long count = 0;
    long residue = 0;          // under the verdict's convention
    std::optional<Int> bp;     // newform coefficient, when a form is involved
    bool ok = true;
};

/// Outcome of a congruence or unirationality test. Sigma is the good primes
/// present in the records, sigma0 those among them where the count is not
/// congruent to 1 mod p. The caveat names the unchecked assumption that the
/// singular model and its resolution count the same mod p.
struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    std::vector<long> sigma;
    std::vector<long> sigma0;
    bool threshold_met = false; // |sigma0| >= 10
    std::vector<PrimeDetail> details;
    std::string caveat;
};

extern const char* const kCongruenceCaveat;

/// First guess from point counts alone: not unirational iff some good prime
/// has count not congruent to 1 mod p.
Verdict esnault_guess(std::span<const PointCountRecord> records);

/// Checks b_p against the count residue at every good prime in the records
/// under the stated convention (weight3: b_p = count - 1; weight4:
/// b_p = 1 - count, both mod p).
Verdict congruence_match(std::span<const PointCountRecord> records, const Newform& form,
                         Convention convention);

struct Cy3Fit {
    Int c1, c2;
    std::vector<long> verified; // good primes where the identity holds exactly
};

struct Cy3FitFailure {
    std::string reason;
    long inconsistent_prime = 0;
};

/// Solves b_p = 1 + c1 p + c2 p^2 + p^3 - count for integer constants using
/// the two largest good primes, then checks every good prime in ascending
/// order. Requires at least 3 good primes.
std::variant<Cy3Fit, Cy3FitFailure> exact_cy3_fit(std::span<const PointCountRecord> records,
                                                  const Newform& form);

/// Primes where |b_p| > h * p^{d/2}, tested as b_p^2 <= h^2 p^d in exact
/// integers. Empty means the bound holds everywhere.
std::vector<long> weil_bound_check(const Newform& form, long h, int d,
                                   std::span<const long> primes);

std::string verdict_to_json(const Verdict& verdict);

} // namespace unirat
