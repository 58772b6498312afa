#pragma once

#include "unirat/ring.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace unirat {

using Int = mpz_class;
using Rat = mpq_class;

/// Base error for every precondition violation in the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Canonical rational: lowest terms, positive denominator. Throws on a zero
/// denominator. mpq_class does not canonicalize two-argument construction on
/// its own, so all rational construction funnels through here.
Rat rational(const Int& num, const Int& den);

/// One monomial with its coefficient. Exponent vector length always equals
/// the ring size; coefficient is never zero in a stored term.
struct Term {
    std::vector<unsigned> exps;
    Rat coeff;

    unsigned degree() const {
        unsigned d = 0;
        for (unsigned e : exps) d += e;
        return d;
    }
};

/// Three-way monomial comparison in graded lexicographic order with the
/// ring's declared variable order: higher total degree first, ties broken
/// lexicographically on the exponent vector. Returns <0, 0, >0 like memcmp,
/// where >0 means `a` precedes `b` in a polynomial's term list.
int monomial_cmp(const std::vector<unsigned>& a, const std::vector<unsigned>& b);

/// Exact sparse multivariate polynomial over the rationals.
///
/// Values are immutable after construction and cheap to copy (terms are
/// shared). Equality is canonical-form equality: two polynomials are equal
/// iff they have identical term lists. Terms are kept sorted in descending
/// graded-lex order, leading term first.
class MultiPoly {
public:
    MultiPoly() = default; // empty handle, only good for reassignment

    static MultiPoly zero(RingPtr ring);
    static MultiPoly constant(RingPtr ring, Rat value);
    static MultiPoly variable(RingPtr ring, std::size_t index);
    /// Normalizes: merges duplicate monomials, strips zeros, sorts.
    static MultiPoly from_terms(RingPtr ring, std::vector<Term> raw);

    const RingPtr& ring() const;
    const std::vector<Term>& terms() const;
    bool is_zero() const { return terms().empty(); }

    MultiPoly operator-() const;
    MultiPoly operator+(const MultiPoly& rhs) const;
    MultiPoly operator-(const MultiPoly& rhs) const;
    MultiPoly operator*(const MultiPoly& rhs) const;
    MultiPoly scaled(const Rat& c) const;
    MultiPoly pow(unsigned exponent) const;

    bool operator==(const MultiPoly& rhs) const;
    bool operator!=(const MultiPoly& rhs) const { return !(*this == rhs); }

    Rat coeff(const std::vector<unsigned>& exps) const;

    /// Exact evaluation at a rational point (length = ring size).
    Rat evaluate(const std::vector<Rat>& point) const;

    /// Value at an integer point reduced mod an odd prime, in [0, p).
    /// Coefficients are reduced once per prime and cached on the shared
    /// representation, so repeated calls at the same prime only do field
    /// operations. Throws if a coefficient denominator vanishes mod p.
    long eval_mod(const std::vector<long>& point, long p) const;

    /// Coefficients reduced mod p, aligned with terms(). Same cache as
    /// eval_mod; exposed for enumeration loops that want the raw data.
    const std::vector<long>& reduced_coeffs(long p) const;

    std::optional<unsigned> total_degree() const; // nullopt for the zero polynomial
    unsigned min_total_degree() const;            // throws on the zero polynomial
    bool is_homogeneous() const;                  // zero polynomial counts as homogeneous
    bool is_homogeneous_weighted(const std::vector<long>& weights) const;

private:
    struct Impl;
    explicit MultiPoly(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    static MultiPoly make(RingPtr ring, std::vector<Term> terms); // terms already canonical
    std::shared_ptr<const Impl> impl_;
};

std::string to_string(const MultiPoly& p);

/// A ring homomorphism given by the images of the source variables.
/// Applying it substitutes every variable by its image; this respects + and
/// products by construction.
class PolyMap {
public:
    PolyMap(RingPtr source, RingPtr target, std::vector<MultiPoly> images);

    static PolyMap identity(RingPtr ring);

    const RingPtr& source() const { return source_; }
    const RingPtr& target() const { return target_; }
    const std::vector<MultiPoly>& images() const { return images_; }

    MultiPoly apply(const MultiPoly& p) const;

private:
    RingPtr source_;
    RingPtr target_;
    std::vector<MultiPoly> images_;
};

inline MultiPoly substitute(const MultiPoly& p, const PolyMap& m) { return m.apply(p); }

/// Pointwise composition: (outer ∘ inner) as a map of points, i.e. the
/// coordinate functions of `outer` with `inner`'s images substituted in.
PolyMap compose(const PolyMap& outer, const PolyMap& inner);

struct DegreeInfo {
    std::optional<unsigned> total_degree; // nullopt for zero
    bool homogeneous;
};

DegreeInfo degree_info(const MultiPoly& p);

/// Multiplicity of p at an affine point: translate the point to the origin
/// in the chart where variable `chart_var` equals one and return the lowest
/// total degree of a surviving monomial. Zero iff p does not vanish there.
/// The affine point has one entry per ring variable with entry `chart_var`
/// equal to 1.
unsigned multiplicity_at(const MultiPoly& p, const std::vector<Rat>& point,
                         std::size_t chart_var);

/// Convenience wrapper for integer projective points: normalizes in the
/// chart of the last nonzero coordinate.
unsigned multiplicity_at_point(const MultiPoly& p, const std::vector<long>& proj_point);

/// Exact division, leading-term recursion in graded-lex order. Returns the
/// quotient when p = q * r exactly, nullopt when the recursion gets stuck.
/// Sufficient for monomial divisors and products of known factors; exotic
/// divisible inputs may still be reported non-divisible, never wrongly
/// divided.
std::optional<MultiPoly> divide_exact(const MultiPoly& p, const MultiPoly& q);

} // namespace unirat
