#pragma once

#include "unirat/model.hpp"
#include "unirat/poly.hpp"

#include <array>
#include <string>
#include <vector>

namespace unirat {

/// The six alphabet polynomials in (x, y, z, t), their degree-8 product f,
/// the Cremona-style involution sigma, and the six branch components of the
/// double octic X. Everything is exact and immutable.
struct AlphabetFixture {
    RingPtr ring; // (x, y, z, t)
    std::array<MultiPoly, 6> f;      // f[0] = f1, ..., f[5] = f6
    MultiPoly f_product;             // f1*f2*f3*f4
    PolyMap sigma;                   // (x:y:z:t) -> (xz : yz : 4xy : tz)
    std::array<MultiPoly, 6> branch; // B1..B6
};

AlphabetFixture build_fixture();

/// One checked polynomial identity inside a report.
struct IdentityCheck {
    std::string name;
    bool ok;
    std::string expected; // printed form, for diffs; empty when ok
    std::string actual;
};

struct SymmetryReport {
    std::vector<IdentityCheck> checks;
    bool all_ok() const;
};

struct SigmaReport {
    std::vector<IdentityCheck> checks;
    bool all_ok() const;
};

/// Verifies, as exact identities: the x<->y swap exchanges f1 with f2 and f3
/// with f4 while fixing f5 and f6, and is an involution on all six; the
/// shift t -> z+t sends f5 to f6 and fixes f1 and f2, and is undone by
/// t -> t-z on all six.
SymmetryReport verify_symmetries(const AlphabetFixture& fx);

/// Verifies: sigma∘sigma = 4xyz * identity componentwise; the degree-16
/// pullback identity f∘sigma = 256 x^3 y^3 z^4 (x-z)(y-z)(xz-(y-t)^2)(yz-(x-t)^2);
/// and the change-of-variable consistency x^2 y^2 z^4 * (branch octic of X)
/// = (f∘sigma)/256.
SigmaReport verify_sigma(const AlphabetFixture& fx);

/// The five builtin models: X and calX (double covers of P^3 branched along
/// octics, bad primes {2,3}), the quartic Q in P^3 (bad primes {2}), the
/// double sextic S over P^2 (bad primes {2}), and the Fermat quartic
/// (bad primes {2}).
std::vector<VarietyModel> build_models();

/// Lookup into build_models() by name: "X", "calX", "Q", "S", "fermat".
VarietyModel builtin_model(const std::string& name);

} // namespace unirat
