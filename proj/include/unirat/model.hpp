#pragma once

#include "unirat/poly.hpp"

#include <set>
#include <string>
#include <vector>

namespace unirat {

/// A countable object: a hypersurface in (weighted) projective space, or a
/// double cover of projective space branched along an even-degree
/// hypersurface. `weights` are the base weights, one per base variable; a
/// double cover additionally has a cover coordinate of weight deg/2 which
/// carries no coordinates of its own here.
struct VarietyModel {
    enum class Kind { Hypersurface, DoubleCover };

    std::string name;
    RingPtr base_ring;
    std::vector<long> weights;
    Kind kind = Kind::Hypersurface;
    MultiPoly poly;        // defining polynomial, or branch divisor for covers
    long cover_weight = 0; // deg/2 for covers, 0 otherwise
    std::set<long> bad_primes;

    /// Checks the structural invariants: weighted homogeneity, even branch
    /// degree with matching cover weight. Throws on violation.
    void validate() const;
};

VarietyModel make_hypersurface(std::string name, RingPtr base_ring, MultiPoly defining,
                               std::set<long> bad_primes);

VarietyModel make_double_cover(std::string name, RingPtr base_ring, MultiPoly branch,
                               std::set<long> bad_primes);

/// Variety-definition file format: JSON with fields
///   name, variables, weights, kind ("hypersurface" | "double_cover"),
///   polynomial (expression string), bad_primes.
VarietyModel model_from_json(const std::string& json_text);
std::string model_to_json(const VarietyModel& model);

} // namespace unirat
