#include "unirat/model.hpp"

#include "unirat/parser.hpp"

#include <json.hpp>

namespace unirat {

void VarietyModel::validate() const {
    if (!base_ring || base_ring->size() == 0) throw Error("model needs at least one base variable");
    if (weights.size() != base_ring->size()) throw Error("one weight per base variable required");
    for (long w : weights)
        if (w <= 0) throw Error("weights must be positive");
    if (poly.is_zero()) throw Error("defining polynomial must be nonzero");
    if (!poly.is_homogeneous_weighted(weights))
        throw Error("polynomial is not homogeneous for the declared weights");
    if (kind == Kind::DoubleCover) {
        unsigned d = *poly.total_degree();
        if (d % 2 != 0) throw Error("branch divisor of a double cover must have even degree");
        if (cover_weight != static_cast<long>(d / 2))
            throw Error("cover coordinate weight must be half the branch degree");
    }
    for (long p : bad_primes)
        if (p < 2) throw Error("bad primes must be at least 2");
}

VarietyModel make_hypersurface(std::string name, RingPtr base_ring, MultiPoly defining,
                               std::set<long> bad_primes) {
    VarietyModel m;
    m.name = std::move(name);
    m.base_ring = std::move(base_ring);
    m.weights.assign(m.base_ring->size(), 1);
    m.kind = VarietyModel::Kind::Hypersurface;
    m.poly = std::move(defining);
    m.bad_primes = std::move(bad_primes);
    m.validate();
    return m;
}

VarietyModel make_double_cover(std::string name, RingPtr base_ring, MultiPoly branch,
                               std::set<long> bad_primes) {
    VarietyModel m;
    m.name = std::move(name);
    m.base_ring = std::move(base_ring);
    m.weights.assign(m.base_ring->size(), 1);
    m.kind = VarietyModel::Kind::DoubleCover;
    m.poly = std::move(branch);
    m.cover_weight = static_cast<long>(*m.poly.total_degree() / 2);
    m.bad_primes = std::move(bad_primes);
    m.validate();
    return m;
}

VarietyModel model_from_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid variety file: ") + e.what());
    }

    auto need = [&](const char* key) -> const nlohmann::json& {
        if (!doc.contains(key)) throw Error(std::string("variety file missing field '") + key + "'");
        return doc.at(key);
    };

    VarietyModel m;
    m.name = need("name").get<std::string>();
    m.base_ring = Ring::make(need("variables").get<std::vector<std::string>>());
    m.weights = doc.contains("weights") ? doc.at("weights").get<std::vector<long>>()
                                        : std::vector<long>(m.base_ring->size(), 1);

    std::string kind = need("kind").get<std::string>();
    if (kind == "hypersurface") {
        m.kind = VarietyModel::Kind::Hypersurface;
    } else if (kind == "double_cover") {
        m.kind = VarietyModel::Kind::DoubleCover;
    } else {
        throw Error("variety kind must be 'hypersurface' or 'double_cover'");
    }

    m.poly = parse_poly(need("polynomial").get<std::string>(), m.base_ring);
    if (m.kind == VarietyModel::Kind::DoubleCover) {
        if (m.poly.is_zero() || *m.poly.total_degree() % 2 != 0)
            throw Error("branch divisor of a double cover must have even degree");
        m.cover_weight = static_cast<long>(*m.poly.total_degree() / 2);
    }
    if (doc.contains("bad_primes"))
        for (long p : doc.at("bad_primes").get<std::vector<long>>()) m.bad_primes.insert(p);

    m.validate();
    return m;
}

std::string model_to_json(const VarietyModel& model) {
    nlohmann::json doc;
    doc["name"] = model.name;
    doc["variables"] = model.base_ring->vars();
    doc["weights"] = model.weights;
    doc["kind"] = model.kind == VarietyModel::Kind::Hypersurface ? "hypersurface" : "double_cover";
    doc["polynomial"] = to_string(model.poly);
    doc["bad_primes"] = std::vector<long>(model.bad_primes.begin(), model.bad_primes.end());
    return doc.dump(2);
}

} // namespace unirat
