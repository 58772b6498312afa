#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace unirat {

/// An ordered list of variable names. Polynomials refer to their ring by
/// shared pointer; two rings are interchangeable iff their variable lists
/// are identical (same names, same order).
class Ring {
public:
    explicit Ring(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static std::shared_ptr<const Ring> make(std::vector<std::string> vars) {
        return std::make_shared<const Ring>(std::move(vars));
    }

    std::size_t size() const { return vars_.size(); }
    const std::string& var(std::size_t i) const { return vars_[i]; }
    const std::vector<std::string>& vars() const { return vars_; }

    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return i;
        return std::nullopt;
    }

    bool operator==(const Ring& other) const { return vars_ == other.vars_; }
    bool operator!=(const Ring& other) const { return vars_ != other.vars_; }

private:
    std::vector<std::string> vars_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
    if (a == b) return true;
    return a && b && *a == *b;
}

} // namespace unirat
