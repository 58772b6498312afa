#include "unirat/poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

namespace unirat {

Rat rational(const Int& num, const Int& den) {
    if (den == 0) throw Error("zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

int monomial_cmp(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
    unsigned da = 0, db = 0;
    for (unsigned e : a) da += e;
    for (unsigned e : b) db += e;
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

namespace {

// Descending graded-lex, so begin() is the leading term.
struct MonomialGreater {
    bool operator()(const std::vector<unsigned>& a, const std::vector<unsigned>& b) const {
        return monomial_cmp(a, b) > 0;
    }
};

using TermMap = std::map<std::vector<unsigned>, Rat, MonomialGreater>;

} // namespace

struct MultiPoly::Impl {
    RingPtr ring;
    std::vector<Term> terms; // descending graded-lex, no zero coefficients

    // eval_mod reduction cache: prime -> coefficients mod p aligned with terms
    mutable std::mutex cache_mutex;
    mutable std::map<long, std::vector<long>> mod_cache;
};

namespace {

std::vector<Term> collect(const RingPtr& ring, TermMap& acc) {
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [exps, c] : acc) {
        if (c == 0) continue;
        if (exps.size() != ring->size()) throw Error("exponent vector length mismatch");
        out.push_back(Term{exps, c});
    }
    return out;
}

void require_same_ring(const RingPtr& a, const RingPtr& b) {
    if (!same_ring(a, b)) throw Error("ring mismatch");
}

// Extended Euclid; p prime, a not divisible by p.
long inverse_mod(long a, long p) {
    long t = 0, new_t = 1, r = p, new_r = a % p;
    if (new_r < 0) new_r += p;
    while (new_r != 0) {
        long q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw Error("not invertible mod p");
    return t < 0 ? t + p : t;
}

long mpz_mod_long(const Int& z, long p) {
    return static_cast<long>(mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p)));
}

long pow_mod(long base, unsigned e, long p) {
    unsigned long long acc = 1, b = static_cast<unsigned long long>(base % p);
    unsigned long long m = static_cast<unsigned long long>(p);
    while (e) {
        if (e & 1u) acc = acc * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return static_cast<long>(acc);
}

} // namespace

MultiPoly MultiPoly::make(RingPtr ring, std::vector<Term> terms) {
    auto impl = std::make_shared<Impl>();
    impl->ring = std::move(ring);
    impl->terms = std::move(terms);
    return MultiPoly(std::move(impl));
}

MultiPoly MultiPoly::zero(RingPtr ring) {
    return make(std::move(ring), {});
}

MultiPoly MultiPoly::constant(RingPtr ring, Rat value) {
    std::vector<Term> terms;
    if (value != 0) terms.push_back(Term{std::vector<unsigned>(ring->size(), 0), std::move(value)});
    return make(std::move(ring), std::move(terms));
}

MultiPoly MultiPoly::variable(RingPtr ring, std::size_t index) {
    if (index >= ring->size()) throw Error("variable index out of range");
    std::vector<unsigned> e(ring->size(), 0);
    e[index] = 1;
    std::vector<Term> terms{Term{std::move(e), Rat(1)}};
    return make(std::move(ring), std::move(terms));
}

MultiPoly MultiPoly::from_terms(RingPtr ring, std::vector<Term> raw) {
    TermMap acc;
    for (auto& t : raw) {
        if (t.exps.size() != ring->size()) throw Error("exponent vector length mismatch");
        acc[t.exps] += t.coeff;
    }
    return make(ring, collect(ring, acc));
}

const RingPtr& MultiPoly::ring() const {
    if (!impl_) throw Error("use of empty polynomial handle");
    return impl_->ring;
}

const std::vector<Term>& MultiPoly::terms() const {
    if (!impl_) throw Error("use of empty polynomial handle");
    return impl_->terms;
}

MultiPoly MultiPoly::operator-() const {
    std::vector<Term> out = terms();
    for (auto& t : out) t.coeff = -t.coeff;
    return make(ring(), std::move(out));
}

MultiPoly MultiPoly::operator+(const MultiPoly& rhs) const {
    require_same_ring(ring(), rhs.ring());
    TermMap acc;
    for (const auto& t : terms()) acc[t.exps] += t.coeff;
    for (const auto& t : rhs.terms()) acc[t.exps] += t.coeff;
    return make(ring(), collect(ring(), acc));
}

MultiPoly MultiPoly::operator-(const MultiPoly& rhs) const {
    require_same_ring(ring(), rhs.ring());
    TermMap acc;
    for (const auto& t : terms()) acc[t.exps] += t.coeff;
    for (const auto& t : rhs.terms()) acc[t.exps] -= t.coeff;
    return make(ring(), collect(ring(), acc));
}

MultiPoly MultiPoly::operator*(const MultiPoly& rhs) const {
    require_same_ring(ring(), rhs.ring());
    TermMap acc;
    const std::size_t n = ring()->size();
    std::vector<unsigned> exps(n);
    for (const auto& a : terms()) {
        for (const auto& b : rhs.terms()) {
            for (std::size_t i = 0; i < n; ++i) exps[i] = a.exps[i] + b.exps[i];
            acc[exps] += a.coeff * b.coeff;
        }
    }
    return make(ring(), collect(ring(), acc));
}

MultiPoly MultiPoly::scaled(const Rat& c) const {
    if (c == 0) return zero(ring());
    std::vector<Term> out = terms();
    for (auto& t : out) t.coeff *= c;
    return make(ring(), std::move(out));
}

MultiPoly MultiPoly::pow(unsigned exponent) const {
    MultiPoly result = constant(ring(), Rat(1));
    MultiPoly base = *this;
    while (exponent) {
        if (exponent & 1u) result = result * base;
        base = base * base;
        exponent >>= 1;
    }
    return result;
}

bool MultiPoly::operator==(const MultiPoly& rhs) const {
    if (impl_ == rhs.impl_) return true;
    if (!same_ring(ring(), rhs.ring())) return false;
    const auto& a = terms();
    const auto& b = rhs.terms();
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].exps != b[i].exps || a[i].coeff != b[i].coeff) return false;
    return true;
}

Rat MultiPoly::coeff(const std::vector<unsigned>& exps) const {
    for (const auto& t : terms())
        if (t.exps == exps) return t.coeff;
    return Rat(0);
}

Rat MultiPoly::evaluate(const std::vector<Rat>& point) const {
    if (point.size() != ring()->size()) throw Error("point length mismatch");
    Rat total(0);
    for (const auto& t : terms()) {
        Rat v = t.coeff;
        for (std::size_t i = 0; i < point.size(); ++i) {
            for (unsigned e = 0; e < t.exps[i]; ++e) v *= point[i];
        }
        total += v;
    }
    return total;
}

const std::vector<long>& MultiPoly::reduced_coeffs(long p) const {
    if (!impl_) throw Error("use of empty polynomial handle");
    std::lock_guard<std::mutex> lock(impl_->cache_mutex);
    auto it = impl_->mod_cache.find(p);
    if (it != impl_->mod_cache.end()) return it->second;

    std::vector<long> reduced;
    reduced.reserve(impl_->terms.size());
    for (const auto& t : impl_->terms) {
        const Int& num = t.coeff.get_num();
        const Int& den = t.coeff.get_den();
        long d = mpz_mod_long(den, p);
        if (d == 0) throw Error("coefficient denominator divisible by prime " + std::to_string(p));
        long n = mpz_mod_long(num, p);
        reduced.push_back(static_cast<long>(
            static_cast<unsigned long long>(n) * static_cast<unsigned long long>(inverse_mod(d, p)) %
            static_cast<unsigned long long>(p)));
    }
    return impl_->mod_cache.emplace(p, std::move(reduced)).first->second;
}

long MultiPoly::eval_mod(const std::vector<long>& point, long p) const {
    if (point.size() != ring()->size()) throw Error("point length mismatch");
    const auto& coeffs = reduced_coeffs(p);
    std::vector<long> reduced_point(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) {
        long v = point[i] % p;
        reduced_point[i] = v < 0 ? v + p : v;
    }
    unsigned long long total = 0;
    const unsigned long long m = static_cast<unsigned long long>(p);
    const auto& ts = terms();
    for (std::size_t k = 0; k < ts.size(); ++k) {
        unsigned long long v = static_cast<unsigned long long>(coeffs[k]);
        for (std::size_t i = 0; i < reduced_point.size(); ++i) {
            unsigned e = ts[k].exps[i];
            if (e == 0) continue;
            v = v * static_cast<unsigned long long>(pow_mod(reduced_point[i], e, p)) % m;
        }
        total = (total + v) % m;
    }
    return static_cast<long>(total);
}

std::optional<unsigned> MultiPoly::total_degree() const {
    if (is_zero()) return std::nullopt;
    return terms().front().degree(); // leading term has maximal degree
}

unsigned MultiPoly::min_total_degree() const {
    if (is_zero()) throw Error("zero polynomial has no minimal degree");
    return terms().back().degree();
}

bool MultiPoly::is_homogeneous() const {
    if (is_zero()) return true;
    return terms().front().degree() == terms().back().degree();
}

bool MultiPoly::is_homogeneous_weighted(const std::vector<long>& weights) const {
    if (weights.size() != ring()->size()) throw Error("weight vector length mismatch");
    if (is_zero()) return true;
    auto wdeg = [&](const Term& t) {
        long d = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) d += weights[i] * static_cast<long>(t.exps[i]);
        return d;
    };
    long d0 = wdeg(terms().front());
    for (const auto& t : terms())
        if (wdeg(t) != d0) return false;
    return true;
}

std::string to_string(const MultiPoly& p) {
    if (p.is_zero()) return "0";
    const auto& ring = *p.ring();
    std::ostringstream out;
    bool first = true;
    for (const auto& t : p.terms()) {
        Rat c = t.coeff;
        bool negative = c < 0;
        if (first) {
            if (negative) out << "-";
        } else {
            out << (negative ? " - " : " + ");
        }
        if (negative) c = -c;

        bool has_vars = t.degree() > 0;
        bool coeff_is_one = (c == 1);
        if (!coeff_is_one || !has_vars) {
            out << c.get_num().get_str();
            if (c.get_den() != 1) out << "/" << c.get_den().get_str();
            if (has_vars) out << "*";
        }
        bool first_var = true;
        for (std::size_t i = 0; i < t.exps.size(); ++i) {
            if (t.exps[i] == 0) continue;
            if (!first_var) out << "*";
            out << ring.var(i);
            if (t.exps[i] > 1) out << "^" << t.exps[i];
            first_var = false;
        }
        first = false;
    }
    return out.str();
}

PolyMap::PolyMap(RingPtr source, RingPtr target, std::vector<MultiPoly> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_->size())
        throw Error("substitution needs one image per source variable");
    for (const auto& im : images_)
        if (!same_ring(im.ring(), target_)) throw Error("image outside the target ring");
}

PolyMap PolyMap::identity(RingPtr ring) {
    std::vector<MultiPoly> images;
    images.reserve(ring->size());
    for (std::size_t i = 0; i < ring->size(); ++i)
        images.push_back(MultiPoly::variable(ring, i));
    return PolyMap(ring, ring, std::move(images));
}

MultiPoly PolyMap::apply(const MultiPoly& p) const {
    if (!same_ring(p.ring(), source_)) throw Error("ring mismatch");

    // Cache image powers so repeated exponents cost one multiplication each.
    std::vector<std::vector<MultiPoly>> powers(images_.size());
    auto image_power = [&](std::size_t var, unsigned e) -> const MultiPoly& {
        auto& cache = powers[var];
        if (cache.empty()) cache.push_back(MultiPoly::constant(target_, Rat(1)));
        while (cache.size() <= e) cache.push_back(cache.back() * images_[var]);
        return cache[e];
    };

    MultiPoly total = MultiPoly::zero(target_);
    for (const auto& t : p.terms()) {
        MultiPoly prod = MultiPoly::constant(target_, t.coeff);
        for (std::size_t i = 0; i < t.exps.size(); ++i)
            if (t.exps[i] > 0) prod = prod * image_power(i, t.exps[i]);
        total = total + prod;
    }
    return total;
}

PolyMap compose(const PolyMap& outer, const PolyMap& inner) {
    if (!same_ring(outer.target(), inner.source()))
        throw Error("composition rings do not line up");
    std::vector<MultiPoly> images;
    images.reserve(outer.images().size());
    for (const auto& im : outer.images()) images.push_back(inner.apply(im));
    return PolyMap(outer.source(), inner.target(), std::move(images));
}

DegreeInfo degree_info(const MultiPoly& p) {
    return DegreeInfo{p.total_degree(), p.is_homogeneous()};
}

unsigned multiplicity_at(const MultiPoly& p, const std::vector<Rat>& point,
                         std::size_t chart_var) {
    if (p.is_zero()) throw Error("multiplicity of the zero polynomial is undefined");
    if (point.size() != p.ring()->size()) throw Error("point length mismatch");
    if (chart_var >= point.size() || point[chart_var] != 1)
        throw Error("chart coordinate must be normalized to 1");

    // Translate the point to the origin: substitute x_i -> point_i + x_i in
    // the chart (chart variable pinned to 1), then read off the lowest total
    // degree among the remaining monomials.
    const RingPtr& ring = p.ring();
    std::vector<MultiPoly> images;
    images.reserve(ring->size());
    for (std::size_t i = 0; i < ring->size(); ++i) {
        if (i == chart_var) {
            images.push_back(MultiPoly::constant(ring, Rat(1)));
        } else {
            images.push_back(MultiPoly::constant(ring, point[i]) + MultiPoly::variable(ring, i));
        }
    }
    MultiPoly shifted = PolyMap(ring, ring, std::move(images)).apply(p);
    if (shifted.is_zero())
        throw Error("polynomial vanishes identically on the chart");
    return shifted.min_total_degree();
}

unsigned multiplicity_at_point(const MultiPoly& p, const std::vector<long>& proj_point) {
    std::size_t chart = proj_point.size();
    for (std::size_t i = proj_point.size(); i-- > 0;) {
        if (proj_point[i] != 0) { chart = i; break; }
    }
    if (chart == proj_point.size()) throw Error("projective point must be nonzero");
    std::vector<Rat> affine(proj_point.size());
    for (std::size_t i = 0; i < proj_point.size(); ++i)
        affine[i] = rational(Int(proj_point[i]), Int(proj_point[chart]));
    return multiplicity_at(p, affine, chart);
}

std::optional<MultiPoly> divide_exact(const MultiPoly& p, const MultiPoly& q) {
    if (q.is_zero()) throw Error("division by the zero polynomial");
    if (!same_ring(p.ring(), q.ring())) throw Error("ring mismatch");

    const Term& lead_q = q.terms().front();
    MultiPoly remainder = p;
    TermMap quotient;
    const std::size_t n = p.ring()->size();

    while (!remainder.is_zero()) {
        const Term& lead_r = remainder.terms().front();
        std::vector<unsigned> exps(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (lead_r.exps[i] < lead_q.exps[i]) return std::nullopt; // stuck
            exps[i] = lead_r.exps[i] - lead_q.exps[i];
        }
        Rat c = lead_r.coeff / lead_q.coeff;
        quotient[exps] += c;
        MultiPoly factor = MultiPoly::from_terms(p.ring(), {Term{std::move(exps), std::move(c)}});
        remainder = remainder - factor * q;
    }

    std::vector<Term> terms;
    for (auto& [exps, c] : quotient)
        if (c != 0) terms.push_back(Term{exps, c});
    return MultiPoly::from_terms(p.ring(), std::move(terms));
}

} // namespace unirat
