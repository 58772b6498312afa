#include "unirat/modular.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace unirat {

QSeries::QSeries(long truncation) {
    if (truncation < 0) throw Error("truncation must be non-negative");
    c_.assign(static_cast<std::size_t>(truncation) + 1, Int(0));
}

QSeries QSeries::one(long truncation) {
    QSeries s(truncation);
    s.c_[0] = 1;
    return s;
}

const Int& QSeries::coeff(long k) const {
    static const Int zero(0);
    if (k < 0) throw Error("negative q-power");
    if (k >= static_cast<long>(c_.size())) return zero;
    return c_[static_cast<std::size_t>(k)];
}

void QSeries::set_coeff(long k, Int value) {
    if (k < 0 || k >= static_cast<long>(c_.size())) throw Error("coefficient index out of range");
    c_[static_cast<std::size_t>(k)] = std::move(value);
}

QSeries QSeries::operator+(const QSeries& rhs) const {
    QSeries out(std::min(truncation(), rhs.truncation()));
    for (std::size_t k = 0; k < out.c_.size(); ++k) out.c_[k] = c_[k] + rhs.c_[k];
    return out;
}

QSeries QSeries::operator-(const QSeries& rhs) const {
    QSeries out(std::min(truncation(), rhs.truncation()));
    for (std::size_t k = 0; k < out.c_.size(); ++k) out.c_[k] = c_[k] - rhs.c_[k];
    return out;
}

QSeries QSeries::operator*(const QSeries& rhs) const {
    QSeries out(std::min(truncation(), rhs.truncation()));
    std::size_t n = out.c_.size();
    for (std::size_t i = 0; i < n && i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; i + j < n && j < rhs.c_.size(); ++j) {
            if (rhs.c_[j] == 0) continue;
            out.c_[i + j] += c_[i] * rhs.c_[j];
        }
    }
    return out;
}

QSeries QSeries::inverse() const {
    if (c_.empty() || c_[0] != 1) throw Error("series inversion needs constant term 1");
    // b_n = -sum_{k=1..n} a_k b_{n-k}
    QSeries out(truncation());
    out.c_[0] = 1;
    for (std::size_t n = 1; n < c_.size(); ++n) {
        Int acc(0);
        for (std::size_t k = 1; k <= n; ++k) acc -= c_[k] * out.c_[n - k];
        out.c_[n] = acc;
    }
    return out;
}

QSeries QSeries::shifted(long k) const {
    if (k < 0) throw Error("negative shift");
    QSeries out(truncation() + k);
    for (std::size_t i = 0; i < c_.size(); ++i)
        out.c_[i + static_cast<std::size_t>(k)] = c_[i];
    return out;
}

namespace {

// Pentagonal support of prod (1 - q^n): exponent k(3k-1)/2 carries sign
// (-1)^k for k = ..., -2, -1, 1, 2, ...
std::vector<std::pair<long, int>> pentagonal_terms(long bound) {
    std::vector<std::pair<long, int>> out;
    for (long k = 1;; ++k) {
        long g1 = k * (3 * k - 1) / 2;
        long g2 = k * (3 * k + 1) / 2;
        int sign = (k % 2 == 0) ? 1 : -1;
        if (g1 > bound && g2 > bound) break;
        if (g1 <= bound) out.emplace_back(g1, sign);
        if (g2 <= bound) out.emplace_back(g2, sign);
    }
    return out;
}

} // namespace

QSeries euler_product(long truncation) {
    if (truncation < 1) throw Error("truncation must be at least 1");
    QSeries s(truncation);
    s.set_coeff(0, Int(1));
    for (auto [g, sign] : pentagonal_terms(truncation)) s.set_coeff(g, Int(sign));
    return s;
}

long EtaQuotientSpec::prefactor_numerator() const {
    long total = 0;
    for (auto [m, e] : factors) total += m * e;
    return total;
}

EtaQuotientSpec EtaQuotientSpec::parse(const std::string& text) {
    EtaQuotientSpec spec;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw Error("eta spec entries look like m:e");
        try {
            long m = std::stol(item.substr(0, colon));
            long e = std::stol(item.substr(colon + 1));
            if (m < 1) throw Error("eta multiplier must be >= 1");
            spec.factors.emplace_back(m, e);
        } catch (const std::logic_error&) {
            throw Error("malformed eta spec entry '" + item + "'");
        }
    }
    if (spec.factors.empty()) throw Error("empty eta spec");
    return spec;
}

std::string EtaQuotientSpec::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < factors.size(); ++i)
        out << (i ? "," : "") << factors[i].first << ":" << factors[i].second;
    return out.str();
}

QSeries eta_quotient(const EtaQuotientSpec& spec, long truncation) {
    long pre = spec.prefactor_numerator();
    if (pre < 0 || pre % 24 != 0)
        throw Error("eta quotient prefactor " + std::to_string(pre) +
                    "/24 is not a non-negative integer");
    long shift = pre / 24;
    if (truncation < shift) throw Error("truncation below the q-power prefactor");

    long inner = truncation - shift;
    QSeries product = QSeries::one(inner);
    for (auto [m, e] : spec.factors) {
        if (inner < 1) break;
        // E(q^m) up to q^inner: pentagonal exponents scaled by m.
        QSeries factor = QSeries::one(inner);
        for (auto [g, sign] : pentagonal_terms(inner / m))
            factor.set_coeff(m * g, Int(sign));
        QSeries power = e > 0 ? factor : factor.inverse();
        for (long k = 0; k < std::abs(e); ++k) product = product * power;
    }
    return product.shifted(shift);
}

Newform::Newform(NewformSpec spec) : spec_(std::move(spec)) {
    if (spec_.anchor.empty()) throw Error("newform needs an anchored coefficient prefix");
    validate_anchor();
}

void Newform::ensure(long k) const {
    if (k < static_cast<long>(coeffs_.size())) return;

    if (std::holds_alternative<std::string>(spec_.source)) {
        if (coeffs_.empty()) {
            auto data = read_coefficient_file(std::get<std::string>(spec_.source));
            coeffs_ = std::move(data);
        }
        if (k >= static_cast<long>(coeffs_.size()))
            throw Error("coefficient file for " + spec_.name + " is truncated before index " +
                        std::to_string(k));
        return;
    }

    constexpr long kCap = 1 << 20;
    long n = std::max<long>(128, static_cast<long>(coeffs_.size()) - 1);
    while (n < k) n *= 2;
    n = std::min(n, kCap);
    if (k > n) throw Error("coefficient demand beyond the truncation cap");

    QSeries series = eta_quotient(std::get<EtaQuotientSpec>(spec_.source), n);
    coeffs_.assign(static_cast<std::size_t>(n) + 1, Int(0));
    for (long i = 0; i <= n; ++i) coeffs_[static_cast<std::size_t>(i)] = series.coeff(i);
}

void Newform::validate_anchor() const {
    if (validated_) return;
    long limit = static_cast<long>(spec_.anchor.size());
    ensure(limit);
    for (long k = 1; k <= limit; ++k) {
        if (coeffs_[static_cast<std::size_t>(k)] != spec_.anchor[static_cast<std::size_t>(k - 1)])
            throw Error("newform " + spec_.name + " failed its anchored prefix at q^" +
                        std::to_string(k) + ": got " +
                        coeffs_[static_cast<std::size_t>(k)].get_str() + ", anchored " +
                        spec_.anchor[static_cast<std::size_t>(k - 1)].get_str());
    }
    validated_ = true;
}

Int Newform::coeff(long k) const {
    if (k < 1) throw Error("newform coefficients start at q^1");
    ensure(k);
    return coeffs_[static_cast<std::size_t>(k)];
}

std::map<long, Int> Newform::prime_coeffs(std::span<const long> primes) const {
    std::map<long, Int> out;
    for (long p : primes) out[p] = coeff(p);
    return out;
}

namespace {

std::vector<Int> ints(std::initializer_list<long> values) {
    std::vector<Int> out;
    for (long v : values) out.emplace_back(v);
    return out;
}

} // namespace

NewformSpec builtin_newform(const std::string& name) {
    if (name == "nf6k4") {
        return NewformSpec{
            "nf6k4", 4, 6, "Gamma0",
            EtaQuotientSpec{{{1, 2}, {2, 2}, {3, 2}, {6, 2}}},
            ints({1, -2, -3, 4, 6, 6, -16, -8, 9, -12, 12}),
        };
    }
    if (name == "nf16k3") {
        // Supported on exponents 1 mod 4; anchored through q^37.
        std::vector<Int> anchor(37, Int(0));
        anchor[0] = 1;
        anchor[4] = -6;
        anchor[8] = 9;
        anchor[12] = 10;
        anchor[16] = -30;
        anchor[24] = 11;
        anchor[28] = 42;
        anchor[36] = -70;
        return NewformSpec{"nf16k3", 3, 16, "Gamma1", EtaQuotientSpec{{{4, 6}}}, anchor};
    }
    if (name == "nf8k3") {
        return NewformSpec{
            "nf8k3", 3, 8, "Gamma1",
            EtaQuotientSpec{{{1, 2}, {2, 1}, {4, 1}, {8, 2}}},
            ints({1, -2, -2, 4, 0, 4, 0, -8, -5, 0, 14, -8}),
        };
    }
    throw Error("unknown builtin form '" + name + "' (expected nf6k4, nf16k3, or nf8k3)");
}

std::vector<Int> read_coefficient_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open coefficient file " + path);
    std::vector<Int> coeffs(1, Int(0)); // index 0 unused
    long last_k = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream row(line);
        long k;
        std::string value;
        if (!(row >> k)) continue; // blank or comment-only line
        if (!(row >> value))
            throw Error(path + ":" + std::to_string(line_no) + ": missing coefficient");
        if (k <= last_k)
            throw Error(path + ":" + std::to_string(line_no) + ": indices must ascend");
        coeffs.resize(static_cast<std::size_t>(k) + 1, Int(0));
        try {
            coeffs[static_cast<std::size_t>(k)] = Int(value);
        } catch (const std::invalid_argument&) {
            throw Error(path + ":" + std::to_string(line_no) + ": bad integer '" + value + "'");
        }
        last_k = k;
    }
    if (last_k == 0) throw Error(path + ": no coefficients");
    return coeffs;
}

std::string write_coefficient_lines(const QSeries& series) {
    std::ostringstream out;
    for (long k = 1; k <= series.truncation(); ++k)
        out << k << " " << series.coeff(k).get_str() << "\n";
    return out.str();
}

std::string verdict_kind_name(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::NotUnirationalGuess: return "not_unirational_guess";
        case VerdictKind::Inconclusive: return "inconclusive";
        case VerdictKind::CongruencePass: return "congruence_pass";
        case VerdictKind::CongruenceFail: return "congruence_fail";
        case VerdictKind::ExactFit: return "exact_fit";
    }
    return "unknown";
}

const char* const kCongruenceCaveat =
    "heuristic only: assumes the singular model and a smooth resolution have "
    "the same point count mod p at every good prime; this is not checked";

Verdict esnault_guess(std::span<const PointCountRecord> records) {
    if (records.empty()) throw Error("no point-count records");
    Verdict v;
    v.caveat = kCongruenceCaveat;
    for (const auto& r : records) {
        if (!r.good) continue;
        v.sigma.push_back(r.p);
        long residue = residue_of(r, Convention::Weight3); // count - 1 mod p
        bool nontrivial = residue != 0;
        if (nontrivial) v.sigma0.push_back(r.p);
        v.details.push_back(PrimeDetail{r.p, r.count, residue, std::nullopt, nontrivial});
    }
    v.threshold_met = v.sigma0.size() >= 10;
    v.kind = v.sigma0.empty() ? VerdictKind::Inconclusive : VerdictKind::NotUnirationalGuess;
    return v;
}

Verdict congruence_match(std::span<const PointCountRecord> records, const Newform& form,
                         Convention convention) {
    Verdict v;
    v.caveat = kCongruenceCaveat;
    bool all_ok = true;
    bool any_good = false;
    for (const auto& r : records) {
        if (!r.good) continue;
        any_good = true;
        v.sigma.push_back(r.p);
        long residue = residue_of(r, convention);
        if (residue_of(r, Convention::Weight3) != 0) v.sigma0.push_back(r.p);
        Int bp = form.coeff(r.p);
        long bp_mod = static_cast<long>(mpz_fdiv_ui(bp.get_mpz_t(), static_cast<unsigned long>(r.p)));
        bool ok = bp_mod == residue;
        all_ok &= ok;
        v.details.push_back(PrimeDetail{r.p, r.count, residue, bp, ok});
    }
    if (!any_good) throw Error("congruence check needs at least one good prime");
    v.threshold_met = v.sigma0.size() >= 10;
    v.kind = all_ok ? VerdictKind::CongruencePass : VerdictKind::CongruenceFail;
    return v;
}

std::variant<Cy3Fit, Cy3FitFailure> exact_cy3_fit(std::span<const PointCountRecord> records,
                                                  const Newform& form) {
    std::vector<const PointCountRecord*> good;
    for (const auto& r : records)
        if (r.good) good.push_back(&r);
    if (good.size() < 3) throw Error("exact fit needs at least 3 good primes");
    std::sort(good.begin(), good.end(),
              [](const PointCountRecord* a, const PointCountRecord* b) { return a->p < b->p; });

    // Residual R_p := b_p - 1 - p^3 + count must equal c1*p + c2*p^2.
    auto residual = [&](const PointCountRecord& r) -> Int {
        Int p(r.p);
        return form.coeff(r.p) - 1 - p * p * p + Int(static_cast<unsigned long>(r.count));
    };

    // Solve from the two largest good primes; they pin the constants best
    // and leave the small primes as genuine checks.
    const PointCountRecord& ra = *good[good.size() - 2];
    const PointCountRecord& rb = *good[good.size() - 1];
    Int pa(ra.p), pb(rb.p);
    Int Ra = residual(ra), Rb = residual(rb);
    // c1*pa + c2*pa^2 = Ra ; c1*pb + c2*pb^2 = Rb
    Int det = pa * pb * pb - pb * pa * pa; // pa*pb*(pb-pa) != 0
    Int c1_num = Ra * pb * pb - Rb * pa * pa;
    Int c2_num = Rb * pa - Ra * pb;
    if (c1_num % det != 0 || c2_num % det != 0)
        return Cy3FitFailure{"no integer solution for (c1, c2)", rb.p};
    Int c1 = c1_num / det;
    Int c2 = c2_num / det;

    Cy3Fit fit{c1, c2, {}};
    for (const auto* r : good) {
        Int p(r->p);
        if (residual(*r) != c1 * p + c2 * p * p)
            return Cy3FitFailure{"fit inconsistent at p = " + std::to_string(r->p), r->p};
        fit.verified.push_back(r->p);
    }
    return fit;
}

std::vector<long> weil_bound_check(const Newform& form, long h, int d,
                                   std::span<const long> primes) {
    if (h < 0 || d < 1) throw Error("weil bound needs h >= 0 and d >= 1");
    std::vector<long> violations;
    for (long p : primes) {
        Int bp = form.coeff(p);
        Int rhs(h);
        rhs *= rhs;
        Int pk(p);
        for (int i = 1; i < d; ++i) pk *= p;
        rhs *= pk;
        if (bp * bp > rhs) violations.push_back(p);
    }
    return violations;
}

std::string verdict_to_json(const Verdict& verdict) {
    nlohmann::json doc;
    doc["kind"] = verdict_kind_name(verdict.kind);
    doc["sigma"] = verdict.sigma;
    doc["sigma0"] = verdict.sigma0;
    doc["threshold_met"] = verdict.threshold_met;
    doc["caveat"] = verdict.caveat;
    nlohmann::json details = nlohmann::json::array();
    for (const auto& d : verdict.details) {
        nlohmann::json row;
        row["p"] = d.p;
        row["count"] = d.count;
        row["residue"] = d.residue;
        if (d.bp) row["b_p"] = d.bp->get_str();
        row["ok"] = d.ok;
        details.push_back(std::move(row));
    }
    doc["details"] = std::move(details);
    return doc.dump(2);
}

} // namespace unirat
