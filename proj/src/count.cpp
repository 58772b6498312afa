#include "unirat/count.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

namespace unirat {

bool is_odd_prime(long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

PrimeFieldCtx make_ctx(long p) {
    if (!is_odd_prime(p)) throw Error(std::to_string(p) + " is not an odd prime");
    PrimeFieldCtx ctx;
    ctx.p = p;
    ctx.flags.assign(static_cast<std::size_t>(p), PrimeFieldCtx::SquareFlag::NonSquare);
    ctx.flags[0] = PrimeFieldCtx::SquareFlag::Zero;
    for (long a = 1; a < p; ++a) {
        unsigned long long sq = static_cast<unsigned long long>(a) * a % p;
        ctx.flags[static_cast<std::size_t>(sq)] = PrimeFieldCtx::SquareFlag::Square;
    }
    return ctx;
}

namespace {

// Dense recursive representation of a reduced polynomial: coefficients laid
// out with the first variable as the major dimension, so specializing it is
// a Horner pass over contiguous blocks.
struct DensePoly {
    int nvars = 0;
    std::size_t stride = 1; // degree + 1
    std::vector<unsigned long long> c; // size stride^nvars

    std::size_t block() const {
        std::size_t b = 1;
        for (int i = 1; i < nvars; ++i) b *= stride;
        return b;
    }
};

// Specialize the first variable to `a`; out must have room for block() values.
void specialize(const DensePoly& in, unsigned long long a, unsigned long long p,
                DensePoly& out) {
    std::size_t b = in.block();
    out.nvars = in.nvars - 1;
    out.stride = in.stride;
    out.c.assign(b, 0);
    // Horner over the degree-major blocks.
    const unsigned long long* top = in.c.data() + (in.stride - 1) * b;
    std::copy(top, top + b, out.c.begin());
    for (std::size_t d = in.stride - 1; d-- > 0;) {
        const unsigned long long* blk = in.c.data() + d * b;
        for (std::size_t i = 0; i < b; ++i) out.c[i] = (out.c[i] * a + blk[i]) % p;
    }
}

// Build the dense form of `poly` restricted to the stratum where the first
// `lead` base variables vanish and variable `lead` equals one.
DensePoly stratum_poly(const MultiPoly& poly, std::size_t lead, long p) {
    const auto& terms = poly.terms();
    const auto& coeffs = poly.reduced_coeffs(p);
    std::size_t n = poly.ring()->size();
    int free_vars = static_cast<int>(n - lead - 1);

    unsigned degree = poly.total_degree() ? *poly.total_degree() : 0;
    DensePoly dense;
    dense.nvars = free_vars;
    dense.stride = degree + 1;
    std::size_t size = 1;
    for (int i = 0; i < free_vars; ++i) size *= dense.stride;
    dense.c.assign(size, 0);

    for (std::size_t k = 0; k < terms.size(); ++k) {
        const auto& e = terms[k].exps;
        bool lives = true;
        for (std::size_t i = 0; i < lead; ++i) lives &= (e[i] == 0);
        if (!lives) continue;
        std::size_t idx = 0;
        for (std::size_t i = lead + 1; i < n; ++i) idx = idx * dense.stride + e[i];
        dense.c[idx] = (dense.c[idx] + static_cast<unsigned long long>(coeffs[k])) %
                       static_cast<unsigned long long>(p);
    }
    return dense;
}

// scratch must already hold one slot per recursion level.
template <typename Visit>
void enumerate(const DensePoly& poly, unsigned long long p, std::vector<DensePoly>& scratch,
               int depth, Visit&& visit) {
    if (poly.nvars == 0) {
        visit(poly.c[0]);
        return;
    }
    if (poly.nvars == 1) {
        // Final variable: plain Horner per value.
        for (unsigned long long a = 0; a < p; ++a) {
            unsigned long long v = poly.c[poly.stride - 1];
            for (std::size_t d = poly.stride - 1; d-- > 0;) v = (v * a + poly.c[d]) % p;
            visit(v);
        }
        return;
    }
    for (unsigned long long a = 0; a < p; ++a) {
        specialize(poly, a, p, scratch[depth]);
        enumerate(scratch[depth], p, scratch, depth + 1, visit);
    }
}

} // namespace

PointCountRecord count_points(const VarietyModel& model, long p) {
    model.validate();
    if (!is_odd_prime(p)) throw Error(std::to_string(p) + " is not an odd prime");
    for (long w : model.weights)
        if (w != 1) throw Error("point counting requires base weights all equal to 1");

    const bool cover = model.kind == VarietyModel::Kind::DoubleCover;
    PrimeFieldCtx ctx = cover ? make_ctx(p) : PrimeFieldCtx{};

    PointCountRecord rec;
    rec.p = p;
    rec.good = !model.bad_primes.count(p);

    unsigned long long zeros = 0, squares = 0;
    const std::size_t n = model.base_ring->size();
    std::vector<DensePoly> scratch(n); // one slot per specialization level
    for (std::size_t lead = 0; lead < n; ++lead) {
        DensePoly dense = stratum_poly(model.poly, lead, p);
        if (cover) {
            enumerate(dense, static_cast<unsigned long long>(p), scratch, 0,
                      [&](unsigned long long v) {
                          switch (ctx.flag(static_cast<long>(v))) {
                              case PrimeFieldCtx::SquareFlag::Zero: ++zeros; break;
                              case PrimeFieldCtx::SquareFlag::Square: ++squares; break;
                              default: break;
                          }
                      });
        } else {
            enumerate(dense, static_cast<unsigned long long>(p), scratch, 0,
                      [&](unsigned long long v) { zeros += (v == 0); });
        }
    }

    rec.zeros = zeros;
    rec.squares = squares;
    // Fiber rule for w^2 = f: branch value 0 gives one point, a nonzero
    // square two, a non-square none. The cover coordinate adds nothing else:
    // base-zero ambient points would force w = 0 as well.
    rec.count = cover ? zeros + 2 * squares : zeros;
    return rec;
}

std::vector<PointCountRecord> count_range(const VarietyModel& model, long bound, int jobs) {
    std::vector<long> primes;
    for (long p = 3; p <= bound; p += 2)
        if (is_odd_prime(p)) primes.push_back(p);

    std::vector<PointCountRecord> records(primes.size());
    if (primes.empty()) return records;

    unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs)
                                : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, primes.size());

    if (workers <= 1) {
        for (std::size_t i = 0; i < primes.size(); ++i)
            records[i] = count_points(model, primes[i]);
        return records;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= primes.size()) return;
                try {
                    records[i] = count_points(model, primes[i]);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return records;
}

long residue_of(const PointCountRecord& record, Convention convention) {
    long p = record.p;
    long c = static_cast<long>(record.count % static_cast<unsigned long long>(p));
    long r = convention == Convention::Weight4 ? (1 - c) % p : (c - 1) % p;
    return r < 0 ? r + p : r;
}

std::vector<std::pair<long, long>> residue_report(std::span<const PointCountRecord> records,
                                                  Convention convention) {
    std::vector<std::pair<long, long>> out;
    out.reserve(records.size());
    for (const auto& r : records) out.emplace_back(r.p, residue_of(r, convention));
    return out;
}

std::string records_to_json(std::span<const PointCountRecord> records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json row;
        row["p"] = r.p;
        row["count"] = r.count;
        row["zeros"] = r.zeros;
        row["squares"] = r.squares;
        row["residue_weight4"] = residue_of(r, Convention::Weight4);
        row["good_reduction"] = r.good;
        arr.push_back(std::move(row));
    }
    return arr.dump(2);
}

std::string records_to_csv(std::span<const PointCountRecord> records) {
    std::ostringstream out;
    out << "p,count,residue_weight4,good_reduction\n";
    for (const auto& r : records)
        out << r.p << "," << r.count << "," << residue_of(r, Convention::Weight4) << ","
            << (r.good ? "true" : "false") << "\n";
    return out.str();
}

std::string records_to_markdown(std::span<const PointCountRecord> records) {
    std::ostringstream out;
    for (std::size_t start = 0; start < records.size(); start += 8) {
        std::size_t end = std::min(records.size(), start + 8);
        out << "| p |";
        for (std::size_t i = start; i < end; ++i) out << " " << records[i].p << " |";
        out << "\n|---|";
        for (std::size_t i = start; i < end; ++i) out << "---|";
        out << "\n| count |";
        for (std::size_t i = start; i < end; ++i) out << " " << records[i].count << " |";
        out << "\n| 1 - count mod p |";
        for (std::size_t i = start; i < end; ++i)
            out << " " << residue_of(records[i], Convention::Weight4) << " |";
        out << "\n\n";
    }
    return out.str();
}

} // namespace unirat
