#pragma once

#include "unirat/model.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace unirat {

/// Quadratic residue classes of F_p, tabulated once per prime so the
/// enumeration inner loop is a lookup.
struct PrimeFieldCtx {
    enum class SquareFlag : std::uint8_t { Zero = 0, Square = 1, NonSquare = 2 };

    long p = 0;
    std::vector<SquareFlag> flags; // indexed by residue in [0, p)

    SquareFlag flag(long value) const { return flags[static_cast<std::size_t>(value)]; }
};

bool is_odd_prime(long p);

/// Builds the square table by squaring every residue. Throws unless p is an
/// odd prime.
PrimeFieldCtx make_ctx(long p);

/// Point count of one reduction. For double covers the fiber rule gives
/// count = zeros + 2*squares, and zeros + squares + nonsquares covers the
/// whole base projective space.
struct PointCountRecord {
    long p = 0;
    unsigned long long count = 0;
    unsigned long long zeros = 0;   // base points with value 0
    unsigned long long squares = 0; // base points with nonzero square value (covers only)
    bool good = true;               // p not in the model's bad-prime set
};

/// Exact point count of the model over F_p. The base projective space is
/// enumerated by canonical representatives (first nonzero coordinate
/// normalized to 1), stratified by the leading coordinate; evaluation uses
/// per-prime reduced coefficients in a nested Horner scheme. Any odd prime
/// is accepted; good/bad only tags the record.
PointCountRecord count_points(const VarietyModel& model, long p);

/// Records for every odd prime <= bound, ascending. `jobs` caps the worker
/// threads (0 = hardware concurrency); aggregation order is deterministic.
std::vector<PointCountRecord> count_range(const VarietyModel& model, long bound, int jobs = 1);

enum class Convention {
    Weight3, // residue = (count - 1) mod p
    Weight4, // residue = (1 - count) mod p
};

std::vector<std::pair<long, long>> residue_report(std::span<const PointCountRecord> records,
                                                  Convention convention);

long residue_of(const PointCountRecord& record, Convention convention);

/// Report renderings: JSON (canonical), CSV with columns
/// p,count,residue_weight4,good_reduction, and a markdown table in blocks of
/// eight primes with p / count / residue rows.
std::string records_to_json(std::span<const PointCountRecord> records);
std::string records_to_csv(std::span<const PointCountRecord> records);
std::string records_to_markdown(std::span<const PointCountRecord> records);

} // namespace unirat
