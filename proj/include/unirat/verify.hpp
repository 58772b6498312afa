#pragma once

#include "unirat/poly.hpp"

#include <string>
#include <vector>

namespace unirat {

/// The printed values the reproduction run is checked against: the 16-row
/// incidence table, the 24-prime point-count table with its weight-4 residue
/// row, and the three newform coefficient prefixes. Embedded in the library
/// so runs are offline and byte-stable; a JSON override exists for fault
/// injection in tests.
struct Expectations {
    struct Table1Row {
        std::vector<long> point;
        unsigned multiplicity;
        std::vector<std::string> surfaces;
        std::vector<std::string> curves;
    };
    struct Table2Row {
        long p;
        unsigned long long count;
        long residue; // 1 - count mod p
    };

    std::vector<Table1Row> table1;
    std::vector<Table2Row> table2;
    std::vector<Int> nf6k4_prefix;
    std::vector<Int> nf16k3_prefix;
    std::vector<Int> nf8k3_prefix;
};

const Expectations& builtin_expectations();
Expectations expectations_from_json(const std::string& json_text);
std::string expectations_to_json(const Expectations& expectations);

struct VerifyItem {
    std::string name;
    bool ok;
    std::string expected; // only filled on mismatch
    std::string actual;
};

struct VerifySection {
    std::string name;
    std::vector<VerifyItem> items;
    bool ok() const;
};

struct VerifyReport {
    std::vector<VerifySection> sections;
    bool ok() const;
};

/// Runs the reproduction suite and diffs everything against the
/// expectations. `sections` picks from {"alphabet", "sing", "count",
/// "modular"}; empty means all four. `jobs` is forwarded to the point
/// counting.
VerifyReport verify_paper(const std::vector<std::string>& sections, int jobs,
                          const Expectations& expectations = builtin_expectations());

std::string report_to_json(const VerifyReport& report);
std::string report_to_markdown(const VerifyReport& report);

} // namespace unirat
