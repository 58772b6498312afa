#include "unirat/verify.hpp"

#include "unirat/alphabet.hpp"
#include "unirat/count.hpp"
#include "unirat/modular.hpp"
#include "unirat/parser.hpp"
#include "unirat/sing.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace unirat {

namespace {

Expectations::Table1Row row(std::vector<long> point, unsigned multiplicity,
                            std::vector<std::string> surfaces,
                            std::vector<std::string> curves) {
    return Expectations::Table1Row{std::move(point), multiplicity, std::move(surfaces),
                                   std::move(curves)};
}

Expectations build_builtin() {
    Expectations e;

    e.table1 = {
        row({1, 0, 0, 1}, 4, {"B2", "B4", "B5"},
            {"B_{2,4}", "B_{2,5}", "B_{4,5}^1", "B_{4,5}^2"}),
        row({0, 1, 0, 1}, 4, {"B1", "B3", "B6"},
            {"B_{1,3}", "B_{1,6}", "B_{3,6}^1", "B_{3,6}^2"}),
        row({0, -1, -1, 1}, 3, {"B1", "B4", "B5"}, {"B_{1,4}", "B_{1,5}", "B_{4,5}^2"}),
        row({-1, 0, -1, 1}, 3, {"B2", "B3", "B6"}, {"B_{2,3}", "B_{2,6}", "B_{3,6}^2"}),
        row({1, 0, 0, 0}, 3, {"B2", "B4", "B6"}, {"B_{2,4}", "B_{2,6}", "B_{4,6}"}),
        row({0, 1, 0, 0}, 3, {"B1", "B3", "B5"}, {"B_{1,3}", "B_{1,5}", "B_{3,5}"}),
        row({0, 0, 1, 0}, 4, {"B1", "B2", "B5", "B6"},
            {"B_{1,2}", "B_{1,5}", "B_{1,6}", "B_{2,5}", "B_{2,6}", "B_{5,6}^2"}),
        row({0, 0, 0, 1}, 4, {"B1", "B2", "B3", "B4"},
            {"B_{1,2}", "B_{1,3}", "B_{1,4}", "B_{2,3}", "B_{2,4}", "B_{3,4}"}),
        row({0, 1, 1, 1}, 4, {"B1", "B4", "B5", "B6"},
            {"B_{1,4}", "B_{1,5}", "B_{1,6}", "B_{4,5}^1", "B_{4,6}", "B_{5,6}^1"}),
        row({1, 0, 1, 1}, 4, {"B2", "B3", "B5", "B6"},
            {"B_{2,3}", "B_{2,5}", "B_{2,6}", "B_{3,5}", "B_{3,6}^1", "B_{5,6}^1"}),
        row({1, 1, 0, 1}, 2, {"B5", "B6"}, {"B_{5,6}^1", "B_{5,6}^2"}),
        row({1, 1, 1, 0}, 4, {"B3", "B4", "B5", "B6"},
            {"B_{3,4}", "B_{3,5}", "B_{3,6}^2", "B_{4,5}^2", "B_{4,6}", "B_{5,6}^2"}),
        row({1, 1, 1, 2}, 4, {"B3", "B4", "B5", "B6"},
            {"B_{3,4}", "B_{3,5}", "B_{3,6}^1", "B_{4,5}^1", "B_{4,6}", "B_{5,6}^2"}),
        row({1, 1, 4, 3}, 2, {"B5", "B6"}, {"B_{5,6}^1", "B_{5,6}^2"}),
        row({1, 4, 1, 3}, 3, {"B3", "B5", "B6"}, {"B_{3,5}", "B_{3,6}^2", "B_{5,6}^1"}),
        row({4, 1, 1, 3}, 3, {"B4", "B5", "B6"}, {"B_{4,5}^2", "B_{4,6}", "B_{5,6}^1"}),
    };

    e.table2 = {
        {3, 46, 0},       {5, 180, 1},      {7, 500, 5},      {11, 1716, 1},
        {13, 2732, 12},   {17, 6060, 10},   {19, 8132, 1},    {23, 13932, 7},
        {29, 27492, 1},   {31, 33476, 5},   {37, 55580, 32},  {41, 75276, 1},
        {43, 86612, 34},  {47, 112380, 45}, {53, 159492, 39}, {59, 219492, 48},
        {61, 241916, 11}, {67, 317300, 13}, {71, 376716, 11}, {73, 409532, 72},
        {79, 517892, 33}, {83, 599172, 6},  {89, 735132, 9},  {97, 948380, 87},
    };

    auto ints = [](std::initializer_list<long> values) {
        std::vector<Int> out;
        for (long v : values) out.emplace_back(v);
        return out;
    };
    e.nf6k4_prefix = ints({1, -2, -3, 4, 6, 6, -16, -8, 9, -12, 12});
    e.nf16k3_prefix.assign(37, Int(0));
    e.nf16k3_prefix[0] = 1;
    e.nf16k3_prefix[4] = -6;
    e.nf16k3_prefix[8] = 9;
    e.nf16k3_prefix[12] = 10;
    e.nf16k3_prefix[16] = -30;
    e.nf16k3_prefix[24] = 11;
    e.nf16k3_prefix[28] = 42;
    e.nf16k3_prefix[36] = -70;
    e.nf8k3_prefix = ints({1, -2, -2, 4, 0, 4, 0, -8, -5, 0, 14, -8});
    return e;
}

std::vector<Int> json_int_list(const nlohmann::json& arr) {
    std::vector<Int> out;
    for (const auto& v : arr) {
        if (v.is_string())
            out.emplace_back(v.get<std::string>());
        else
            out.emplace_back(v.get<long>());
    }
    return out;
}

std::string point_name(const std::vector<long>& point) {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < point.size(); ++i) out << (i ? ":" : "") << point[i];
    out << ")";
    return out.str();
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += items[i];
    }
    return out;
}

struct Runner {
    const Expectations& exp;
    int jobs = 1;
    VerifyReport report{};

    // Point counts of X over odd primes < 100 are shared between the count
    // and modular sections; computed at most once.
    std::vector<PointCountRecord> x_records{};
    bool have_records = false;

    const std::vector<PointCountRecord>& records() {
        if (!have_records) {
            x_records = count_range(builtin_model("X"), 100, jobs);
            have_records = true;
        }
        return x_records;
    }

    VerifySection& section(const std::string& name) {
        report.sections.push_back(VerifySection{name, {}});
        return report.sections.back();
    }

    static void item(VerifySection& s, const std::string& name, bool ok,
                     const std::string& expected = "", const std::string& actual = "") {
        s.items.push_back(VerifyItem{name, ok, ok ? "" : expected, ok ? "" : actual});
    }

    void run_alphabet() {
        auto& s = section("alphabet");
        AlphabetFixture fx = build_fixture();

        auto finfo = degree_info(fx.f_product);
        item(s, "f = f1*f2*f3*f4 has degree 8, homogeneous",
             finfo.total_degree == 8u && finfo.homogeneous, "degree 8, homogeneous",
             "degree " + (finfo.total_degree ? std::to_string(*finfo.total_degree) : "none"));

        for (const auto& c : verify_symmetries(fx).checks)
            item(s, c.name, c.ok, c.expected, c.actual);
        for (const auto& c : verify_sigma(fx).checks)
            item(s, c.name, c.ok, c.expected, c.actual);

        MultiPoly octic = fx.branch[0];
        for (int i = 1; i < 6; ++i) octic = octic * fx.branch[i];
        VarietyModel X = builtin_model("X");
        item(s, "X branch = B1*...*B6", X.poly == octic);
        item(s, "calX branch = f", builtin_model("calX").poly == fx.f_product);
        item(s, "S branch is a sextic over P^2",
             builtin_model("S").poly.total_degree() == 6u &&
                 builtin_model("S").base_ring->size() == 3);
    }

    void run_sing() {
        auto& s = section("sing");
        auto catalog = curve_catalog();
        item(s, "curve catalog has 18 verified members", catalog.size() == 18, "18",
             std::to_string(catalog.size()));

        AlphabetFixture fx = build_fixture();
        auto rows = incidence_table(fx.branch, table1_points(), catalog);
        bool sizes_match = rows.size() == exp.table1.size();
        item(s, "incidence table has 16 rows", sizes_match,
             std::to_string(exp.table1.size()), std::to_string(rows.size()));
        for (std::size_t i = 0; i < rows.size() && sizes_match; ++i) {
            const auto& got = rows[i];
            const auto& want = exp.table1[i];
            bool ok = got.point == want.point && got.multiplicity == want.multiplicity &&
                      got.surfaces == want.surfaces && got.curves == want.curves;
            item(s, "incidence row " + point_name(want.point), ok,
                 "mult " + std::to_string(want.multiplicity) + "; " + join(want.surfaces) +
                     "; " + join(want.curves),
                 "mult " + std::to_string(got.multiplicity) + "; " + join(got.surfaces) + "; " +
                     join(got.curves));
        }

        std::vector<BlowupLedgerEntry> ledger;
        try {
            ledger = blowup_ledger();
        } catch (const Error& err) {
            item(s, "blow-up ledger", false, "five centers with total 2", err.what());
        }
        for (const auto& entry : ledger)
            item(s, "blow-up center " + entry.center + " total", entry.total == 2, "2",
                 std::to_string(entry.total));

        // Chart algebra around the first blow-up, against the printed strict
        // transforms.
        MultiPoly l1 = fx.branch[0];                 // x
        MultiPoly l2 = parse_poly("y - t", fx.ring); // u
        auto b6 = chart_blowup_linear(fx.branch[5], l1, l2);
        item(s, "B6 total transform in chart 1 is u*(v*z - u)",
             b6.chart1_total == parse_poly("u*(v*z - u)", b6.chart_ring), "u*(v*z - u)",
             to_string(b6.chart1_total));
        item(s, "B6 strict transform in chart 1 is v*z - u",
             b6.chart1_strict == parse_poly("v*z - u", b6.chart_ring), "v*z - u",
             to_string(b6.chart1_strict));
        item(s, "B6 exceptional multiplicity 1", b6.exceptional_multiplicity == 1, "1",
             std::to_string(b6.exceptional_multiplicity));

        auto b1 = chart_blowup_linear(fx.branch[0], l1, l2);
        item(s, "B1 strict transform misses chart 0",
             b1.chart0_strict == MultiPoly::constant(b1.chart_ring, Rat(1)), "1",
             to_string(b1.chart0_strict));
        item(s, "B1 strict transform in chart 1 is v",
             b1.chart1_strict == parse_poly("v", b1.chart_ring), "v",
             to_string(b1.chart1_strict));

        auto prod = chart_blowup_linear(fx.branch[0] * fx.branch[2] * fx.branch[5], l1, l2);
        item(s, "B1*B3*B6 exceptional multiplicity 2", prod.exceptional_multiplicity == 2, "2",
             std::to_string(prod.exceptional_multiplicity));

        // Chart multiplicity agrees with the transversal-slice computation on
        // every linear center.
        auto find = [&](const std::string& label) -> const CurveComponent& {
            for (const auto& c : catalog)
                if (c.label == label) return c;
            throw Error("missing curve " + label);
        };
        for (const char* label : {"B_{1,6}", "B_{2,5}", "B_{3,6}^1", "B_{4,5}^1"}) {
            const CurveComponent& center = find(label);
            MultiPoly total = fx.branch[0];
            for (int i = 1; i < 6; ++i) total = total * fx.branch[i];
            auto chart = chart_blowup_linear(total, center.g1, center.g2);
            auto slice = mult_along_curve(std::span<const MultiPoly>(fx.branch), center);
            item(s, std::string("chart vs slice multiplicity along ") + label,
                 chart.exceptional_multiplicity == slice.total, std::to_string(slice.total),
                 std::to_string(chart.exceptional_multiplicity));
        }
    }

    void run_count() {
        auto& s = section("count");
        const auto& recs = records();
        bool sizes_match = recs.size() == exp.table2.size();
        item(s, "24 odd primes below 100", sizes_match, std::to_string(exp.table2.size()),
             std::to_string(recs.size()));
        for (std::size_t i = 0; i < recs.size() && sizes_match; ++i) {
            const auto& got = recs[i];
            const auto& want = exp.table2[i];
            item(s, "#X_p at p = " + std::to_string(want.p),
                 got.p == want.p && got.count == want.count, std::to_string(want.count),
                 std::to_string(got.count));
            long residue = residue_of(got, Convention::Weight4);
            item(s, "1 - #X_p mod p at p = " + std::to_string(want.p), residue == want.residue,
                 std::to_string(want.residue), std::to_string(residue));
        }
        item(s, "p = 3 flagged as bad reduction", !recs.empty() && !recs.front().good);
    }

    void run_modular() {
        auto& s = section("modular");

        struct Gate {
            const char* form;
            const std::vector<Int>* prefix;
        };
        for (const auto& [name, prefix] : {Gate{"nf6k4", &exp.nf6k4_prefix},
                                           Gate{"nf16k3", &exp.nf16k3_prefix},
                                           Gate{"nf8k3", &exp.nf8k3_prefix}}) {
            try {
                Newform form{builtin_newform(name)};
                bool ok = true;
                std::string diff;
                for (std::size_t k = 0; k < prefix->size(); ++k) {
                    Int got = form.coeff(static_cast<long>(k) + 1);
                    if (got != (*prefix)[k]) {
                        ok = false;
                        diff = "b_" + std::to_string(k + 1) + " = " + got.get_str();
                        break;
                    }
                }
                item(s, std::string(name) + " prefix matches through q^" +
                             std::to_string(prefix->size()),
                     ok, "printed prefix", diff);
            } catch (const Error& err) {
                item(s, std::string(name) + " prefix gate", false, "printed prefix", err.what());
            }
        }

        Newform nf6k4{builtin_newform("nf6k4")};
        Verdict congruence = congruence_match(records(), nf6k4, Convention::Weight4);
        std::string failing;
        for (const auto& d : congruence.details)
            if (!d.ok) failing += (failing.empty() ? "" : ", ") + std::to_string(d.p);
        item(s, "X satisfies the weight-4 congruence against nf6k4",
             congruence.kind == VerdictKind::CongruencePass, "congruence_pass",
             verdict_kind_name(congruence.kind) + (failing.empty() ? "" : " at " + failing));

        auto fit = exact_cy3_fit(records(), nf6k4);
        if (auto* ok = std::get_if<Cy3Fit>(&fit)) {
            item(s, "exact fit constants (c1, c2) = (-8, 4)", ok->c1 == -8 && ok->c2 == 4,
                 "(-8, 4)", "(" + ok->c1.get_str() + ", " + ok->c2.get_str() + ")");
            item(s, "exact fit verified at every good prime below 100",
                 ok->verified.size() == 23, "23", std::to_string(ok->verified.size()));
        } else {
            auto& fail = std::get<Cy3FitFailure>(fit);
            item(s, "exact fit constants (c1, c2) = (-8, 4)", false, "(-8, 4)", fail.reason);
        }
    }
};

} // namespace

const Expectations& builtin_expectations() {
    static const Expectations e = build_builtin();
    return e;
}

Expectations expectations_from_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& err) {
        throw Error(std::string("invalid expectations JSON: ") + err.what());
    }
    Expectations e = builtin_expectations(); // overrides are partial
    if (doc.contains("table1")) {
        e.table1.clear();
        for (const auto& r : doc.at("table1")) {
            e.table1.push_back(Expectations::Table1Row{
                r.at("point").get<std::vector<long>>(), r.at("multiplicity").get<unsigned>(),
                r.at("surfaces").get<std::vector<std::string>>(),
                r.at("curves").get<std::vector<std::string>>()});
        }
    }
    if (doc.contains("table2")) {
        e.table2.clear();
        for (const auto& r : doc.at("table2")) {
            e.table2.push_back(Expectations::Table2Row{r.at("p").get<long>(),
                                                       r.at("count").get<unsigned long long>(),
                                                       r.at("residue").get<long>()});
        }
    }
    if (doc.contains("nf6k4_prefix")) e.nf6k4_prefix = json_int_list(doc.at("nf6k4_prefix"));
    if (doc.contains("nf16k3_prefix")) e.nf16k3_prefix = json_int_list(doc.at("nf16k3_prefix"));
    if (doc.contains("nf8k3_prefix")) e.nf8k3_prefix = json_int_list(doc.at("nf8k3_prefix"));
    return e;
}

std::string expectations_to_json(const Expectations& e) {
    nlohmann::json doc;
    doc["table1"] = nlohmann::json::array();
    for (const auto& r : e.table1) {
        nlohmann::json row;
        row["point"] = r.point;
        row["multiplicity"] = r.multiplicity;
        row["surfaces"] = r.surfaces;
        row["curves"] = r.curves;
        doc["table1"].push_back(std::move(row));
    }
    doc["table2"] = nlohmann::json::array();
    for (const auto& r : e.table2) {
        nlohmann::json row;
        row["p"] = r.p;
        row["count"] = r.count;
        row["residue"] = r.residue;
        doc["table2"].push_back(std::move(row));
    }
    auto int_list = [](const std::vector<Int>& values) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& v : values) arr.push_back(v.get_str());
        return arr;
    };
    doc["nf6k4_prefix"] = int_list(e.nf6k4_prefix);
    doc["nf16k3_prefix"] = int_list(e.nf16k3_prefix);
    doc["nf8k3_prefix"] = int_list(e.nf8k3_prefix);
    return doc.dump(2);
}

bool VerifySection::ok() const {
    for (const auto& i : items)
        if (!i.ok) return false;
    return true;
}

bool VerifyReport::ok() const {
    for (const auto& s : sections)
        if (!s.ok()) return false;
    return true;
}

VerifyReport verify_paper(const std::vector<std::string>& sections, int jobs,
                          const Expectations& expectations) {
    const std::vector<std::string> all = {"alphabet", "sing", "count", "modular"};
    std::vector<std::string> wanted = sections.empty() ? all : sections;
    for (const auto& name : wanted)
        if (std::find(all.begin(), all.end(), name) == all.end())
            throw Error("unknown section '" + name + "'");

    Runner runner{expectations, jobs};
    for (const auto& name : wanted) {
        if (name == "alphabet") runner.run_alphabet();
        if (name == "sing") runner.run_sing();
        if (name == "count") runner.run_count();
        if (name == "modular") runner.run_modular();
    }
    return std::move(runner.report);
}

std::string report_to_json(const VerifyReport& report) {
    nlohmann::json doc;
    doc["ok"] = report.ok();
    nlohmann::json sections = nlohmann::json::array();
    for (const auto& s : report.sections) {
        nlohmann::json sec;
        sec["name"] = s.name;
        sec["ok"] = s.ok();
        nlohmann::json items = nlohmann::json::array();
        for (const auto& i : s.items) {
            nlohmann::json item;
            item["name"] = i.name;
            item["ok"] = i.ok;
            if (!i.ok) {
                item["expected"] = i.expected;
                item["actual"] = i.actual;
            }
            items.push_back(std::move(item));
        }
        sec["items"] = std::move(items);
        sections.push_back(std::move(sec));
    }
    doc["sections"] = std::move(sections);
    return doc.dump(2);
}

std::string report_to_markdown(const VerifyReport& report) {
    std::ostringstream out;
    for (const auto& s : report.sections) {
        std::size_t passed = 0;
        for (const auto& i : s.items) passed += i.ok;
        out << "## " << s.name << " (" << passed << "/" << s.items.size() << ")\n\n";
        for (const auto& i : s.items) {
            out << "- " << (i.ok ? "ok" : "FAIL") << ": " << i.name << "\n";
            if (!i.ok)
                out << "  expected: " << i.expected << "\n  actual:   " << i.actual << "\n";
        }
        out << "\n";
    }
    out << (report.ok() ? "ALL MATCHED\n" : "MISMATCHES FOUND\n");
    return out.str();
}

} // namespace unirat
