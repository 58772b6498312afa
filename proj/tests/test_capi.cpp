#include <doctest.h>

#include "unirat.h"

#include <json.hpp>

#include <cstring>
#include <string>

using nlohmann::json;

namespace {

struct Str {
    char* s = nullptr;
    ~Str() { ur_string_free(s); }
    std::string view() const { return s ? s : ""; }
};

struct Model {
    ur_model* m = nullptr;
    ~Model() { ur_model_free(m); }
};

} // namespace

TEST_CASE("capi: version and error strings exist") {
    CHECK(ur_version() != nullptr);
    CHECK(ur_last_error() != nullptr);
}

TEST_CASE("capi: builtin models and JSON round trip") {
    Model x;
    REQUIRE(ur_model_builtin("X", &x.m) == UR_OK);

    Str exported;
    REQUIRE(ur_model_to_json(x.m, &exported.s) == UR_OK);
    json doc = json::parse(exported.view());
    CHECK(doc["name"] == "X");
    CHECK(doc["kind"] == "double_cover");
    CHECK(doc["bad_primes"] == json::array({2, 3}));

    Model again;
    REQUIRE(ur_model_from_json(exported.s, &again.m) == UR_OK);
    Str counts1, counts2;
    REQUIRE(ur_count_range(x.m, 10, 1, "json", &counts1.s) == UR_OK);
    REQUIRE(ur_count_range(again.m, 10, 1, "json", &counts2.s) == UR_OK);
    CHECK(counts1.view() == counts2.view()); // re-ingested model counts identically

    Model bogus;
    CHECK(ur_model_builtin("nonsense", &bogus.m) == UR_ERR_INPUT);
    CHECK(std::strlen(ur_last_error()) > 0);
    CHECK(ur_model_from_json("{", &bogus.m) == UR_ERR_INPUT);
    CHECK(ur_model_builtin(nullptr, &bogus.m) == UR_ERR_USAGE);
}

TEST_CASE("capi: count output matches the printed values") {
    Model x;
    REQUIRE(ur_model_builtin("X", &x.m) == UR_OK);
    Str out;
    REQUIRE(ur_count_range(x.m, 10, 1, nullptr, &out.s) == UR_OK);
    json rows = json::parse(out.view());
    REQUIRE(rows.size() == 3);
    CHECK(rows[0]["p"] == 3);
    CHECK(rows[0]["count"] == 46);
    CHECK(rows[0]["good_reduction"] == false);
    CHECK(rows[1]["count"] == 180);
    CHECK(rows[2]["count"] == 500);
    CHECK(rows[2]["residue_weight4"] == 5);

    Str csv;
    REQUIRE(ur_count_range(x.m, 10, 1, "csv", &csv.s) == UR_OK);
    CHECK(csv.view().find("p,count,residue_weight4,good_reduction") == 0);

    Str bad;
    CHECK(ur_count_range(x.m, 10, 1, "yaml", &bad.s) == UR_ERR_USAGE);
}

TEST_CASE("capi: poly canonicalization through the shared surface") {
    Str out;
    REQUIRE(ur_poly_canonical("x,y,z,t", "(x - y)*(x + y)", &out.s) == UR_OK);
    CHECK(out.view() == "x^2 - y^2");

    Str err;
    CHECK(ur_poly_canonical("x,y", "x + q", &err.s) == UR_ERR_INPUT);
    CHECK(ur_poly_canonical("", "x", &err.s) == UR_ERR_USAGE);
}

TEST_CASE("capi: table1 report in both formats") {
    Str json_text;
    REQUIRE(ur_table1("json", &json_text.s) == UR_OK);
    json rows = json::parse(json_text.view());
    REQUIRE(rows.size() == 16);
    CHECK(rows[1]["point"] == json::array({0, 1, 0, 1}));
    CHECK(rows[1]["multiplicity"] == 4);
    CHECK(rows[10]["surfaces"] == json::array({"B5", "B6"}));

    Str md;
    REQUIRE(ur_table1("md", &md.s) == UR_OK);
    CHECK(md.view().find("| (1:1:0:1) | 2 |") != std::string::npos);

    Str err;
    CHECK(ur_table1("xml", &err.s) == UR_ERR_USAGE);
}

TEST_CASE("capi: guess for X carries all three verdict layers") {
    Model x;
    REQUIRE(ur_model_builtin("X", &x.m) == UR_OK);
    Str out;
    REQUIRE(ur_guess(x.m, 100, "nf6k4", "weight4", 0, &out.s) == UR_OK);
    json doc = json::parse(out.view());
    CHECK(doc["esnault"]["kind"] == "not_unirational_guess");
    CHECK(doc["esnault"]["threshold_met"] == true);
    CHECK(doc["congruence"]["kind"] == "congruence_pass");
    CHECK(doc["exact_fit"]["kind"] == "exact_fit");
    CHECK(doc["exact_fit"]["c1"] == "-8");
    CHECK(doc["exact_fit"]["c2"] == "4");
    CHECK(doc.contains("caveat"));
    CHECK(doc["esnault"].contains("caveat"));
}

TEST_CASE("capi: guess with eta and file forms") {
    Model x;
    REQUIRE(ur_model_builtin("X", &x.m) == UR_OK);
    Str out;
    REQUIRE(ur_guess(x.m, 30, "eta:1:2,2:2,3:2,6:2", "weight4", 1, &out.s) == UR_OK);
    json doc = json::parse(out.view());
    CHECK(doc["congruence"]["kind"] == "congruence_pass");

    Str err;
    CHECK(ur_guess(x.m, 30, "eta:1:1", "weight4", 1, &err.s) == UR_ERR_INPUT);
    CHECK(ur_guess(x.m, 30, "nf6k4", "weight9", 1, &err.s) == UR_ERR_USAGE);
    CHECK(ur_guess(x.m, 30, "file:no_such_file.txt", "weight4", 1, &err.s) == UR_ERR_INPUT);
}

TEST_CASE("capi: eta expansion text") {
    Str out;
    REQUIRE(ur_eta_expand("1:2,2:2,3:2,6:2", 7, &out.s) == UR_OK);
    CHECK(out.view() ==
          "1 1\n2 -2\n3 -3\n4 4\n5 6\n6 6\n7 -16\n");

    Str err;
    CHECK(ur_eta_expand("1:1", 5, &err.s) == UR_ERR_INPUT); // prefactor 1/24
    CHECK(ur_eta_expand("zzz", 5, &err.s) == UR_ERR_INPUT);
}

TEST_CASE("capi: verify subset runs clean") {
    Str out;
    REQUIRE(ur_verify_paper("alphabet", 1, nullptr, "json", &out.s) == UR_OK);
    json doc = json::parse(out.view());
    CHECK(doc["ok"] == true);
    REQUIRE(doc["sections"].size() == 1);
    CHECK(doc["sections"][0]["name"] == "alphabet");
    for (const auto& item : doc["sections"][0]["items"]) CHECK(item["ok"] == true);

    Str err;
    CHECK(ur_verify_paper("nonsense", 1, nullptr, "json", &err.s) == UR_ERR_DOMAIN);
}

TEST_CASE("capi: corrupted expectations produce a mismatch diff") {
    Str base;
    REQUIRE(ur_expectations_json(&base.s) == UR_OK);
    json expectations = json::parse(base.view());
    REQUIRE(expectations["table1"].size() == 16);

    // Inject a wrong multiplicity into one incidence row.
    expectations["table1"][1]["multiplicity"] = 5; // really 4 at (0:1:0:1)

    Str out;
    ur_status status =
        ur_verify_paper("sing", 1, expectations.dump().c_str(), "json", &out.s);
    CHECK(status == UR_ERR_MISMATCH);
    json doc = json::parse(out.view());
    CHECK(doc["ok"] == false);
    bool found_row_diff = false;
    for (const auto& item : doc["sections"][0]["items"]) {
        if (!item["ok"].get<bool>() &&
            item["name"].get<std::string>().find("(0:1:0:1)") != std::string::npos)
            found_row_diff = true;
    }
    CHECK(found_row_diff); // the diff names the corrupted row
}
