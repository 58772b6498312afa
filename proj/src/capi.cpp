#include "unirat.h"

#include "unirat/alphabet.hpp"
#include "unirat/count.hpp"
#include "unirat/model.hpp"
#include "unirat/modular.hpp"
#include "unirat/parser.hpp"
#include "unirat/sing.hpp"
#include "unirat/verify.hpp"

#include <json.hpp>

#include <cstring>
#include <sstream>
#include <string>

using namespace unirat;

struct ur_model {
    VarietyModel model;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

ur_status fail(ur_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

// Runs the body, translating exceptions into status codes. ParseError and
// file problems are input errors; other library errors are domain errors.
template <typename Fn>
ur_status guarded(Fn&& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        return fail(UR_ERR_INPUT, e.what());
    } catch (const Error& e) {
        return fail(UR_ERR_DOMAIN, e.what());
    } catch (const std::exception& e) {
        return fail(UR_ERR_INTERNAL, e.what());
    }
}

std::vector<std::string> split_csv(const char* csv) {
    std::vector<std::string> out;
    if (!csv) return out;
    std::istringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        while (!item.empty() && item.front() == ' ') item.erase(item.begin());
        while (!item.empty() && item.back() == ' ') item.pop_back();
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// form_spec mini-grammar: builtin name | "eta:SPEC" | "file:PATH".
Newform resolve_form(const std::string& spec) {
    if (spec.rfind("eta:", 0) == 0) {
        EtaQuotientSpec eta = EtaQuotientSpec::parse(spec.substr(4));
        // Ad-hoc quotient: no printed prefix to hold it to, so anchor on its
        // own leading coefficients (integrity only, not provenance).
        QSeries series = eta_quotient(eta, eta.prefactor_numerator() / 24 + 16);
        NewformSpec nf;
        nf.name = spec;
        nf.weight = 0;
        nf.level = 0;
        nf.group = "unspecified";
        nf.source = eta;
        for (long k = 1; k <= series.truncation(); ++k) nf.anchor.push_back(series.coeff(k));
        return Newform{nf};
    }
    if (spec.rfind("file:", 0) == 0) {
        std::string path = spec.substr(5);
        auto coeffs = read_coefficient_file(path);
        NewformSpec nf;
        nf.name = spec;
        nf.weight = 0;
        nf.level = 0;
        nf.group = "unspecified";
        nf.source = path;
        if (coeffs.size() < 2) throw Error("coefficient file has no usable prefix");
        for (std::size_t k = 1; k < std::min<std::size_t>(coeffs.size(), 12); ++k)
            nf.anchor.push_back(coeffs[k]);
        return Newform{nf};
    }
    return Newform{builtin_newform(spec)};
}

} // namespace

extern "C" {

const char* ur_version(void) { return "0.1.0"; }

const char* ur_last_error(void) { return g_last_error.c_str(); }

void ur_string_free(char* s) { delete[] s; }

ur_status ur_model_builtin(const char* name, ur_model** out) {
    if (!name || !out) return fail(UR_ERR_USAGE, "null argument");
    return guarded([&]() -> ur_status {
        try {
            *out = new ur_model{builtin_model(name)};
        } catch (const Error& e) {
            return fail(UR_ERR_INPUT, e.what());
        }
        return UR_OK;
    });
}

ur_status ur_model_from_json(const char* json, ur_model** out) {
    if (!json || !out) return fail(UR_ERR_USAGE, "null argument");
    return guarded([&]() -> ur_status {
        try {
            *out = new ur_model{model_from_json(json)};
        } catch (const Error& e) {
            return fail(UR_ERR_INPUT, e.what());
        }
        return UR_OK;
    });
}

ur_status ur_model_to_json(const ur_model* model, char** out_json) {
    if (!model || !out_json) return fail(UR_ERR_USAGE, "null argument");
    return guarded([&]() -> ur_status {
        *out_json = dup_string(model_to_json(model->model));
        return UR_OK;
    });
}

void ur_model_free(ur_model* model) { delete model; }

ur_status ur_poly_canonical(const char* vars_csv, const char* expr, char** out_text) {
    if (!vars_csv || !expr || !out_text) return fail(UR_ERR_USAGE, "null argument");
    return guarded([&]() -> ur_status {
        auto vars = split_csv(vars_csv);
        if (vars.empty()) return fail(UR_ERR_USAGE, "empty variable list");
        try {
            MultiPoly p = parse_poly(expr, Ring::make(vars));
            *out_text = dup_string(to_string(p));
        } catch (const ParseError& e) {
            return fail(UR_ERR_INPUT, e.what());
        }
        return UR_OK;
    });
}

ur_status ur_count_range(const ur_model* model, long bound, int jobs, const char* format,
                         char** out_text) {
    if (!model || !out_text) return fail(UR_ERR_USAGE, "null argument");
    return guarded([&]() -> ur_status {
        std::string fmt = format && *format ? format : "json";
        if (fmt != "json" && fmt != "csv" && fmt != "md")
            return fail(UR_ERR_USAGE, "format must be json, csv, or md");
        auto records = count_range(model->model, bound, jobs);
        if (fmt == "csv")
            *out_text = dup_string(records_to_csv(records));
        else if (fmt == "md")
            *out_text = dup_string(records_to_markdown(records));
        else
            *out_text = dup_string(records_to_json(records));
        return UR_OK;
    });
}

ur_status ur_table1(const char* format, char** out_text) {
    if (!out_text) return fail(UR_ERR_USAGE, "null argument");
    return guarded([&]() -> ur_status {
        std::string fmt = format && *format ? format : "json";
        if (fmt != "json" && fmt != "md")
            return fail(UR_ERR_USAGE, "format must be json or md");
        AlphabetFixture fx = build_fixture();
        auto rows = incidence_table(fx.branch, table1_points(), curve_catalog());
        *out_text =
            dup_string(fmt == "md" ? incidence_to_markdown(rows) : incidence_to_json(rows));
        return UR_OK;
    });
}

ur_status ur_guess(const ur_model* model, long bound, const char* form_spec,
                   const char* convention, int jobs, char** out_json) {
    if (!model || !out_json) return fail(UR_ERR_USAGE, "null argument");
    return guarded([&]() -> ur_status {
        Convention conv = Convention::Weight4;
        if (convention && *convention) {
            std::string c = convention;
            if (c == "weight3") conv = Convention::Weight3;
            else if (c == "weight4") conv = Convention::Weight4;
            else return fail(UR_ERR_USAGE, "convention must be weight3 or weight4");
        }

        auto records = count_range(model->model, bound, jobs);

        nlohmann::json doc;
        doc["model"] = model->model.name;
        doc["bound"] = bound;
        doc["caveat"] = kCongruenceCaveat;
        doc["esnault"] = nlohmann::json::parse(verdict_to_json(esnault_guess(records)));

        if (form_spec && *form_spec) {
            Newform form = [&] {
                try {
                    return resolve_form(form_spec);
                } catch (const Error& e) {
                    throw ParseError(e.what(), 0);
                }
            }();
            doc["form"] = form.spec().name;
            doc["convention"] = conv == Convention::Weight3 ? "weight3" : "weight4";
            doc["congruence"] =
                nlohmann::json::parse(verdict_to_json(congruence_match(records, form, conv)));

            if (conv == Convention::Weight4) {
                auto fit = exact_cy3_fit(records, form);
                nlohmann::json fit_json;
                if (auto* ok = std::get_if<Cy3Fit>(&fit)) {
                    fit_json["kind"] = "exact_fit";
                    fit_json["c1"] = ok->c1.get_str();
                    fit_json["c2"] = ok->c2.get_str();
                    fit_json["verified_primes"] = ok->verified;
                } else {
                    auto& bad = std::get<Cy3FitFailure>(fit);
                    fit_json["kind"] = "no_fit";
                    fit_json["reason"] = bad.reason;
                    fit_json["inconsistent_prime"] = bad.inconsistent_prime;
                }
                doc["exact_fit"] = std::move(fit_json);
            }
        }

        *out_json = dup_string(doc.dump(2));
        return UR_OK;
    });
}

ur_status ur_eta_expand(const char* spec, long truncation, char** out_text) {
    if (!spec || !out_text) return fail(UR_ERR_USAGE, "null argument");
    return guarded([&]() -> ur_status {
        try {
            EtaQuotientSpec eta = EtaQuotientSpec::parse(spec);
            QSeries series = eta_quotient(eta, truncation);
            *out_text = dup_string(write_coefficient_lines(series));
        } catch (const Error& e) {
            return fail(UR_ERR_INPUT, e.what());
        }
        return UR_OK;
    });
}

ur_status ur_expectations_json(char** out_json) {
    if (!out_json) return fail(UR_ERR_USAGE, "null argument");
    return guarded([&]() -> ur_status {
        *out_json = dup_string(expectations_to_json(builtin_expectations()));
        return UR_OK;
    });
}

ur_status ur_verify_paper(const char* sections_csv, int jobs, const char* expectations_json,
                          const char* format, char** out_text) {
    if (!out_text) return fail(UR_ERR_USAGE, "null argument");
    return guarded([&]() -> ur_status {
        std::string fmt = format && *format ? format : "json";
        if (fmt != "json" && fmt != "md")
            return fail(UR_ERR_USAGE, "format must be json or md");
        Expectations expectations = builtin_expectations();
        if (expectations_json && *expectations_json) {
            try {
                expectations = expectations_from_json(expectations_json);
            } catch (const Error& e) {
                return fail(UR_ERR_INPUT, e.what());
            }
        }
        VerifyReport report = verify_paper(split_csv(sections_csv), jobs, expectations);
        *out_text = dup_string(fmt == "md" ? report_to_markdown(report) : report_to_json(report));
        if (!report.ok()) return fail(UR_ERR_MISMATCH, "reproduction mismatch; see report");
        return UR_OK;
    });
}

} // extern "C"
