// Command-line front end. Talks to the library exclusively through the C
// API in unirat.h; rendering choices and file handling live here.

#include "unirat.h"

#include <CLI11.hpp>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

int exit_code_for(ur_status status) {
    switch (status) {
        case UR_OK: return 0;
        case UR_ERR_MISMATCH: return kExitMismatch;
        case UR_ERR_INPUT: return kExitInput;
        case UR_ERR_DOMAIN: return kExitInput;
        case UR_ERR_USAGE: return kExitUsage;
        default: return kExitInternal;
    }
}

struct StringOut {
    char* s = nullptr;
    ~StringOut() { ur_string_free(s); }
};

struct ModelHandle {
    ur_model* m = nullptr;
    ~ModelHandle() { ur_model_free(m); }
};

// --out is relative to UNIRAT_OUT_DIR when that is set; otherwise the cwd.
std::filesystem::path resolve_out(const std::string& out) {
    std::filesystem::path p(out);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("UNIRAT_OUT_DIR")) p = std::filesystem::path(dir) / p;
    }
    return p;
}

int emit(const char* text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        if (*text && text[std::strlen(text) - 1] != '\n') std::cout << "\n";
        return 0;
    }
    auto path = resolve_out(out);
    std::ofstream file(path);
    if (!file) {
        std::cerr << "error: cannot write " << path << "\n";
        return kExitInput;
    }
    file << text;
    return 0;
}

int report_failure(ur_status status) {
    std::cerr << "error: " << ur_last_error() << "\n";
    return exit_code_for(status);
}

// A model argument is a builtin name or a path to a variety-definition file.
ur_status load_model(const std::string& arg, ur_model** out) {
    if (std::filesystem::exists(arg)) {
        std::ifstream in(arg);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        return ur_model_from_json(text.c_str(), out);
    }
    return ur_model_builtin(arg.c_str(), out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"point counting and unirationality heuristics for double covers"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ur_version());

    // verify-paper
    auto* verify = app.add_subcommand("verify-paper", "rerun the embedded expectation tables");
    std::string verify_sections, verify_format = "json", verify_out, verify_expect_file;
    int verify_jobs = 0;
    verify->add_option("--sections", verify_sections,
                       "comma-separated subset of alphabet,sing,count,modular");
    verify->add_option("--format", verify_format, "json or md")
        ->check(CLI::IsMember({"json", "md"}));
    verify->add_option("--out", verify_out, "write the report to a file");
    verify->add_option("--jobs", verify_jobs, "worker threads (0 = all cores)");
    verify->add_option("--expectations", verify_expect_file,
                       "JSON file overriding embedded expectations (testing hook)");

    // count
    auto* count = app.add_subcommand("count", "count points over all odd primes up to a bound");
    std::string count_model, count_format = "json", count_out;
    long count_bound = 100;
    int count_jobs = 0;
    count->add_option("model", count_model, "builtin name (X, calX, Q, S, fermat) or file")
        ->required();
    count->add_option("--bound,-B", count_bound, "count for every odd prime <= bound");
    count->add_option("--format", count_format, "json, csv, or md")
        ->check(CLI::IsMember({"json", "csv", "md"}));
    count->add_option("--out", count_out, "write records to a file");
    count->add_option("--jobs", count_jobs, "worker threads (0 = all cores)");

    // guess
    auto* guess = app.add_subcommand("guess", "point-count unirationality heuristics");
    std::string guess_model, guess_form, guess_convention = "weight4", guess_out;
    long guess_bound = 100;
    int guess_jobs = 0;
    guess->add_option("model", guess_model, "builtin name or file")->required();
    guess->add_option("--bound,-B", guess_bound, "prime bound");
    guess->add_option("--form", guess_form,
                      "newform: builtin name, eta:m:e,..., or file:path");
    guess->add_option("--convention", guess_convention, "weight3 or weight4")
        ->check(CLI::IsMember({"weight3", "weight4"}));
    guess->add_option("--out", guess_out, "write the verdict to a file");
    guess->add_option("--jobs", guess_jobs, "worker threads (0 = all cores)");

    // eta
    auto* eta = app.add_subcommand("eta", "expand an eta quotient to coefficient lines");
    std::string eta_spec, eta_out;
    long eta_truncation = 0;
    eta->add_option("--spec", eta_spec, "factors as m:e,m:e,...")->required();
    eta->add_option("--truncation,-N", eta_truncation, "highest q-power to emit")->required();
    eta->add_option("--out", eta_out, "write coefficient lines to a file");

    // table1
    auto* table1 = app.add_subcommand("table1", "incidence table of the branch singular locus");
    std::string table1_format = "json", table1_out;
    table1->add_option("--format", table1_format, "json or md")
        ->check(CLI::IsMember({"json", "md"}));
    table1->add_option("--out", table1_out, "write the table to a file");

    // export
    auto* exp = app.add_subcommand("export", "write a builtin model as a variety file");
    std::string export_model, export_out;
    exp->add_option("model", export_model, "builtin name")->required();
    exp->add_option("--out", export_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (verify->parsed()) {
        std::string expectations;
        if (!verify_expect_file.empty()) {
            std::ifstream in(verify_expect_file);
            if (!in) {
                std::cerr << "error: cannot read " << verify_expect_file << "\n";
                return kExitInput;
            }
            expectations.assign((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
        }
        StringOut out;
        ur_status status = ur_verify_paper(
            verify_sections.empty() ? nullptr : verify_sections.c_str(), verify_jobs,
            expectations.empty() ? nullptr : expectations.c_str(), verify_format.c_str(),
            &out.s);
        if (status != UR_OK && status != UR_ERR_MISMATCH) return report_failure(status);
        if (int rc = emit(out.s, verify_out)) return rc;
        return exit_code_for(status);
    }

    if (count->parsed()) {
        ModelHandle model;
        if (ur_status status = load_model(count_model, &model.m); status != UR_OK)
            return report_failure(status);
        StringOut out;
        ur_status status =
            ur_count_range(model.m, count_bound, count_jobs, count_format.c_str(), &out.s);
        if (status != UR_OK) return report_failure(status);
        if (int rc = emit(out.s, count_out)) return rc;
        return 0;
    }

    if (guess->parsed()) {
        ModelHandle model;
        if (ur_status status = load_model(guess_model, &model.m); status != UR_OK)
            return report_failure(status);
        StringOut out;
        ur_status status =
            ur_guess(model.m, guess_bound, guess_form.empty() ? nullptr : guess_form.c_str(),
                     guess_convention.c_str(), guess_jobs, &out.s);
        if (status != UR_OK) return report_failure(status);
        if (int rc = emit(out.s, guess_out)) return rc;
        return 0;
    }

    if (eta->parsed()) {
        StringOut out;
        ur_status status = ur_eta_expand(eta_spec.c_str(), eta_truncation, &out.s);
        if (status != UR_OK) return report_failure(status);
        if (int rc = emit(out.s, eta_out)) return rc;
        return 0;
    }

    if (table1->parsed()) {
        StringOut out;
        ur_status status = ur_table1(table1_format.c_str(), &out.s);
        if (status != UR_OK) return report_failure(status);
        if (int rc = emit(out.s, table1_out)) return rc;
        return 0;
    }

    if (exp->parsed()) {
        ModelHandle model;
        if (ur_status status = ur_model_builtin(export_model.c_str(), &model.m);
            status != UR_OK)
            return report_failure(status);
        StringOut out;
        if (ur_status status = ur_model_to_json(model.m, &out.s); status != UR_OK)
            return report_failure(status);
        if (int rc = emit(out.s, export_out)) return rc;
        return 0;
    }

    return kExitUsage;
}
