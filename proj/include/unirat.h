/* unirat C API: exact point counting and congruence heuristics for
 * hypersurfaces and double covers, behind opaque handles.
 *
 * Every function returns a ur_status; results come back through out
 * parameters. Strings returned through char** are heap-allocated and must
 * be released with ur_string_free. On failure, ur_last_error() describes
 * the problem for the calling thread.
 */

#ifndef UNIRAT_H
#define UNIRAT_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ur_status {
    UR_OK = 0,
    UR_ERR_USAGE = 1,    /* null pointer / malformed argument */
    UR_ERR_INPUT = 2,    /* unparsable expression, JSON, spec, or file */
    UR_ERR_DOMAIN = 3,   /* mathematical precondition violated */
    UR_ERR_MISMATCH = 4, /* reproduction run found a differing value */
    UR_ERR_INTERNAL = 5
} ur_status;

typedef struct ur_model ur_model; /* a hypersurface or double cover */

const char* ur_version(void);

/* Thread-local message describing the most recent failure in this thread. */
const char* ur_last_error(void);

void ur_string_free(char* s);

/* Models ------------------------------------------------------------- */

/* Builtin names: "X", "calX", "Q", "S", "fermat". */
ur_status ur_model_builtin(const char* name, ur_model** out);

/* Variety-definition document: JSON with fields name, variables, weights,
 * kind ("hypersurface" | "double_cover"), polynomial, bad_primes. */
ur_status ur_model_from_json(const char* json, ur_model** out);
ur_status ur_model_to_json(const ur_model* model, char** out_json);
void ur_model_free(ur_model* model);

/* Polynomials -------------------------------------------------------- */

/* Parses `expr` over the comma-separated variable list and returns the
 * canonical expanded form, printed. */
ur_status ur_poly_canonical(const char* vars_csv, const char* expr, char** out_text);

/* Point counting ------------------------------------------------------ */

/* Point-count records for every odd prime <= bound, rendered as "json"
 * (array of {p, count, zeros, squares, residue_weight4, good_reduction}),
 * "csv", or "md" (markdown blocks of eight primes). format NULL means json.
 * jobs <= 0 means all hardware threads. */
ur_status ur_count_range(const ur_model* model, long bound, int jobs, const char* format,
                         char** out_text);

/* Incidence report ------------------------------------------------------ */

/* The 16-point incidence table of the double-octic branch locus: for each
 * point its multiplicity, the components through it, and the singular
 * curves through it. format is "json" (array of row objects) or "md". */
ur_status ur_table1(const char* format, char** out_text);

/* Verdicts ------------------------------------------------------------ */

/* Runs the point-count guess for the model. form_spec may be NULL (count
 * residues only), a builtin form name ("nf6k4", "nf16k3", "nf8k3"),
 * "eta:m:e,m:e,..." for an ad-hoc eta quotient, or "file:PATH" for a
 * coefficient file. convention is "weight3" or "weight4"; it is only
 * consulted when a form is given. Emits a JSON document with the esnault
 * verdict, the congruence verdict, and (weight4 with a form) the cubic
 * trace fit. */
ur_status ur_guess(const ur_model* model, long bound, const char* form_spec,
                   const char* convention, int jobs, char** out_json);

/* q-expansions --------------------------------------------------------- */

/* Expands the eta quotient "m:e,m:e,..." to the given truncation and
 * returns coefficient-file text ("k b_k" per line). */
ur_status ur_eta_expand(const char* spec, long truncation, char** out_text);

/* Reproduction run ------------------------------------------------------ */

/* The embedded expectation tables as JSON, usable as a base for override
 * documents. */
ur_status ur_expectations_json(char** out_json);

/* Reruns the embedded expectation tables. sections_csv selects from
 * alphabet,sing,count,modular (NULL or "" = all). expectations_json, when
 * non-NULL, overrides embedded expectation values (used to exercise the
 * mismatch path). format is "json" or "md" (NULL = json). Returns UR_OK
 * when everything matches, UR_ERR_MISMATCH when the report (still written
 * to out_text) contains a diff. */
ur_status ur_verify_paper(const char* sections_csv, int jobs, const char* expectations_json,
                          const char* format, char** out_text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* UNIRAT_H */
