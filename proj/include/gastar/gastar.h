/* gastar — exact geometric-algebra and star-product engine, C interface.
 *
 * All entry points are thread-compatible: a context may only be used from
 * one thread at a time, but independent contexts are fully isolated.
 * Strings returned through an out-parameter are heap-allocated and must be
 * released with gastar_string_free.
 */
#ifndef GASTAR_H
#define GASTAR_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gastar_status {
  GASTAR_OK = 0,
  GASTAR_ERROR_INVALID_ARGUMENT = 1,
  GASTAR_ERROR_PARSE = 2,
  GASTAR_ERROR_DOMAIN = 3,
  /* the report was produced but one of its verification checks failed */
  GASTAR_ERROR_CHECK_FAILED = 4,
  GASTAR_ERROR_INTERNAL = 5
} gastar_status;

typedef struct gastar_context gastar_context;

gastar_context* gastar_context_new(void);
void gastar_context_free(gastar_context* ctx);

/* Message for the most recent failing call on this context; empty string
 * when the last call succeeded. The pointer stays valid until the next call
 * on the same context. */
const char* gastar_last_error(const gastar_context* ctx);

const char* gastar_version(void);

/* Generator tables, structure constants and Killing pairings.
 * name: so3 | lorentz:std | lorentz:nonstd | un:<n> | gln:<n> |
 *       clifford:<dim>:euclid | clifford:<dim>:minkowski
 * format: "json" | "csv" */
gastar_status gastar_algebra_report(gastar_context* ctx, const char* name, const char* format,
                                    char** out);

/* Extended-Hamiltonian / ghost-charge report for a polynomial Hamiltonian:
 * {"dof": d, "terms": [{"coeff": "num/den", "q": [e1..ed], "p": [f1..fd]}]} */
gastar_status gastar_brst_report(gastar_context* ctx, const char* hamiltonian_json, char** out);

/* Pointwise geometry table (CSV) for a built-in chart:
 * {"family": "plane"|"sphere"|"torus"|"cotangent", ..., "grid": [n1, n2]} */
gastar_status gastar_geometry_table(gastar_context* ctx, const char* chart_json, char** out);

/* Free rigid-body trajectory (CSV, fixed header):
 * {"inertia": [i1,i2,i3], "l0": [a,b,c], "dt": t, "steps": n} */
gastar_status gastar_rigid_body_run(gastar_context* ctx, const char* config_json, char** out);

/* Randomized verification suites (JSON report):
 * {"suite": "kernel"|"moyal"|"brst"|"symplectic"|"all", "seed": n, ...} */
gastar_status gastar_property_suite(gastar_context* ctx, const char* config_json, char** out);

void gastar_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GASTAR_H */
