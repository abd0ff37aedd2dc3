/* dstbc - distributed space-time block code construction, certification and
 * Monte Carlo simulation.
 *
 * C interface to the shared library. All functions return a status code;
 * structured results come back as heap-allocated UTF-8 strings (JSON or
 * plain text) that the caller releases with dstbc_string_free(). On failure
 * dstbc_last_error() describes the problem for the calling thread.
 */
#ifndef DSTBC_H
#define DSTBC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DSTBC_API __declspec(dllexport)
#else
#define DSTBC_API __attribute__((visibility("default")))
#endif

typedef enum dstbc_status {
    DSTBC_OK = 0,
    DSTBC_ERR_INVALID = 1, /* bad arguments, unknown design, malformed file */
    DSTBC_ERR_RUNTIME = 2, /* numerical or internal failure */
    DSTBC_ERR_IO = 3       /* file could not be read or written */
} dstbc_status;

/* Opaque handle to an immutable design (a set of relay matrices). */
typedef struct dstbc_design_s dstbc_design;

DSTBC_API const char* dstbc_version(void);

/* Thread-local message for the most recent failure; never NULL. */
DSTBC_API const char* dstbc_last_error(void);

DSTBC_API void dstbc_string_free(char* s);

/* Builtin name (cod2, cod4, cod8, ciod4, ciod8, cuw2, cuw4, rr8, rodN,
 * scodN) or path of a design JSON file. */
DSTBC_API dstbc_status dstbc_design_create(const char* spec, dstbc_design** out);

/* Parse a design from JSON text. */
DSTBC_API dstbc_status dstbc_design_from_json(const char* json_text, dstbc_design** out);

DSTBC_API void dstbc_design_free(dstbc_design* d);

DSTBC_API dstbc_status dstbc_design_dims(const dstbc_design* d, unsigned* n_relays,
                                         unsigned* n_symbols, unsigned* n_rows);

DSTBC_API dstbc_status dstbc_design_name(const dstbc_design* d, char** out);

DSTBC_API dstbc_status dstbc_design_to_json(const dstbc_design* d, char** json_out);

DSTBC_API dstbc_status dstbc_design_save(const dstbc_design* d, const char* path);

/* Canonical symbolic code matrix, one text line per row. */
DSTBC_API dstbc_status dstbc_design_render(const dstbc_design* d, char** text_out);

/* Comma-separated list of builtin design names. */
DSTBC_API dstbc_status dstbc_builtin_names(char** csv_out);

/* Certification report (single-symbol decodability with and without phase
 * compensation, full-diversity determinant test, scaled-identity sufficient
 * condition) as JSON, or aligned text when as_json is 0. */
DSTBC_API dstbc_status dstbc_certify(const dstbc_design* d, double tol, int as_json,
                                     char** out);

/* The eight-row certification table over the builtin code families. */
DSTBC_API dstbc_status dstbc_table1(int as_json, char** out);

/* Monte Carlo BER sweep. config_json schema:
 *   { "design": str, "constellation": str, "mode": "pcrc"|"nocsi",
 *     "decoder": "ssd"|"joint"|"whitened", "snr_grid_db": [..],
 *     "max_trials": u64, "target_bit_errors": u64, "seed": u64,
 *     "workers": u32 }
 * The result JSON embeds the full config for provenance. */
DSTBC_API dstbc_status dstbc_simulate(const char* config_json, char** result_json_out);

/* CSV view (snr_db,bits,errors,ber) of a simulation result. */
DSTBC_API dstbc_status dstbc_result_to_csv(const char* result_json, char** csv_out);

DSTBC_API dstbc_status dstbc_write_text_file(const char* path, const char* text);

/* Diversity order: negated log-log slope over the points of a result CSV
 * whose SNR lies in [lo_db, hi_db]. */
DSTBC_API dstbc_status dstbc_slope_from_csv_file(const char* csv_path, double lo_db,
                                                 double hi_db, double* slope_out);

DSTBC_API dstbc_status dstbc_slope_from_points(const double* snr_db, const double* ber,
                                               size_t n, double lo_db, double hi_db,
                                               double* slope_out);

#ifdef __cplusplus
}
#endif

#endif /* DSTBC_H */
