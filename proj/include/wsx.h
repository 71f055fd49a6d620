#ifndef WSX_H
#define WSX_H 1

#include <stddef.h>
#include <stdint.h>

#if defined(WSX_BUILDING_LIBRARY)
#  define WSX_API __attribute__((visibility("default")))
#else
#  define WSX_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. WSX_OK is zero; every other value names the failing check. */
typedef enum wsx_status
{
    WSX_OK = 0,
    WSX_E_INVALID_SIGNATURE,
    WSX_E_MISSING_TABLE,
    WSX_E_ARITY_MISMATCH,
    WSX_E_ENTRY_OUT_OF_RANGE,
    WSX_E_SIZE_MISMATCH,
    WSX_E_SIGNATURE_MISMATCH,
    WSX_E_SEARCH_BUDGET_EXCEEDED,
    WSX_E_SYNTAX_ERROR,
    WSX_E_UNKNOWN_SYMBOL,
    WSX_E_UNBOUND_VARIABLE,
    WSX_E_NOT_HOMOMORPHISM,
    WSX_E_INVALID_EXTENSION,
    WSX_E_THETA_NOT_ADMISSIBLE,
    WSX_E_ALPHA_AXIOM_FAILED,
    WSX_E_KERNEL_PREIMAGE_MISSING,
    WSX_E_WITNESS_INVALID,
    WSX_E_WRONG_THETA,
    WSX_E_WRONG_SIGNATURE,
    WSX_E_MEMBERSHIP_DISCREPANCY,
    WSX_E_CONDITIONS_FAILED,
    WSX_E_IOTA_NOT_IN_Y,
    WSX_E_INVALID_MORPHISM,
    WSX_E_FILE_FORMAT,
    WSX_E_INTERNAL,
    WSX_E_NULL_ARGUMENT
} wsx_status;

typedef struct wsx_algebra wsx_algebra;
typedef struct wsx_extension wsx_extension;
typedef struct wsx_theta wsx_theta;
typedef struct wsx_report wsx_report;

typedef struct wsx_options
{
    int normalize;          /* nonzero: only witnesses with q(0) = 0 */
    uint64_t limit;         /* witnesses listed by check */
    uint64_t budget;        /* search node cap */
    unsigned workers;
} wsx_options;

WSX_API void wsx_options_default(wsx_options * options);

/* Message of the last failure on the calling thread; empty after success. */
WSX_API const char * wsx_last_error(void);
WSX_API const char * wsx_status_name(wsx_status status);

/* Algebras: a JSON file or an inline JSON text. */
WSX_API wsx_status wsx_algebra_load(const char * path, wsx_algebra ** out);
WSX_API wsx_status wsx_algebra_parse(const char * json, wsx_algebra ** out);
WSX_API size_t wsx_algebra_size(const wsx_algebra * algebra);
WSX_API uint32_t wsx_algebra_zero(const wsx_algebra * algebra);
WSX_API wsx_status wsx_algebra_apply(const wsx_algebra * algebra, const char * op, const uint32_t * args,
        size_t arg_count, uint32_t * result);
WSX_API void wsx_algebra_free(wsx_algebra * algebra);

/* Theta: variable names plus an s-expression, bound to a signature on use. */
WSX_API wsx_status wsx_theta_create(const char * const * vars, size_t var_count, const char * term, wsx_theta ** out);
WSX_API wsx_status wsx_theta_load(const char * path, wsx_theta ** out);
WSX_API void wsx_theta_free(wsx_theta * theta);

/* Extensions; relative algebra paths resolve against the file's directory. */
WSX_API wsx_status wsx_extension_load(const char * path, wsx_extension ** out);
WSX_API wsx_status wsx_extension_parse(const char * json, const char * base_dir, wsx_extension ** out);
WSX_API void wsx_extension_sizes(const wsx_extension * extension, size_t * x, size_t * a, size_t * b);
/* 1 when every split-extension law holds. */
WSX_API wsx_status wsx_extension_is_valid(const wsx_extension * extension, int * valid);
WSX_API wsx_status wsx_extension_count_witnesses(const wsx_extension * extension, const wsx_theta * theta,
        const wsx_options * options, uint64_t * count, int * saturated);
/* Witness number `index` in enumeration order, written as n rows of |A| entries. */
WSX_API wsx_status wsx_extension_witness(const wsx_extension * extension, const wsx_theta * theta,
        const wsx_options * options, uint64_t index, uint32_t * q, size_t capacity, size_t * n);
WSX_API wsx_status wsx_extension_is_schreier(const wsx_extension * extension, const wsx_theta * theta,
        const wsx_options * options, int * schreier);
WSX_API void wsx_extension_free(wsx_extension * extension);

/* Commands. The status only reports argument problems; outcomes live in the report. */
WSX_API wsx_status wsx_cmd_check(const char * extension_path, const wsx_theta * theta, const wsx_options * options,
        wsx_report ** out);
WSX_API wsx_status wsx_cmd_canonicalize(const char * extension_path, const wsx_theta * theta,
        const wsx_options * options, wsx_report ** out);
WSX_API wsx_status wsx_cmd_gamma_check(const char * gamma_path, const wsx_options * options, wsx_report ** out);
WSX_API wsx_status wsx_cmd_pullback(const char * extension_path, const char * hom_path, const wsx_theta * theta,
        const wsx_options * options, wsx_report ** out);
WSX_API wsx_status wsx_cmd_product_check(const char * algebra_path, const wsx_theta * theta,
        const wsx_options * options, wsx_report ** out);
WSX_API wsx_status wsx_cmd_morphism_check(const char * morphism_path, const wsx_theta * theta,
        const wsx_options * options, wsx_report ** out);

WSX_API int wsx_report_exit_code(const wsx_report * report);
WSX_API const char * wsx_report_json(const wsx_report * report);
WSX_API const char * wsx_report_text(const wsx_report * report);
/* NULL when the command produced no file. */
WSX_API const char * wsx_report_artifact(const wsx_report * report);
WSX_API void wsx_report_free(wsx_report * report);

#ifdef __cplusplus
}
#endif

#endif
