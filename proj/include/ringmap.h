/* ringmap — storage-ring quantum circuit mapping toolkit, C API.
 *
 * All functions returning int use the rm_status codes below; on failure a
 * thread-local message is available from rm_last_error(). Strings returned
 * as char* are heap-allocated by the library and must be released with
 * rm_string_free(). Handles are opaque and freed with their *_free function.
 */
#ifndef RINGMAP_H
#define RINGMAP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define RINGMAP_API __declspec(dllexport)
#else
#define RINGMAP_API __attribute__((visibility("default")))
#endif

typedef enum rm_status {
    RM_OK = 0,
    RM_ERR_PARSE = 1,      /* malformed circuit/config/schedule text     */
    RM_ERR_INVALID = 2,    /* violated argument contract                 */
    RM_ERR_INFEASIBLE = 3, /* physically unschedulable request           */
    RM_ERR_VERIFY = 4,     /* semantic equivalence failure               */
    RM_ERR_IO = 5,         /* file system failure                        */
    RM_ERR_INTERNAL = 6
} rm_status;

typedef struct rm_circuit rm_circuit;
typedef struct rm_native rm_native;
typedef struct rm_ring rm_ring;
typedef struct rm_schedule rm_schedule;

RINGMAP_API const char *rm_version(void);
RINGMAP_API const char *rm_last_error(void);
RINGMAP_API void rm_string_free(char *s);
RINGMAP_API uint64_t rm_hash_bytes(const void *data, size_t size);

/* -- circuits ----------------------------------------------------------- */

RINGMAP_API int rm_circuit_parse(const char *text, rm_circuit **out);
RINGMAP_API void rm_circuit_free(rm_circuit *c);
RINGMAP_API int rm_circuit_width(const rm_circuit *c);
RINGMAP_API int rm_circuit_depth(const rm_circuit *c);
RINGMAP_API int rm_circuit_gate_count(const rm_circuit *c);
RINGMAP_API char *rm_circuit_format(const rm_circuit *c);

/* -- transpilation to the native {r, xx} set ---------------------------- */

RINGMAP_API int rm_transpile(const rm_circuit *c, rm_native **out);
RINGMAP_API void rm_native_free(rm_native *nc);
RINGMAP_API int rm_native_width(const rm_native *nc);
RINGMAP_API int rm_native_depth(const rm_native *nc);
RINGMAP_API int rm_native_gate_count(const rm_native *nc);
RINGMAP_API char *rm_native_format(const rm_native *nc);
/* JSON body: [{"native_id":…,"source_id":…}, …] plus per-kind counts. */
RINGMAP_API char *rm_native_provenance_json(const rm_native *nc);

/* -- ring model ---------------------------------------------------------- */

RINGMAP_API int rm_ring_parse(const char *json_text, rm_ring **out);
RINGMAP_API void rm_ring_free(rm_ring *r);
/* Sizing report; pass NULL circuit for the geometry-only form. */
RINGMAP_API int rm_ring_analyze_json(const rm_ring *r, const rm_circuit *c_or_null, char **out_json);

/* -- scheduling ---------------------------------------------------------- */

/* mode: "serial" | "parallel" | "hybrid:K". config_hash_or_null is embedded
 * in the schedule header (callers hash their input texts). */
RINGMAP_API int rm_schedule_build(const rm_native *nc, const rm_ring *r, const char *mode, int bunch_size,
                                  int gap_bunches, const char *config_hash_or_null, rm_schedule **out);
RINGMAP_API void rm_schedule_free(rm_schedule *s);
RINGMAP_API int rm_schedule_parse(const char *json_text, rm_schedule **out);
RINGMAP_API char *rm_schedule_json(const rm_schedule *s);
RINGMAP_API int64_t rm_schedule_makespan_ps(const rm_schedule *s);
RINGMAP_API int64_t rm_schedule_passes_used(const rm_schedule *s);
RINGMAP_API int64_t rm_schedule_measured_wl(const rm_schedule *s);
RINGMAP_API int rm_schedule_deferred_count(const rm_schedule *s);

/* -- timing equations ----------------------------------------------------- */

RINGMAP_API int rm_wl_general(int64_t w, int64_t d, int64_t wstar, int64_t dstar, int64_t dwstar,
                              int64_t *out);
RINGMAP_API int rm_wl_serial(int64_t w, int64_t d, int64_t wstar, int64_t dstar, int64_t *out);
RINGMAP_API int rm_wl_parallel(int64_t w, int64_t d, int64_t wstar, int64_t dstar, int64_t *out);
RINGMAP_API int64_t rm_pass_count(int64_t d, int64_t dstar);

/* -- verification --------------------------------------------------------- */

/* Replays the schedule against the transpiled source circuit and checks
 * unitary equivalence up to a global phase. Returns RM_OK when equivalent,
 * RM_ERR_VERIFY when not (verdict JSON is produced in both cases). */
RINGMAP_API int rm_verify_schedule(const rm_circuit *source, const rm_schedule *s, double tolerance,
                                   char **verdict_json);

/* -- report plumbing ------------------------------------------------------ */

/* Re-emits arbitrary JSON text in the canonical report form (sorted keys,
 * fixed number formatting, trailing newline). */
RINGMAP_API int rm_json_canonical(const char *json_text, char **out_json);

#ifdef __cplusplus
}
#endif

#endif /* RINGMAP_H */
