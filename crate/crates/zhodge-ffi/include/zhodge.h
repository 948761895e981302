/* C interface to the zhodge engine: exact equivariant Gromov-Witten
 * invariants of [C^3/Z_3] and the Z3-Hodge integrals behind them.
 *
 * All numeric values cross the boundary as exact "p/q" strings. Strings
 * returned by zh_engine_invariant / zh_engine_hodge are owned by the caller
 * and released with zh_string_free; the error string from
 * zh_engine_last_error is owned by the engine.
 *
 * This header is maintained by hand against the exports of zhodge-ffi
 * (see the abi_matches_header test).
 */

#ifndef ZHODGE_H
#define ZHODGE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Error codes. */
#define ZH_OK 0
#define ZH_ERR_COMPUTE 1
#define ZH_ERR_USAGE 2
#define ZH_ERR_IO 3
#define ZH_ERR_MISSING 4
#define ZH_ERR_VERIFY 5

/* Opaque engine handle. */
typedef struct ZhEngine ZhEngine;

/* Creates an engine holding the three-point seeds. threads >= 1. */
ZhEngine *zh_engine_new(unsigned int threads);

/* Releases the engine. NULL is a no-op. */
void zh_engine_free(ZhEngine *engine);

/* Computes all invariants with at most max_insertions insertions
 * (max_insertions >= 3). Idempotent. */
int zh_engine_compute(ZhEngine *engine, unsigned int max_insertions);

/* Runs the verification suite (reference table plus property checks). */
int zh_engine_verify(ZhEngine *engine);

/* The invariant <w^n1 wb^n2> evaluated at rational t1, t2, t3 (strings like
 * "1" or "2/3"; NULL means 1). Returns a "p/q" string or NULL on error. */
char *zh_engine_invariant(ZhEngine *engine, unsigned int n1, unsigned int n2,
                          const char *t1, const char *t2, const char *t3);

/* The Z3-Hodge integral of lam_i lam_j lam_k over A(n1,n2), as a "p/q"
 * string, or NULL on error. Computes on demand. */
char *zh_engine_hodge(ZhEngine *engine, unsigned int n1, unsigned int n2,
                      unsigned int li, unsigned int lj, unsigned int lk);

/* Writes / reads the JSON cache. */
int zh_engine_save(ZhEngine *engine, const char *path);
ZhEngine *zh_engine_load(const char *path, unsigned int threads);

/* The last error message on this engine, or NULL. Engine-owned. */
const char *zh_engine_last_error(const ZhEngine *engine);

/* Frees a string returned by zh_engine_invariant / zh_engine_hodge. */
void zh_string_free(char *s);

#ifdef __cplusplus
}
#endif

#endif /* ZHODGE_H */
