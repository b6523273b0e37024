#ifndef MODCOH_H
#define MODCOH_H

/* C interface to the modcoh toolkit.
 *
 * Objects are opaque handles released with their matching *_free. Functions
 * return an mc_status; on failure mc_last_error() describes the problem and
 * mc_last_error_json() may carry structured details (a violating triple, an
 * annihilating element, an exceeded bound). Both are per thread and valid
 * until the next call on that thread.
 *
 * Strings returned through char** are JSON documents owned by the caller and
 * released with mc_string_free.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define MC_API __attribute__((visibility("default")))
#else
#define MC_API
#endif

typedef enum mc_status {
  MC_OK = 0,
  MC_ERR_INVALID_ARGUMENT = 1,
  MC_ERR_PARSE = 2,
  MC_ERR_NOT_FOUND = 3,
  MC_ERR_MATH = 4,
  MC_ERR_SIZE_LIMIT = 5,
  MC_ERR_INTERNAL = 6
} mc_status;

typedef struct mc_lie_algebra mc_lie_algebra;
typedef struct mc_group mc_group;
typedef struct mc_coefficients mc_coefficients;
typedef struct mc_cochain mc_cochain;
typedef struct mc_extension mc_extension;

MC_API const char* mc_version(void);
MC_API const char* mc_status_name(mc_status status);
MC_API const char* mc_last_error(void);
/* "{}" when there are no details. */
MC_API const char* mc_last_error_json(void);
MC_API void mc_string_free(char* s);

/* Lie algebras ---------------------------------------------------------- */

/* Unknown names give MC_ERR_NOT_FOUND. */
MC_API mc_status mc_lie_builtin(const char* name, mc_lie_algebra** out);
MC_API mc_status mc_lie_from_json(const char* json, mc_lie_algebra** out);
MC_API void mc_lie_free(mc_lie_algebra* g);
MC_API mc_status mc_lie_dim(const mc_lie_algebra* g, size_t* out);
MC_API mc_status mc_lie_to_json(const mc_lie_algebra* g, char** out);

/* *ok is 1 when the constants are antisymmetric and satisfy Jacobi. */
MC_API mc_status mc_lie_validate(const mc_lie_algebra* g, int* ok, char** report);
MC_API mc_status mc_lie_is_perfect(const mc_lie_algebra* g, int* out, char** report);
MC_API mc_status mc_lie_cohomology_dim(const mc_lie_algebra* g, size_t degree, size_t* out, char** report);
/* elements: {"generators": [...]} or an array of elements. */
MC_API mc_status mc_lie_generate(const mc_lie_algebra* g, const char* elements_json, char** report);
MC_API mc_status mc_lie_ideal(const mc_lie_algebra* g, const char* element_json, char** report);

/* Finite groups and coefficients ---------------------------------------- */

MC_API mc_status mc_group_builtin(const char* name, mc_group** out);
MC_API mc_status mc_group_from_json(const char* json, mc_group** out);
MC_API void mc_group_free(mc_group* g);
MC_API mc_status mc_group_order(const mc_group* g, size_t* out);

/* "z2", "z2xz3", "klein4" or "2,2". */
MC_API mc_status mc_coefficients_parse(const char* spec, mc_coefficients** out);
MC_API void mc_coefficients_free(mc_coefficients* a);
MC_API mc_status mc_coefficients_size(const mc_coefficients* a, size_t* out);

/* H^degree(P, A) for degree 1 or 2. The order is written to *order when it
 * fits. */
MC_API mc_status mc_group_cohomology(const mc_group* p, const mc_coefficients* a, size_t degree, uint64_t* order,
                                     char** report);
MC_API mc_status mc_group_cocycles(const mc_group* p, const mc_coefficients* a, size_t degree, char** report);

MC_API mc_status mc_cochain_from_json(const char* json, mc_cochain** out);
MC_API void mc_cochain_free(mc_cochain* f);
MC_API mc_status mc_cochain_to_json(const mc_cochain* f, char** out);
/* *out is 1 when the coboundary of f vanishes. */
MC_API mc_status mc_cochain_is_cocycle(const mc_cochain* f, int* out);

/* Central extensions ---------------------------------------------------- */

/* Non-cocycles give MC_ERR_MATH with details {"triple": [p, q, r]}. */
MC_API mc_status mc_extension_build(const mc_cochain* cocycle, mc_extension** out);
/* Full table document; rebuilt from the cocycle and compared exactly. */
MC_API mc_status mc_extension_from_json(const char* json, mc_extension** out);
MC_API void mc_extension_free(mc_extension* e);
MC_API mc_status mc_extension_order(const mc_extension* e, size_t* out);
MC_API mc_status mc_extension_to_json(const mc_extension* e, char** out);
MC_API mc_status mc_extension_report(const mc_extension* e, char** report);
MC_API mc_status mc_extension_equivalent(const mc_extension* e1, const mc_extension* e2, int* out, char** report);
MC_API mc_status mc_extension_split(const mc_extension* e, int* out, char** report);

/* Compares H^1(ker sigma, A) with H^2(P, A). sigma lists the image of each
 * element of the covering group; pass NULL to pick the first surjection with
 * central kernel. */
MC_API mc_status mc_correspondence(const mc_group* covering, const mc_group* base, const size_t* sigma,
                                   size_t sigma_len, const mc_coefficients* a, char** report);

/* Modular theory -------------------------------------------------------- */

/* input: {"dimension", "generators", "state"}. A state that is not cyclic and
 * separating gives MC_ERR_MATH with details {"property", "annihilator"}. */
MC_API mc_status mc_modular_report(const char* input_json, uint64_t seed, size_t samples, char** report);
/* "tracial", "entangled" (weight p) or "product". */
MC_API mc_status mc_modular_example(const char* name, double p, char** input_json);

/* Spacetime ------------------------------------------------------------- */

/* Row-major 4x4 boost of the standard wedge. */
MC_API mc_status mc_boost_matrix(double t, double out[16]);
MC_API mc_status mc_spacetime_boost(double t, char** report);
/* family: "six" or "coordinate-only". *success is 1 when the closure is all
 * of poincare4. */
MC_API mc_status mc_spacetime_boost_generation(const char* family, int* success, char** report);
/* wedge_json may be NULL for the standard wedge. */
MC_API mc_status mc_spacetime_complement(const char* wedge_json, char** report);

#ifdef __cplusplus
}
#endif

#endif
