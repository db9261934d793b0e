#ifndef TROPBUNDLE_H_
#define TROPBUNDLE_H_

/* C interface to the tropbundle library.
 *
 * All domain objects live behind opaque handles.  Functions return 0 on
 * success and a nonzero error code otherwise; tb_last_error_message() gives
 * the thread-local message of the most recent failure and tb_error_name()
 * the symbolic name of a code.  Structured inputs and outputs are JSON
 * strings; strings returned through char** are heap-allocated and must be
 * released with tb_string_free().
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct tb_matroid tb_matroid;
typedef struct tb_fan tb_fan;
typedef struct tb_bundle tb_bundle;

/* Error codes. */
enum {
  TB_OK = 0,
  TB_ERR_PARSE = 1,
  TB_ERR_INVALID_INPUT = 2,
  TB_ERR_DOMAIN = 3,   /* any typed domain error; see tb_last_error_name() */
  TB_ERR_INTERNAL = 4
};

const char* tb_version(void);
const char* tb_last_error_message(void);
/* Symbolic name of the last domain error, e.g. "RowNotBergman". */
const char* tb_last_error_name(void);
void tb_string_free(char* s);

/* ---- matroids ------------------------------------------------------- */

/* `text` is a JSON object ({"ground":[...],"bases"|"circuits"|"matrix":...})
 * or a named constructor: "uniform:r,m", "fano", "vamos". */
int tb_matroid_create(const char* text, tb_matroid** out);
void tb_matroid_destroy(tb_matroid* m);
int tb_matroid_to_json(const tb_matroid* m, char** json_out);

/* Queries, by operation name with a JSON argument object:
 *   "info"            {}                      -> ground, rank, counts
 *   "flats"           {"rank": k?}            -> flats (optionally of rank k)
 *   "circuits"        {}
 *   "modular"         {}                      -> {"modular": bool}
 *   "rank"            {"set": [labels]}
 *   "closure"         {"set": [labels]}
 *   "defect"          {"f1": [...], "f2": [...]}
 *   "fundamental-circuit" {"e": label, "basis": [labels]}
 *   "greedy"          {"weights": [ints or "p/q"]}
 *   "bergman-check"   {"w": [ints]}
 *   "bergman-project" {"w": [ints]}
 *   "bergman-flag"    {"w": [ints]}
 *   "point-from-flag" {"flag": {...}}
 *   "adapted-bases"   {"w": [ints]}
 *   "phi-b"           {"basis": [labels], "a": [ints over the basis]}
 *   "apartment-contains" {"basis": [labels], "w": [ints]}
 *   "symmetric"       {"w": [...], "kind": "elementary"|"power"|"exp", "k": int}
 */
int tb_matroid_query(const tb_matroid* m, const char* op, const char* args_json, char** json_out);

/* Derived matroids. */
int tb_matroid_dual(const tb_matroid* m, tb_matroid** out);
int tb_matroid_quotient(const tb_matroid* m, const char* flat_labels_json, tb_matroid** out);
int tb_matroid_restriction(const tb_matroid* m, const char* labels_json, tb_matroid** out);

/* ---- fans ------------------------------------------------------------ */

/* `text` is a JSON object or a name: "p1", "p2", "pn:n", "p1xp1", "perm:m". */
int tb_fan_create(const char* text, tb_fan** out);
void tb_fan_destroy(tb_fan* f);
int tb_fan_to_json(const tb_fan* f, char** json_out);

/* Ops: "info" {}, "walls" {}, "cone-containing" {"x":[...]},
 *      "polyhedron-contains" {"ineqs":[...],"u":[...]},
 *      "lattice-points" {"support":[...]} or {"ineqs":[...]},
 *      "vertex-in-direction" {"support":[...],"cone":k},
 *      "has-normal-fan" {"support":[...]}. */
int tb_fan_query(const tb_fan* f, const char* op, const char* args_json, char** json_out);

/* ---- bundles ---------------------------------------------------------- */

/* All-in-one JSON {"matroid":...,"fan":...,"diagram":[[...]]}; validates. */
int tb_bundle_create(const char* bundle_json, tb_bundle** out);
int tb_bundle_create_parts(const tb_matroid* m, const tb_fan* f, const char* diagram_json,
                           tb_bundle** out);
void tb_bundle_destroy(tb_bundle* b);
int tb_bundle_to_json(const tb_bundle* b, char** json_out);

/* Ops (args as JSON object):
 *   "info" {}                      -> matroid/fan/diagram summary + certificates
 *   "klyachko" {"ray": r, "t": k}  | {"thresholds": [[ray, t], ...]}
 *   "phi-at" {"x": [...]}
 *   "parliament" {"vertices": bool?}
 *   "sections" {"u": [...], "via": "flats"?}
 *   "sections-sigma" {"u": [...], "cone": [ray indices]}
 *   "euler" {"u": [...]}
 *   "euler-total" {}               -> chi_total, h0_total, box
 *   "flat-coefficients" {}
 *   "characters" {"cone": k}
 *   "chern" {"i": k}
 *   "kclass" {}
 *   "chern-character" {}
 *   "wall-compat" {}
 *   "gg" {}
 *   "n0" {"L": [...]}
 *   "nef" {} | "ample" {}
 *   "walls" {}
 *   "split" {}
 *   "wall-splitting" {"wall": k}
 */
int tb_bundle_query(const tb_bundle* b, const char* op, const char* args_json, char** json_out);

int tb_bundle_twist(const tb_bundle* b, const char* line_bundle_json, tb_bundle** out);
int tb_bundle_restrict(const tb_bundle* b, int wall_index, int all_choices, char** json_out);
int tb_bundle_pullback(const tb_bundle* b, const char* lambda_json, const tb_fan* src,
                       tb_bundle** out);

/* ---- tautological bundles -------------------------------------------- */

/* which: "sub-dual" | "quotient". */
int tb_taut_build(const tb_matroid* m, const char* which, tb_bundle** out);
int tb_taut_nef_sweep(const tb_matroid* m, int allow_large, char** json_out);
int tb_bundle_cremona(const tb_bundle* b, tb_bundle** out);
int tb_bundle_from_pl(const tb_matroid* m, const tb_fan* f, const char* psi_json, tb_bundle** out);

/* ---- extensions ------------------------------------------------------- */

int tb_ext_push(const tb_bundle* b, const char* extension_json, tb_bundle** out);
/* candidates: JSON array of extensions, or {"principal-catalog": true} to use
 * all principal extensions of the bundle's matroid over its proper flats. */
int tb_ext_split_search(const tb_bundle* b, const char* candidates_json, char** json_out);
int tb_ext_defect(const tb_bundle* b, char** json_out);

/* ---- shipped examples -------------------------------------------------- */

/* name: "fano-bundle" | "vamos-p1" | "u23-zero". */
int tb_example(const char* name, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* TROPBUNDLE_H_ */
