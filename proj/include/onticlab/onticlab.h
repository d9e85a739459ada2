/* onticlab shared-library interface.
 *
 * Plain C surface over the toolkit: JSON strings in, JSON strings out,
 * opaque handles for objects worth keeping alive across calls (models own
 * their quadrature, which is expensive to rebuild). Every entry point
 * returns a status code; olab_last_error() describes the most recent
 * failure on the calling thread. Strings returned through out-parameters
 * are heap-allocated; release them with olab_free().
 */

#ifndef ONTICLAB_H
#define ONTICLAB_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum olab_status {
  OLAB_OK = 0,
  OLAB_USAGE = 1,    /* malformed request shape */
  OLAB_DOMAIN = 2,   /* parameter outside its mathematical domain */
  OLAB_RANGE = 3,    /* vector/operator outside the required subspace */
  OLAB_STATE = 4,    /* call not valid for the object's current state */
  OLAB_PARSE = 5,    /* unreadable JSON input */
  OLAB_INTERNAL = 6
} olab_status;

/* An ontological model bound to its quadrature. */
typedef struct olab_model olab_model;

const char* olab_version(void);
const char* olab_status_name(olab_status status);

/* Message for the last failing call on this thread; empty string if none. */
const char* olab_last_error(void);

void olab_free(char* text);

/* The six decompositions of a mixed qubit.
 * request: {"q": "1/2" | 0.5, "nhat": [x,y,z]?, "phase": radians?,
 *           "rational": bool?}
 * response: {"decompositions": [...], "rational": bool}
 */
olab_status olab_decomp(const char* request_json, char** response_json);

/* Branch-enumerated feasibility of the canonical instance.
 * request: {"q": "1/2" | 0.5, "phase": radians?, "rational": bool?,
 *           "explain": bool?, "minimal": bool?, "subset": [indices]?}
 * response: feasibility report (verdict, branches, certificates).
 */
olab_status olab_pncheck(const char* request_json, char** response_json);

/* config: {"model": "ks" | "deficit", "epsilon": e?, "points": n?,
 *          "quadrature": "fibonacci" | "montecarlo"?, "seed": s?}
 */
olab_status olab_model_create(const char* config_json, olab_model** model);
void olab_model_free(olab_model* model);

/* request: {"trials": t, "seed": s} -> outcome-statistics deviation report */
olab_status olab_model_verify(const olab_model* model, const char* request_json,
                              char** response_json);

/* request: {"pair": {"phi": [x,y,z], "psi": [x,y,z]}} or {"angle_deg": a}
 * response: {"model", "points", "pair", "born", "overlap", "f",
 *            "omega_measure"}
 */
olab_status olab_model_overlap(const olab_model* model, const char* request_json,
                               char** response_json);

/* request: {"state": bipartite, "target": decomposition}
 * response: Alice POVM + assemblage + diagnostics.
 */
olab_status olab_steer(const char* request_json, char** response_json);

/* request: {"state": bipartite, "r": 0.5?, "samples": 64?}
 * `model` may be NULL for supports of dimension three or more; it is
 * required for two-qubit states.
 */
olab_status olab_witness(const olab_model* model, const char* request_json,
                         char** response_json);

#ifdef __cplusplus
}
#endif

#endif /* ONTICLAB_H */
