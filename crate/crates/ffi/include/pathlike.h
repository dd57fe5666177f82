#ifndef PATHLIKE_H
#define PATHLIKE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PlStatus {
  PL_STATUS_OK = 0,
  PL_STATUS_NULL_POINTER = 1,
  PL_STATUS_INVALID_UTF8 = 2,
  PL_STATUS_PARSE = 3,
  PL_STATUS_DECIDE = 4,
  PL_STATUS_PANIC = 5,
} PlStatus;

typedef enum PlVerdict {
  PL_VERDICT_NO = 0,
  PL_VERDICT_YES = 1,
  // The tree lies outside the chain criterion; retry with the oracle.
  PL_VERDICT_UNSUPPORTED = 2,
  // A certificate exists but no witness could be built.
  PL_VERDICT_UNASSEMBLED = 3,
} PlVerdict;

// Opaque tree handle.
typedef struct PlTree PlTree;

// Opaque linear configuration handle.
typedef struct PlWitness PlWitness;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on this thread.
const char *pl_last_error(void);

// # Safety
// `s` must be null or a string returned by this library.
void pl_string_free(char *s);

// Parses the tree text format (`order` line, then `u v` edge lines).
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum PlStatus pl_tree_parse(const char *text, struct PlTree **out);

// # Safety
// `t` must be null or a handle from [`pl_tree_parse`].
void pl_tree_free(struct PlTree *t);

// # Safety
// `t` must be a valid tree handle and `out` a valid pointer.
enum PlStatus pl_tree_order(const struct PlTree *t, size_t *out);

// Canonical code; equal codes mean isomorphic trees.
//
// # Safety
// `t` must be a valid tree handle and `out` a valid pointer.
enum PlStatus pl_tree_canonical_code(const struct PlTree *t, char **out);

// Decides path-likeness. With `oracle` nonzero the answer comes from
// enumeration; `strict` restricts the degree-4 rule to one degree-4
// vertex. When `witness` is non-null it receives a handle on a yes
// answer and null otherwise.
//
// # Safety
// `t` must be a valid tree handle; `verdict` a valid pointer; `witness`
// null or a valid pointer.
enum PlStatus pl_decide(const struct PlTree *t,
                        int32_t oracle,
                        int32_t strict,
                        enum PlVerdict *verdict,
                        struct PlWitness **witness);

// Parses the witness text format (`paths` line, then `edge l i j` lines).
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum PlStatus pl_witness_parse(const char *text, struct PlWitness **out);

// # Safety
// `w` must be a valid witness handle and `out` a valid pointer.
enum PlStatus pl_witness_to_text(const struct PlWitness *w, char **out);

// Sets `valid` to 1 when `w` is a proper configuration of a tree
// isomorphic to `t`, else 0.
//
// # Safety
// `w` and `t` must be valid handles and `valid` a valid pointer.
enum PlStatus pl_witness_check(const struct PlWitness *w, const struct PlTree *t, int32_t *valid);

// # Safety
// `w` must be null or a handle returned by this library.
void pl_witness_free(struct PlWitness *w);

// Number of path-like trees of order `n`.
//
// # Safety
// `out` must be a valid pointer.
enum PlStatus pl_count_path_like(size_t n, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PATHLIKE_H */
