/*
 * C interface to the ietrel library: exact interval exchange maps over real
 * quadratic fields and relation certificates for a disjoint rotation map r
 * and an interval exchange g.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Strings returned through `char **` are
 * heap-allocated and released with ietrel_string_free. Every function returns
 * an ietrel_status; on failure ietrel_last_error() describes the problem
 * (thread-local, valid until the next call on the same thread).
 */
#ifndef IETREL_IETREL_H
#define IETREL_IETREL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define IETREL_API __declspec(dllexport)
#else
#define IETREL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ietrel_status {
  IETREL_OK = 0,
  IETREL_VERIFICATION_FAILED = 1,
  IETREL_PARSE_ERROR = 2,
  IETREL_CONTEXT_MISMATCH = 3,
  IETREL_PRECONDITION_VIOLATED = 4,
  IETREL_SEARCH_CAP_EXCEEDED = 5,
  IETREL_INTERNAL_ERROR = 6,
  IETREL_INVALID_ARGUMENT = 7
} ietrel_status;

typedef struct ietrel_map ietrel_map;
typedef struct ietrel_rotation ietrel_rotation;
typedef struct ietrel_word ietrel_word;
typedef struct ietrel_certificate ietrel_certificate;

IETREL_API const char *ietrel_last_error(void);
IETREL_API const char *ietrel_status_name(ietrel_status status);
IETREL_API void ietrel_string_free(char *s);

/* Interval exchange maps. Parsing accepts "iet", "perm-lambda" and "rotation"
 * documents; the latter two are converted to their map. */
IETREL_API ietrel_status ietrel_map_parse(const char *text, ietrel_map **out);
IETREL_API ietrel_status ietrel_map_emit(const ietrel_map *map, char **out);
IETREL_API void ietrel_map_free(ietrel_map *map);
IETREL_API ietrel_status ietrel_map_compose(const ietrel_map *f, const ietrel_map *g,
                                            ietrel_map **out);
IETREL_API ietrel_status ietrel_map_inverse(const ietrel_map *f, ietrel_map **out);
IETREL_API ietrel_status ietrel_map_power(const ietrel_map *f, int64_t m, ietrel_map **out);
IETREL_API ietrel_status ietrel_map_is_identity(const ietrel_map *f, int *out);
IETREL_API ietrel_status ietrel_map_discontinuity_count(const ietrel_map *f, size_t *out);
/* f(x); x and the result use the scalar grammar. */
IETREL_API ietrel_status ietrel_map_apply(const ietrel_map *f, const char *x, char **out);
/* x, f(x), ..., f^(steps-1)(x), one per line. */
IETREL_API ietrel_status ietrel_map_orbit(const ietrel_map *f, const char *x, int64_t steps,
                                          char **out);
/* Exact L1 distance to the identity plus a floating rendering (diagnostic). */
IETREL_API ietrel_status ietrel_map_l1(const ietrel_map *f, char **exact, double *approx);
/* CSV "n,discontinuities,l1_exact,l1_float" for f^1 .. f^max_n. */
IETREL_API ietrel_status ietrel_map_disc_growth(const ietrel_map *f, int64_t max_n, char **csv);

/* Disjoint rotation specs. */
IETREL_API ietrel_status ietrel_rotation_parse(const char *text, ietrel_rotation **out);
IETREL_API ietrel_status ietrel_rotation_emit(const ietrel_rotation *r, char **out);
IETREL_API void ietrel_rotation_free(ietrel_rotation *r);
IETREL_API ietrel_status ietrel_rotation_to_map(const ietrel_rotation *r, ietrel_map **out);

/* Words in generators a (the rotation) and b (the map g). Parsing accepts a
 * bare word ("b^-1 a^-5 b a^5"), a "word" document or a "certificate"
 * document. */
IETREL_API ietrel_status ietrel_word_parse(const char *text, ietrel_word **out);
IETREL_API ietrel_status ietrel_word_emit(const ietrel_word *w, char **out);
IETREL_API void ietrel_word_free(ietrel_word *w);
IETREL_API ietrel_status ietrel_word_is_trivial(const ietrel_word *w, int *out);
/* Evaluates w at a -> c r c^-1, b -> g (conjugator may be NULL). */
IETREL_API ietrel_status ietrel_word_eval(const ietrel_word *w, const ietrel_rotation *r,
                                          const ietrel_map *g, const ietrel_map *conjugator,
                                          ietrel_map **out);

/* Relation synthesis. conjugator may be NULL; m_cap <= 0 selects the default
 * cap. Succeeds only with a verified certificate. */
IETREL_API ietrel_status ietrel_synthesize(const ietrel_rotation *r, const ietrel_map *g,
                                           const ietrel_map *conjugator, int64_t m_cap,
                                           ietrel_certificate **out);
IETREL_API ietrel_status ietrel_certificate_parse(const char *text, ietrel_certificate **out);
IETREL_API ietrel_status ietrel_certificate_emit(const ietrel_certificate *c, char **out);
IETREL_API void ietrel_certificate_free(ietrel_certificate *c);
IETREL_API ietrel_status ietrel_certificate_word(const ietrel_certificate *c, ietrel_word **out);
IETREL_API ietrel_status ietrel_certificate_is_verified(const ietrel_certificate *c, int *out);

/* Independent check that w is nontrivial after free reduction and evaluates
 * to the identity at a -> c r c^-1, b -> g, using syllable-by-syllable
 * composition. Returns IETREL_OK with *holds set either way. */
IETREL_API ietrel_status ietrel_verify(const ietrel_word *w, const ietrel_rotation *r,
                                       const ietrel_map *g, const ietrel_map *conjugator,
                                       int *holds);

/* Finite-permutation checks of the order-six commutator argument. *passed is
 * 1 when every instance passed; *report receives a text summary. */
IETREL_API ietrel_status ietrel_prop_check_exhaustive(size_t size, int *passed, char **report);
IETREL_API ietrel_status ietrel_prop_check_random(size_t max_size, size_t trials, uint64_t seed,
                                                  int *passed, char **report);

#ifdef __cplusplus
}
#endif

#endif /* IETREL_IETREL_H */
