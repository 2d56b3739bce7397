#ifndef STREAMCUT_STREAMCUT_H
#define STREAMCUT_STREAMCUT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SC_API __declspec(dllexport)
#else
#define SC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sc_status {
  SC_OK = 0,
  SC_INVALID_ARGUMENT = 1,
  SC_DOMAIN = 2,
  SC_PARSE = 3,
  SC_IO = 4,
  SC_DISCONNECTED = 5,
  SC_NOT_CONVERGED = 6,
  SC_UNSUPPORTED = 7,
  SC_INTERNAL = 8
} sc_status;

typedef struct sc_graph sc_graph;
typedef struct sc_er_sketch sc_er_sketch;

/* Options shared by the streaming entry points. */
typedef struct sc_run_options {
  uint64_t seed;
  int shuffle; /* nonzero: arrival order is a seeded uniform permutation */
  uint64_t shuffle_seed;
  const char* space_log; /* CSV path for the space-meter series, or NULL */
  size_t reps;           /* contraction repetitions, 0 = default */
  int simple_variant;    /* mincut: coarse candidates, alpha = 1.5 */
  double c_alpha;        /* mincut: constant in alpha = 1 + c/ln n, 0 = default */
  double c_thresh;       /* random order: freeze threshold factor, 0 = default */
} sc_run_options;

SC_API void sc_run_options_init(sc_run_options* opts);

SC_API const char* sc_version(void);
SC_API const char* sc_status_string(sc_status status);
/* Message of the last failed call on this thread ("" if none). */
SC_API const char* sc_last_error(void);
/* Frees strings returned through char** out-parameters. */
SC_API void sc_string_free(char* s);

/* Graphs. Text format: "n m" then m lines "u v [w]". */
SC_API sc_status sc_graph_new(size_t n, int simple, sc_graph** out);
SC_API sc_status sc_graph_add_edge(sc_graph* g, uint32_t u, uint32_t v, double w);
SC_API sc_status sc_graph_read_file(const char* path, int simple, sc_graph** out);
SC_API sc_status sc_graph_parse(const char* text, int simple, sc_graph** out);
SC_API sc_status sc_graph_write_file(const sc_graph* g, const char* path);
SC_API sc_status sc_graph_format(const sc_graph* g, char** out_text);
SC_API size_t sc_graph_n(const sc_graph* g);
SC_API size_t sc_graph_m(const sc_graph* g);
SC_API int sc_graph_is_simple(const sc_graph* g);
SC_API sc_status sc_graph_edge(const sc_graph* g, size_t i, uint32_t* u,
                               uint32_t* v, double* w);
SC_API sc_status sc_graph_cut_value(const sc_graph* g, const uint32_t* side,
                                    size_t count, double* out);
SC_API void sc_graph_free(sc_graph* g);

/* Sparsifiers. kind is "forall" or "foreach". With streamed != 0 the graph
 * is replayed as a stream through the block tower; otherwise the offline
 * reducer runs once. The metadata JSON carries kind, eps, seed and
 * source_edge_ids. */
SC_API sc_status sc_sparsify(const sc_graph* g, const char* kind, double eps,
                             int streamed, const sc_run_options* opts,
                             sc_graph** out_graph, char** out_metadata_json);

/* One pass (1 + eps)-approximate minimum cut. */
SC_API sc_status sc_mincut(const sc_graph* g, double eps,
                           const sc_run_options* opts, char** out_json);

/* Exact minimum cut of a simple graph streamed in random order. */
SC_API sc_status sc_mincut_random_order(const sc_graph* g,
                                        const sc_run_options* opts,
                                        char** out_json);

/* Effective-resistance sketch. strict != 0 streams one independent for-each
 * sparsifier per copy. */
SC_API sc_status sc_er_sketch_build(const sc_graph* g, double eps, int strict,
                                    const sc_run_options* opts,
                                    sc_er_sketch** out);
SC_API sc_status sc_er_sketch_query(const sc_er_sketch* sk, uint32_t u,
                                    uint32_t v, double* out);
SC_API size_t sc_er_sketch_rows(const sc_er_sketch* sk);
SC_API size_t sc_er_sketch_copies(const sc_er_sketch* sk);
SC_API void sc_er_sketch_free(sc_er_sketch* sk);

/* Reference oracles. */
SC_API sc_status sc_oracle_mincut(const sc_graph* g, char** out_json);
SC_API sc_status sc_oracle_cut_family(const sc_graph* g, double alpha,
                                      char** out_json);
SC_API sc_status sc_oracle_effres(const sc_graph* g, uint32_t u, uint32_t v,
                                  double* out);
/* Full n x n resistance matrix, row-major; capacity must be at least n * n. */
SC_API sc_status sc_oracle_effres_matrix(const sc_graph* g, double* out,
                                         size_t capacity);
SC_API sc_status sc_oracle_leverage(const sc_graph* g, char** out_json);

/* Generators. kind: gnp, dumbbell, cycle, planted-bisection, kedge-layered,
 * hamiltonian-union; params is a JSON object ("" for defaults). */
SC_API sc_status sc_gen(const char* kind, const char* params_json,
                        uint64_t seed, sc_graph** out_graph,
                        char** out_manifest_json);
/* entries_json: array of {"kind", "params", "seed"}; writes one file per
 * entry plus manifest.json into dir. */
SC_API sc_status sc_gen_corpus(const char* entries_json, const char* dir);
/* kind: hard-exact ({"n", "index", "bits"?}) or hard-approx ({"eps",
 * "blocks", "index", "bits"?}); bits is a 0/1 string, drawn from seed when
 * absent. */
SC_API sc_status sc_gen_hard(const char* kind, const char* params_json,
                             uint64_t seed, sc_graph** out_graph,
                             char** out_truth_json);

/* Acceptance suite. ids may be NULL (all criteria). progress may be NULL. */
typedef void (*sc_progress_fn)(const char* line, void* user);
SC_API sc_status sc_accept(const int* ids, size_t count, uint64_t seed,
                           sc_progress_fn progress, void* user,
                           char** out_json, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif
