/*
 * Copyright 2026 The ldaqc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LDAQC_LDAQC_H_
#define LDAQC_LDAQC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LDAQC_API __declspec(dllexport)
#else
#define LDAQC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ldaqc_status {
    LDAQC_OK = 0,
    LDAQC_ERR_INVALID_ARGUMENT = 1,
    LDAQC_ERR_EMPTY_INSTANCE = 2,
    LDAQC_ERR_CAP_EXCEEDED = 3,
    LDAQC_ERR_INVALID_PROFILE = 4,
    LDAQC_ERR_INTERNAL = 5,
    LDAQC_ERR_INTEGRATOR = 6,
    LDAQC_ERR_UNDEFINED_METRIC = 7,
    LDAQC_ERR_IO = 8,
    LDAQC_ERR_UNKNOWN = 99
} ldaqc_status;

typedef struct ldaqc_graph ldaqc_graph;
typedef struct ldaqc_catalog ldaqc_catalog;
typedef struct ldaqc_profile ldaqc_profile;

LDAQC_API const char* ldaqc_version(void);

/* Message of the last failed call on this thread; "" after a success. */
LDAQC_API const char* ldaqc_last_error(void);

/* Strings handed out through char** parameters are released with this. */
LDAQC_API void ldaqc_string_free(char* s);

/* Graphs. `edges` holds 2*m vertex ids; `xy` is NULL or 2*n coordinates. */
LDAQC_API ldaqc_status ldaqc_graph_from_edges(size_t n, const int* edges, size_t m, const double* xy,
                                              ldaqc_graph** out);
LDAQC_API ldaqc_status ldaqc_graph_kings(int rows, int cols, double hole_probability, uint64_t seed,
                                         ldaqc_graph** out);
LDAQC_API ldaqc_status ldaqc_graph_load(const char* path, ldaqc_graph** out);
LDAQC_API ldaqc_status ldaqc_graph_save(const ldaqc_graph* g, const char* path);
LDAQC_API size_t ldaqc_graph_size(const ldaqc_graph* g);
LDAQC_API size_t ldaqc_graph_edge_count(const ldaqc_graph* g);
LDAQC_API ldaqc_status ldaqc_graph_degree(const ldaqc_graph* g, size_t v, int* out);
LDAQC_API void ldaqc_graph_free(ldaqc_graph* g);

/* Independent-set catalog (N <= 20). */
LDAQC_API ldaqc_status ldaqc_catalog_build(const ldaqc_graph* g, ldaqc_catalog** out);
LDAQC_API int ldaqc_catalog_mis_size(const ldaqc_catalog* c);
LDAQC_API size_t ldaqc_catalog_mis_count(const ldaqc_catalog* c);
LDAQC_API ldaqc_status ldaqc_catalog_hardness(const ldaqc_catalog* c, double* out);
LDAQC_API ldaqc_status ldaqc_catalog_json(const ldaqc_catalog* c, char** out);
LDAQC_API void ldaqc_catalog_free(ldaqc_catalog* c);

/* Detuning engineering. family: "linear", "exponential" or "power_law". */
LDAQC_API ldaqc_status ldaqc_profile_engineer(const ldaqc_graph* g, const char* family, double delta0,
                                              double safety, ldaqc_profile** out);
LDAQC_API double ldaqc_profile_a_star(const ldaqc_profile* p);
LDAQC_API double ldaqc_profile_a_used(const ldaqc_profile* p);
LDAQC_API int ldaqc_profile_k_star(const ldaqc_profile* p);
/* Copies min(n, N) per-vertex factors into out. */
LDAQC_API size_t ldaqc_profile_factors(const ldaqc_profile* p, double* out, size_t n);
LDAQC_API ldaqc_status ldaqc_profile_hardness(const ldaqc_profile* p, const ldaqc_catalog* c, int binary,
                                              double* out);
LDAQC_API ldaqc_status ldaqc_profile_json(const ldaqc_profile* p, char** out);
LDAQC_API void ldaqc_profile_free(ldaqc_profile* p);

/* Experiment config as JSON; NULL selects the defaults. */
LDAQC_API ldaqc_status ldaqc_config_default(char** out);

/* Both protocols on one graph at every configured t_f. When
 * trajectory_prefix is non-NULL, <prefix>_<protocol>.csv trajectories at the
 * primary t_f are written as well. Result: JSON array of records. */
LDAQC_API ldaqc_status ldaqc_simulate(const ldaqc_graph* g, const char* config_json, const char* trajectory_prefix,
                                      char** out);

/* Generates the configured ensemble into dir (graph files and manifest.json). */
LDAQC_API ldaqc_status ldaqc_gen(const char* config_json, const char* dir, char** manifest);

/* Full run into dir. failed receives the number of failed instances. */
LDAQC_API ldaqc_status ldaqc_bench(const char* config_json, const char* dir, char** summary, size_t* failed);

/* Re-derives the report files in dir from a records.csv. primary_tf <= 0
 * selects the largest t_f present. */
LDAQC_API ldaqc_status ldaqc_report(const char* records_csv, double primary_tf, const char* dir, char** summary);

/* Brute-force oracle suite. passed is set to 1 when every check passes. */
LDAQC_API ldaqc_status ldaqc_selftest(uint64_t seed, char** report, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* LDAQC_LDAQC_H_ */
