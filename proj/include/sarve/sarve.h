/*
 * sarve.h - C interface to the socially-aware venue recommendation engine.
 *
 * All functions return a sarve_status. On failure a description of the most
 * recent error on the calling thread is available from sarve_last_error().
 * Strings returned through char** out-parameters are owned by the caller and
 * must be released with sarve_string_free().
 */
#ifndef SARVE_H
#define SARVE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SARVE_BUILDING_LIBRARY)
#    define SARVE_API __declspec(dllexport)
#  else
#    define SARVE_API __declspec(dllimport)
#  endif
#else
#  define SARVE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define SARVE_ABI_VERSION 1

typedef enum sarve_status {
  SARVE_OK = 0,
  SARVE_E_INVALID_ARGUMENT = 1, /* bad pointer, unknown channel, self-pair, bad threshold */
  SARVE_E_VALIDATION = 2,       /* instance violates a model invariant */
  SARVE_E_PARSE = 3,            /* dataset text is malformed */
  SARVE_E_IO = 4,               /* file could not be read or written */
  SARVE_E_NOT_FOUND = 5,        /* unknown participant or presenter */
  SARVE_E_UNDEFINED = 6,        /* similarity undefined for this pair */
  SARVE_E_INTERNAL = 7
} sarve_status;

typedef enum sarve_channel {
  SARVE_CHANNEL_SOCIAL_CONTEXT = 0,
  SARVE_CHANNEL_SOCIAL_RELATIONS = 1,
  SARVE_CHANNEL_BOTH = 2
} sarve_channel;

typedef enum sarve_format { SARVE_FORMAT_TEXT = 0, SARVE_FORMAT_JSON = 1 } sarve_format;

typedef struct sarve_conference sarve_conference;
typedef struct sarve_server sarve_server;

typedef struct sarve_thresholds {
  double gamma;
  double beta;
  double delta;
  int32_t frame_T;
  int32_t top_n;
} sarve_thresholds;

typedef struct sarve_generator_config {
  uint64_t seed;
  int32_t n_participants;
  int32_t n_presenters;
  int32_t n_sessions;
  int32_t tag_vocabulary;
  double rating_density;
  int32_t max_contact_duration;
  int32_t max_contact_frequency;
  int32_t frame_T;
  int32_t n_locations;
  double availability_coverage;
  double contact_density;
  int32_t session_length;
  double gamma;
  double beta;
  double delta;
  int32_t top_n;
} sarve_generator_config;

typedef struct sarve_recommend_options {
  const sarve_thresholds* overrides; /* NULL: use the dataset's thresholds */
  sarve_channel channel;
  int strict; /* non-zero: social relations also requires the Pearson gate */
  sarve_format format;
} sarve_recommend_options;

typedef struct sarve_evaluate_options {
  sarve_channel channel; /* SOCIAL_CONTEXT or SOCIAL_RELATIONS */
  const double* grid;
  size_t grid_len;
  double train_fraction;
  uint64_t split_seed;
} sarve_evaluate_options;

typedef struct sarve_server_options {
  const char* save_path; /* NULL: no save-on-write */
  int log_requests;
} sarve_server_options;

SARVE_API int sarve_abi_version(void);
SARVE_API const char* sarve_last_error(void);
SARVE_API const char* sarve_status_string(sarve_status status);
SARVE_API void sarve_string_free(char* s);

/* Conference instances */
SARVE_API void sarve_generator_config_default(sarve_generator_config* cfg);
SARVE_API sarve_status sarve_conference_generate(const sarve_generator_config* cfg, sarve_conference** out);
SARVE_API sarve_status sarve_conference_load(const char* path, sarve_conference** out); /* parse + validate */
SARVE_API sarve_status sarve_conference_read(const char* path, sarve_conference** out); /* parse only */
SARVE_API sarve_status sarve_conference_parse(const char* text, size_t len, sarve_conference** out);
SARVE_API sarve_status sarve_conference_save(const sarve_conference* conf, const char* path);
SARVE_API sarve_status sarve_conference_to_text(const sarve_conference* conf, char** out);
SARVE_API sarve_status sarve_conference_thresholds(const sarve_conference* conf, sarve_thresholds* out);
SARVE_API sarve_status sarve_conference_set_thresholds(sarve_conference* conf, const sarve_thresholds* thresholds);
SARVE_API sarve_status sarve_conference_id(const sarve_conference* conf, char** out);
SARVE_API void sarve_conference_free(sarve_conference* conf);

/* Writes one violation per line to *report (may be empty). */
SARVE_API sarve_status sarve_conference_validate(const sarve_conference* conf, size_t* n_violations, char** report);

SARVE_API sarve_status sarve_export_csv(const sarve_conference* conf, const char* ratings_path,
                                        const char* contacts_path);

/* Engine primitives */
SARVE_API sarve_status sarve_pearson(const sarve_conference* conf, const char* c, const char* d, double* out);
SARVE_API sarve_status sarve_tie_strength(int32_t frequency, int32_t duration, int32_t frame_T, double* out);
SARVE_API sarve_status sarve_tie_between(const sarve_conference* conf, const char* a, const char* b, double* out);
SARVE_API sarve_status sarve_degree_centrality(const sarve_conference* conf, const char* participant,
                                               int32_t* raw, double* normalized);

/* Recommendations for one participant, rendered as text or JSON. */
SARVE_API sarve_status sarve_recommend(const sarve_conference* conf, const char* participant,
                                       const sarve_recommend_options* options, char** out);

/* split -> sweep -> ablation. *csv gets the sweep CSV, *tables the text report. */
SARVE_API sarve_status sarve_evaluate(const sarve_conference* conf, const sarve_evaluate_options* options,
                                      char** csv, char** tables);

/* Recommendation service */
SARVE_API sarve_status sarve_server_create(const sarve_conference* conf, const sarve_server_options* options,
                                           sarve_server** out);
/* port 0 picks a free port; the bound port is written to *bound_port. */
SARVE_API sarve_status sarve_server_bind(sarve_server* server, const char* host, int port, int* bound_port);
SARVE_API sarve_status sarve_server_run(sarve_server* server); /* blocks until sarve_server_stop */
SARVE_API void sarve_server_stop(sarve_server* server);
SARVE_API uint64_t sarve_server_version(const sarve_server* server);
SARVE_API void sarve_server_free(sarve_server* server);

#ifdef __cplusplus
}
#endif

#endif /* SARVE_H */
