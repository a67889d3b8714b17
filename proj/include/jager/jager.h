/*
 * Copyright 2026 The Jager Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef JAGER_JAGER_H_
#define JAGER_JAGER_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define JAGER_API __declspec(dllexport)
#else
#define JAGER_API __attribute__((visibility("default")))
#endif

typedef enum jager_status {
  JAGER_OK = 0,
  JAGER_ERR_INVALID_ARGUMENT = 1,
  JAGER_ERR_MALFORMED = 2,
  JAGER_ERR_UNAUTHENTICATED = 3,
  JAGER_ERR_PERMISSION_DENIED = 4,
  JAGER_ERR_RATE_LIMITED = 5,
  JAGER_ERR_VERIFICATION_FAILED = 6,
  JAGER_ERR_NOT_FOUND = 7,
  JAGER_ERR_ALREADY_EXISTS = 8,
  JAGER_ERR_IO = 9,
  JAGER_ERR_UNAVAILABLE = 10,
  JAGER_ERR_INTERNAL = 11,
} jager_status;

/* Message for the last failed call on this thread; "" after success. */
JAGER_API const char* jager_last_error(void);
JAGER_API const char* jager_status_name(jager_status status);
JAGER_API const char* jager_version(void);

/* Strings returned through char** out-parameters are owned by the caller. */
JAGER_API void jager_string_free(char* s);

/* ---- configuration ---- */

typedef struct jager_config jager_config;

/* path NULL: the file named by $JAGER_CONFIG, or built-in defaults. */
JAGER_API jager_status jager_config_load(const char* path, jager_config** out);
/* Overrides fields from a JSON object, e.g. {"ta_port": 0}. */
JAGER_API jager_status jager_config_merge(jager_config* config, const char* json);
JAGER_API jager_status jager_config_to_json(const jager_config* config, char** json_out);
JAGER_API void jager_config_free(jager_config* config);

/* ---- keys ---- */

#define JAGER_ROLE_LABEL_MANAGER 1u
#define JAGER_ROLE_GROUP_MANAGER 2u
#define JAGER_ROLE_TRACE_AUTHORITY 4u
#define JAGER_ROLE_RECORD_STORE 8u
#define JAGER_ROLE_ALL 15u

/* Adds the requested key groups to the key file at `path`, creating it if
 * needed. Existing groups are kept. */
JAGER_API jager_status jager_keygen(const char* path, unsigned roles);
/* JSON summary of which key groups and members a key file holds. */
JAGER_API jager_status jager_keyfile_describe(const char* path, char** json_out);

/* ---- traceback authority service ---- */

typedef struct jager_ta_server jager_ta_server;

/* Loads TA keys from the config's key_file and binds listen_host:ta_port
 * (0 picks a free port). */
JAGER_API jager_status jager_ta_server_create(const jager_config* config, jager_ta_server** out);
JAGER_API int jager_ta_server_port(const jager_ta_server* server);
/* Serves on a background thread. */
JAGER_API jager_status jager_ta_server_start(jager_ta_server* server);
JAGER_API void jager_ta_server_stop(jager_ta_server* server);
/* Writes the group state (members, revocations, request keys) back to the
 * key file. */
JAGER_API jager_status jager_ta_server_save(jager_ta_server* server);
JAGER_API jager_status jager_ta_server_revoke(jager_ta_server* server, uint64_t carrier);
JAGER_API void jager_ta_server_free(jager_ta_server* server);

/* ---- record store service ---- */

typedef struct jager_rs_server jager_rs_server;

/* Fetches the group key from the TA at ta_url, uses the record-store key
 * group of key_file (generated and saved when absent) and opens store_path
 * (in-memory when empty). Binds listen_host:rs_port. */
JAGER_API jager_status jager_rs_server_create(const jager_config* config, jager_rs_server** out);
JAGER_API int jager_rs_server_port(const jager_rs_server* server);
JAGER_API jager_status jager_rs_server_start(jager_rs_server* server);
/* Re-reads the group key from the TA; *changed is set when it differs. */
JAGER_API jager_status jager_rs_server_refresh(jager_rs_server* server, int* changed);
JAGER_API uint64_t jager_rs_server_record_count(const jager_rs_server* server);
JAGER_API void jager_rs_server_stop(jager_rs_server* server);
JAGER_API void jager_rs_server_free(jager_rs_server* server);

/* ---- carrier client ---- */

typedef struct jager_client jager_client;

JAGER_API jager_status jager_client_create(const jager_config* config, uint64_t carrier, jager_client** out);
/* Uses the member credential stored for this carrier in `credential_path`;
 * when there is none, joins the group and stores the new credential. */
JAGER_API jager_status jager_client_enroll(jager_client* client, const char* credential_path);
/* *accepted is 1 when the record store kept the record. */
JAGER_API jager_status jager_client_contribute(jager_client* client, const char* src, const char* dst,
                                               uint64_t ts_ms, uint64_t prev, uint64_t next, int* accepted);
/* Contributes every row of a CDR CSV whose `cur` is this carrier. */
JAGER_API jager_status jager_client_contribute_csv(jager_client* client, const char* csv_path, size_t* accepted,
                                                   size_t* rejected);

#define JAGER_TRACE_OPEN 1u

/* Traces one call and returns the hops and validation report as JSON. With
 * JAGER_TRACE_OPEN the TA is asked to attribute any faulty hops. */
JAGER_API jager_status jager_client_trace(jager_client* client, const char* src, const char* dst, uint64_t ts_ms,
                                          unsigned flags, char** json_out);
JAGER_API void jager_client_free(jager_client* client);

/* ---- synthetic network ---- */

typedef struct jager_datagen_params {
  size_t carriers;
  size_t carrier_edges;    /* edges per arriving carrier */
  size_t subscribers;
  size_t subscriber_edges; /* edges per arriving subscriber */
  size_t calls;            /* 0: no CDRs */
  uint64_t seed;
  uint64_t start_ts_ms;
} jager_datagen_params;

JAGER_API void jager_datagen_defaults(jager_datagen_params* params);
/* Writes carriers.csv, subscribers.csv and, when calls > 0, cdrs.csv and
 * ledger.json into out_dir. */
JAGER_API jager_status jager_datagen(const jager_datagen_params* params, const char* out_dir);

/* ---- evaluation ---- */

/* CSV: task,mean_ms,min_ms,max_ms,std_ms */
JAGER_API jager_status jager_bench(const char* key_file, size_t iterations, uint64_t seed, char** csv_out);

JAGER_API jager_status jager_bandwidth_bps(double records_per_s, double request_bits, double response_bits,
                                           double overhead_bytes, double batch, double* bps_out);

typedef struct jager_simulate_params {
  size_t carriers;
  size_t carrier_edges;
  const double* adoption; /* fractions in (0, 1] */
  size_t adoption_count;
  double robocaller_share;
  size_t calls;
  size_t seeds;
  uint64_t first_seed;
  const char* rank_key; /* "degree" or "strength" */
} jager_simulate_params;

/* CSV: adoption,robocaller_share,success_rate,seeds */
JAGER_API jager_status jager_simulate(const jager_simulate_params* params, char** csv_out);

/* CSV: rows,file_bytes,insert_ms,select_ms */
JAGER_API jager_status jager_storage_growth(const char* path, const size_t* sizes, size_t size_count, size_t probes,
                                            uint64_t seed, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif /* JAGER_JAGER_H_ */
