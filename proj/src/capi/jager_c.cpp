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

#include "jager/jager.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <new>
#include <nlohmann/json.hpp>
#include <string>

#include "bench/bench.hpp"
#include "common/error.hpp"
#include "netgen/netgen.hpp"
#include "protocol/carrier_client.hpp"
#include "protocol/http.hpp"
#include "protocol/keyfile.hpp"
#include "protocol/record_store.hpp"
#include "protocol/storage.hpp"
#include "protocol/ta_service.hpp"

using jager::ErrorCode;
using jager::Fail;

struct jager_config {
  jager::Config config;
};

struct jager_ta_server {
  jager::Config config;
  std::unique_ptr<jager::TaService> ta;
  std::unique_ptr<jager::TaHttpService> http;
};

struct jager_rs_server {
  jager::Config config;
  std::unique_ptr<jager::HttpTa> ta;
  std::unique_ptr<jager::RecordStore> rs;
  std::unique_ptr<jager::RsHttpService> http;
};

struct jager_client {
  jager::Config config;
  std::unique_ptr<jager::HttpTa> ta;
  std::unique_ptr<jager::HttpRs> rs;
  std::unique_ptr<jager::CarrierClient> client;
  jager::Rng rng = jager::Rng::System();
};

namespace {

thread_local std::string last_error;

jager_status StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return JAGER_ERR_INVALID_ARGUMENT;
    case ErrorCode::kMalformed: return JAGER_ERR_MALFORMED;
    case ErrorCode::kUnauthenticated: return JAGER_ERR_UNAUTHENTICATED;
    case ErrorCode::kPermissionDenied: return JAGER_ERR_PERMISSION_DENIED;
    case ErrorCode::kRateLimited: return JAGER_ERR_RATE_LIMITED;
    case ErrorCode::kVerificationFailed: return JAGER_ERR_VERIFICATION_FAILED;
    case ErrorCode::kNotFound: return JAGER_ERR_NOT_FOUND;
    case ErrorCode::kAlreadyExists: return JAGER_ERR_ALREADY_EXISTS;
    case ErrorCode::kIo: return JAGER_ERR_IO;
    case ErrorCode::kUnavailable: return JAGER_ERR_UNAVAILABLE;
    case ErrorCode::kInternal: return JAGER_ERR_INTERNAL;
  }
  return JAGER_ERR_INTERNAL;
}

template <typename Fn>
jager_status Guard(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return JAGER_OK;
  } catch (const jager::Error& e) {
    last_error = e.what();
    return StatusFor(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return JAGER_ERR_INTERNAL;
}

void Require(bool ok, const char* what) {
  if (!ok) Fail(ErrorCode::kInvalidArgument, what);
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void Out(char** dst, const std::string& s) { *dst = Dup(s); }

jager::KeyFile LoadOrEmpty(const std::string& path) {
  return std::filesystem::exists(path) ? jager::KeyFile::Load(path) : jager::KeyFile{};
}

jager::CallDetails MakeCall(const char* src, const char* dst, uint64_t ts_ms) {
  Require(src && dst, "src and dst are required");
  return {jager::NormalizeNumber(src), jager::NormalizeNumber(dst), ts_ms};
}

}  // namespace

extern "C" {

const char* jager_last_error(void) { return last_error.c_str(); }

const char* jager_status_name(jager_status status) {
  switch (status) {
    case JAGER_OK: return "ok";
    case JAGER_ERR_INVALID_ARGUMENT: return jager::ErrorCodeName(ErrorCode::kInvalidArgument);
    case JAGER_ERR_MALFORMED: return jager::ErrorCodeName(ErrorCode::kMalformed);
    case JAGER_ERR_UNAUTHENTICATED: return jager::ErrorCodeName(ErrorCode::kUnauthenticated);
    case JAGER_ERR_PERMISSION_DENIED: return jager::ErrorCodeName(ErrorCode::kPermissionDenied);
    case JAGER_ERR_RATE_LIMITED: return jager::ErrorCodeName(ErrorCode::kRateLimited);
    case JAGER_ERR_VERIFICATION_FAILED: return jager::ErrorCodeName(ErrorCode::kVerificationFailed);
    case JAGER_ERR_NOT_FOUND: return jager::ErrorCodeName(ErrorCode::kNotFound);
    case JAGER_ERR_ALREADY_EXISTS: return jager::ErrorCodeName(ErrorCode::kAlreadyExists);
    case JAGER_ERR_IO: return jager::ErrorCodeName(ErrorCode::kIo);
    case JAGER_ERR_UNAVAILABLE: return jager::ErrorCodeName(ErrorCode::kUnavailable);
    case JAGER_ERR_INTERNAL: return jager::ErrorCodeName(ErrorCode::kInternal);
  }
  return "unknown";
}

const char* jager_version(void) { return "0.1.0"; }

void jager_string_free(char* s) { std::free(s); }

jager_status jager_config_load(const char* path, jager_config** out) {
  return Guard([&] {
    Require(out != nullptr, "out is required");
    auto c = std::make_unique<jager_config>();
    c->config = path ? jager::Config::FromFile(path) : jager::Config::Load();
    *out = c.release();
  });
}

jager_status jager_config_merge(jager_config* config, const char* json) {
  return Guard([&] {
    Require(config && json, "config and json are required");
    config->config = config->config.Merge(json);
  });
}

jager_status jager_config_to_json(const jager_config* config, char** json_out) {
  return Guard([&] {
    Require(config && json_out, "config and json_out are required");
    Out(json_out, config->config.ToJson());
  });
}

void jager_config_free(jager_config* config) { delete config; }

jager_status jager_keygen(const char* path, unsigned roles) {
  return Guard([&] {
    Require(path != nullptr, "path is required");
    Require(roles != 0 && (roles & ~JAGER_ROLE_ALL) == 0, "unknown role bits");
    jager::KeyFile kf = LoadOrEmpty(path);
    jager::Rng rng = jager::Rng::System();
    jager::GenerateKeys(kf, roles, rng);
    kf.Save(path);
  });
}

jager_status jager_keyfile_describe(const char* path, char** json_out) {
  return Guard([&] {
    Require(path && json_out, "path and json_out are required");
    const jager::KeyFile kf = jager::KeyFile::Load(path);
    nlohmann::json j;
    j["label_manager"] = kf.oprf.has_value();
    j["trace_authority"] = kf.sig_t.has_value() && kf.sig_r.has_value();
    j["group_manager"] = kf.gm.has_value();
    j["record_store"] = kf.rs.has_value();
    j["group_members"] = kf.gm ? kf.gm->Members() : std::vector<uint64_t>{};
    j["credentials"] = nlohmann::json::array();
    for (const auto& [id, key] : kf.members) j["credentials"].push_back(id);
    Out(json_out, j.dump());
  });
}

jager_status jager_ta_server_create(const jager_config* config, jager_ta_server** out) {
  return Guard([&] {
    Require(config && out, "config and out are required");
    auto s = std::make_unique<jager_ta_server>();
    s->config = config->config;
    const jager::KeyFile kf = jager::KeyFile::Load(s->config.key_file);
    if (!kf.HasTaKeys()) Fail(ErrorCode::kNotFound, "key file lacks traceback authority keys");
    jager::TaConfig tc;
    tc.trace_limit = s->config.trace_limit;
    tc.window_ms = s->config.window_ms;
    tc.granularity_ms = s->config.granularity_ms;
    s->ta = std::make_unique<jager::TaService>(kf.ToTaKeys(), tc);
    s->ta->RestoreRequestKeys(kf.request_keys);
    s->http = std::make_unique<jager::TaHttpService>(*s->ta);
    s->http->Bind(s->config.listen_host, s->config.ta_port);
    *out = s.release();
  });
}

int jager_ta_server_port(const jager_ta_server* server) { return server ? server->http->port() : -1; }

jager_status jager_ta_server_start(jager_ta_server* server) {
  return Guard([&] {
    Require(server != nullptr, "server is required");
    server->http->Start();
  });
}

void jager_ta_server_stop(jager_ta_server* server) {
  if (server) server->http->Stop();
}

jager_status jager_ta_server_save(jager_ta_server* server) {
  return Guard([&] {
    Require(server != nullptr, "server is required");
    jager::KeyFile kf = LoadOrEmpty(server->config.key_file);
    jager::TaKeys keys = server->ta->ExportKeys();
    kf.gpk = keys.gm.public_key();
    kf.gm = std::move(keys.gm);
    kf.request_keys = server->ta->request_keys();
    kf.Save(server->config.key_file);
  });
}

jager_status jager_ta_server_revoke(jager_ta_server* server, uint64_t carrier) {
  return Guard([&] {
    Require(server != nullptr, "server is required");
    server->ta->Revoke(carrier);
  });
}

void jager_ta_server_free(jager_ta_server* server) {
  if (server) server->http->Stop();
  delete server;
}

jager_status jager_rs_server_create(const jager_config* config, jager_rs_server** out) {
  return Guard([&] {
    Require(config && out, "config and out are required");
    auto s = std::make_unique<jager_rs_server>();
    s->config = config->config;
    s->ta = std::make_unique<jager::HttpTa>(s->config.ta_url);
    const jager::PublicParams params = s->ta->Params();
    jager::KeyFile kf = LoadOrEmpty(s->config.key_file);
    if (!kf.rs) {
      jager::Rng rng = jager::Rng::System();
      jager::GenerateKeys(kf, jager::kKeygenRecordStore, rng);
      kf.Save(s->config.key_file);
    }
    std::unique_ptr<jager::RecordStorage> storage;
    if (s->config.store_path.empty()) {
      storage = std::make_unique<jager::MemoryStorage>();
    } else {
      storage = jager::LogStorage::Open(s->config.store_path);
    }
    jager::RecordStoreConfig rc;
    rc.trace_limit = s->config.rs_trace_limit;
    rc.window_ms = s->config.window_ms;
    s->rs = std::make_unique<jager::RecordStore>(*kf.rs, params.gpk, params.vk_r, std::move(storage), rc);
    s->http = std::make_unique<jager::RsHttpService>(*s->rs);
    s->http->Bind(s->config.listen_host, s->config.rs_port);
    *out = s.release();
  });
}

int jager_rs_server_port(const jager_rs_server* server) { return server ? server->http->port() : -1; }

jager_status jager_rs_server_start(jager_rs_server* server) {
  return Guard([&] {
    Require(server != nullptr, "server is required");
    server->http->Start();
  });
}

jager_status jager_rs_server_refresh(jager_rs_server* server, int* changed) {
  return Guard([&] {
    Require(server != nullptr, "server is required");
    const jager::PublicParams params = server->ta->Params();
    const bool differs = params.gpk.ToBytes() != server->rs->group_key().ToBytes();
    if (differs) server->rs->SetGroupKey(params.gpk);
    if (changed) *changed = differs ? 1 : 0;
  });
}

uint64_t jager_rs_server_record_count(const jager_rs_server* server) {
  return server ? server->rs->storage().size() : 0;
}

void jager_rs_server_stop(jager_rs_server* server) {
  if (server) server->http->Stop();
}

void jager_rs_server_free(jager_rs_server* server) {
  if (server) server->http->Stop();
  delete server;
}

jager_status jager_client_create(const jager_config* config, uint64_t carrier, jager_client** out) {
  return Guard([&] {
    Require(config && out, "config and out are required");
    Require(!jager::IsSentinel(carrier), "reserved carrier id");
    auto c = std::make_unique<jager_client>();
    c->config = config->config;
    c->ta = std::make_unique<jager::HttpTa>(c->config.ta_url);
    c->rs = std::make_unique<jager::HttpRs>(c->config.rs_url);
    jager::ClientConfig cc;
    cc.granularity_ms = c->config.granularity_ms;
    cc.t_max_ms = c->config.t_max_ms;
    c->client = std::make_unique<jager::CarrierClient>(carrier, *c->ta, *c->rs, cc);
    *out = c.release();
  });
}

jager_status jager_client_enroll(jager_client* client, const char* credential_path) {
  return Guard([&] {
    Require(client != nullptr, "client is required");
    const jager::CarrierId id = client->client->id();
    if (!credential_path) {
      client->client->Join();
      return;
    }
    jager::KeyFile kf = LoadOrEmpty(credential_path);
    if (auto it = kf.members.find(id); it != kf.members.end()) {
      client->client->SetMemberKey(it->second);
      return;
    }
    kf.members[id] = client->client->Join();
    kf.Save(credential_path);
  });
}

jager_status jager_client_contribute(jager_client* client, const char* src, const char* dst, uint64_t ts_ms,
                                     uint64_t prev, uint64_t next, int* accepted) {
  return Guard([&] {
    Require(client != nullptr, "client is required");
    const jager::Hop hop{prev, client->client->id(), next};
    const auto status = client->client->ContributeRecord(MakeCall(src, dst, ts_ms), hop, client->rng);
    if (accepted) *accepted = status == jager::ContributeStatus::kAccepted ? 1 : 0;
  });
}

jager_status jager_client_contribute_csv(jager_client* client, const char* csv_path, size_t* accepted,
                                         size_t* rejected) {
  return Guard([&] {
    Require(client && csv_path, "client and csv_path are required");
    size_t ok = 0;
    size_t bad = 0;
    for (const auto& cdr : jager::ReadCdrCsv(csv_path)) {
      if (cdr.hop.cur != client->client->id()) continue;
      const auto status = client->client->ContributeRecord(cdr.call, cdr.hop, client->rng);
      (status == jager::ContributeStatus::kAccepted ? ok : bad)++;
    }
    if (accepted) *accepted = ok;
    if (rejected) *rejected = bad;
  });
}

jager_status jager_client_trace(jager_client* client, const char* src, const char* dst, uint64_t ts_ms,
                                unsigned flags, char** json_out) {
  return Guard([&] {
    Require(client && json_out, "client and json_out are required");
    const jager::TraceResult result = client->client->TraceCall(MakeCall(src, dst, ts_ms), client->rng);
    nlohmann::json j = nlohmann::json::parse(result.ToJson());
    if ((flags & JAGER_TRACE_OPEN) && !result.report.NoFaults()) {
      j["accountability"] = nlohmann::json::parse(client->ta->Open(client->client->BuildOpenBundle(result)));
    }
    Out(json_out, j.dump());
  });
}

void jager_client_free(jager_client* client) { delete client; }

void jager_datagen_defaults(jager_datagen_params* params) {
  if (!params) return;
  params->carriers = 7000;
  params->carrier_edges = 2;
  params->subscribers = 10000;
  params->subscriber_edges = 2;
  params->calls = 1000;
  params->seed = 1;
  params->start_ts_ms = jager::netgen::CdrParams{}.start_ts_ms;
}

jager_status jager_datagen(const jager_datagen_params* params, const char* out_dir) {
  return Guard([&] {
    Require(params && out_dir, "params and out_dir are required");
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    jager::netgen::CarrierNetworkParams cp;
    cp.carriers = params->carriers;
    cp.edges_per_arrival = params->carrier_edges;
    const auto carriers = jager::netgen::GenCarrierNetwork(cp, params->seed);
    jager::netgen::SubscriberParams sp;
    sp.subscribers = params->subscribers;
    sp.edges_per_arrival = params->subscriber_edges;
    const auto subs = jager::netgen::GenSubscribers(carriers, sp, params->seed + 1);
    jager::netgen::WriteCarrierCsv((dir / "carriers.csv").string(), carriers);
    jager::netgen::WriteSubscriberCsv((dir / "subscribers.csv").string(), subs);
    if (params->calls == 0) return;
    jager::netgen::CdrParams dp;
    dp.calls = params->calls;
    dp.start_ts_ms = params->start_ts_ms;
    const auto cdrs = jager::netgen::GenCdrs(subs, carriers, dp, params->seed + 2);
    jager::WriteCdrCsv((dir / "cdrs.csv").string(), cdrs.cdrs);
    std::ofstream ledger(dir / "ledger.json");
    ledger << cdrs.LedgerJson();
    if (!ledger) Fail(ErrorCode::kIo, "cannot write ledger.json");
  });
}

jager_status jager_bench(const char* key_file, size_t iterations, uint64_t seed, char** csv_out) {
  return Guard([&] {
    Require(key_file && csv_out, "key_file and csv_out are required");
    const jager::KeyFile kf = jager::KeyFile::Load(key_file);
    if (!kf.HasTaKeys()) Fail(ErrorCode::kNotFound, "key file lacks traceback authority keys");
    Out(csv_out, jager::bench::BenchOps(kf.ToTaKeys(), iterations, seed).ToCsv());
  });
}

jager_status jager_bandwidth_bps(double records_per_s, double request_bits, double response_bits,
                                 double overhead_bytes, double batch, double* bps_out) {
  return Guard([&] {
    Require(bps_out != nullptr, "bps_out is required");
    *bps_out = jager::bench::BandwidthBps(records_per_s, request_bits, response_bits, overhead_bytes, batch);
  });
}

jager_status jager_simulate(const jager_simulate_params* params, char** csv_out) {
  return Guard([&] {
    Require(params && csv_out, "params and csv_out are required");
    Require(params->adoption && params->adoption_count > 0, "adoption levels are required");
    jager::netgen::CarrierNetworkParams cp;
    cp.carriers = params->carriers;
    cp.edges_per_arrival = params->carrier_edges;
    const std::vector<double> adoption(params->adoption, params->adoption + params->adoption_count);
    const auto rank = jager::bench::RankKeyFromName(params->rank_key ? params->rank_key : "degree");
    const auto results = jager::bench::SweepDeployment(cp, adoption, params->robocaller_share, params->calls, rank,
                                                       params->seeds, params->first_seed);
    Out(csv_out, jager::bench::DeploymentCsv(results));
  });
}

jager_status jager_storage_growth(const char* path, const size_t* sizes, size_t size_count, size_t probes,
                                  uint64_t seed, char** csv_out) {
  return Guard([&] {
    Require(path && sizes && size_count > 0 && csv_out, "path, sizes and csv_out are required");
    const std::vector<size_t> steps(sizes, sizes + size_count);
    Out(csv_out, jager::bench::StorageGrowthCsv(jager::bench::MeasureStorageGrowth(path, steps, probes, seed)));
  });
}

}  // extern "C"
