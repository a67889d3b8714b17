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

#include "protocol/keyfile.hpp"

#include <sys/stat.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "common/error.hpp"
#include "protocol/wire.hpp"

namespace jager {

using namespace crypto;
using wire::json;

namespace {

Scalar ScalarField(const json& j, const char* name) {
  return Scalar::FromBytes(FromBase64(wire::StringField(j, name)));
}

BlsKeyPair PairFrom(const json& j, const char* sk, const char* vk) {
  BlsKeyPair kp = BlsKeyPair::FromSecret(ScalarField(j, sk));
  if (j.contains(vk) && !(wire::G1Field(j, vk) == kp.vk)) {
    Fail(ErrorCode::kMalformed, std::string(vk) + " does not match " + sk);
  }
  return kp;
}

}  // namespace

KeyFile KeyFile::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open key file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const json j = wire::Parse(ss.str());
  KeyFile kf;
  if (j.contains("oprf_sk")) {
    kf.oprf = OprfServerKey::FromSecret(ScalarField(j, "oprf_sk"));
    if (j.contains("oprf_pk") && !(wire::G2Field(j, "oprf_pk") == kf.oprf->pk)) {
      Fail(ErrorCode::kMalformed, "oprf_pk does not match oprf_sk");
    }
  }
  if (j.contains("sk_t")) kf.sig_t = PairFrom(j, "sk_t", "vk_t");
  if (j.contains("sk_r")) kf.sig_r = PairFrom(j, "sk_r", "vk_r");
  if (j.contains("sk_rs")) kf.rs = PairFrom(j, "sk_rs", "vk_rs");
  if (j.contains("gm_secret")) kf.gm = GroupManager::FromBytes(FromBase64(wire::StringField(j, "gm_secret")));
  if (j.contains("gpk")) kf.gpk = GroupPublicKey::FromBytes(FromBase64(wire::StringField(j, "gpk")));
  if (kf.gm) kf.gpk = kf.gm->public_key();
  if (j.contains("members")) {
    for (const auto& [id, blob] : wire::Field(j, "members").items()) {
      kf.members.emplace(std::stoull(id), MemberKey::FromBytes(FromBase64(blob.get<std::string>())));
    }
  }
  if (j.contains("request_keys")) {
    for (const auto& [id, blob] : wire::Field(j, "request_keys").items()) {
      kf.request_keys.emplace(std::stoull(id), G1::FromBytes(FromBase64(blob.get<std::string>())));
    }
  }
  return kf;
}

void KeyFile::Save(const std::string& path) const {
  json j = json::object();
  if (oprf) {
    j["oprf_sk"] = wire::B64(oprf->k);
    j["oprf_pk"] = wire::B64(oprf->pk);
  }
  if (sig_t) {
    j["sk_t"] = wire::B64(sig_t->sk);
    j["vk_t"] = wire::B64(sig_t->vk);
  }
  if (sig_r) {
    j["sk_r"] = wire::B64(sig_r->sk);
    j["vk_r"] = wire::B64(sig_r->vk);
  }
  if (rs) {
    j["sk_rs"] = wire::B64(rs->sk);
    j["vk_rs"] = wire::B64(rs->vk);
  }
  if (gm) j["gm_secret"] = wire::B64(*gm);
  if (gm || gpk) j["gpk"] = wire::B64(gm ? gm->public_key() : *gpk);
  json m = json::object();
  for (const auto& [id, key] : members) m[std::to_string(id)] = wire::B64(key);
  j["members"] = m;
  if (!request_keys.empty()) {
    json r = json::object();
    for (const auto& [id, vk] : request_keys) r[std::to_string(id)] = wire::B64(vk);
    j["request_keys"] = r;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) Fail(ErrorCode::kIo, "cannot write key file " + path);
    out << j.dump(2) << '\n';
    if (!out) Fail(ErrorCode::kIo, "cannot write key file " + path);
  }
  ::chmod(tmp.c_str(), 0600);
  if (std::rename(tmp.c_str(), path.c_str()) != 0) Fail(ErrorCode::kIo, "cannot replace key file " + path);
}

TaKeys KeyFile::ToTaKeys() const {
  if (!HasTaKeys()) {
    Fail(ErrorCode::kInvalidArgument, "key file lacks OPRF, trace authority or group manager keys");
  }
  return TaKeys{*oprf, *sig_t, *sig_r, *gm};
}

KeyFile KeyFile::FromTaKeys(const TaKeys& keys) {
  KeyFile kf;
  kf.oprf = keys.oprf;
  kf.sig_t = keys.sig_t;
  kf.sig_r = keys.sig_r;
  kf.gm = keys.gm;
  kf.gpk = keys.gm.public_key();
  return kf;
}

void GenerateKeys(KeyFile& file, unsigned roles, Rng& rng) {
  if ((roles & kKeygenLabelManager) && !file.oprf) file.oprf = OprfServerKey::Generate(rng);
  if ((roles & kKeygenTraceAuthority) && !file.sig_t) file.sig_t = BlsKeyPair::Generate(rng);
  if ((roles & kKeygenTraceAuthority) && !file.sig_r) file.sig_r = BlsKeyPair::Generate(rng);
  if ((roles & kKeygenGroupManager) && !file.gm) {
    file.gm = GroupManager::Generate(rng);
    file.gpk = file.gm->public_key();
  }
  if ((roles & kKeygenRecordStore) && !file.rs) file.rs = BlsKeyPair::Generate(rng);
}

Config Config::Load() {
  const char* path = std::getenv("JAGER_CONFIG");
  return path && *path ? FromFile(path) : Config{};
}

Config Config::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return Config{}.Merge(ss.str());
}

Config Config::Merge(const std::string& json_text) const {
  const json j = wire::Parse(json_text);
  if (!j.is_object()) Fail(ErrorCode::kMalformed, "config must be a JSON object");
  Config c = *this;
  try {
    c.ta_url = j.value("ta_url", c.ta_url);
    c.rs_url = j.value("rs_url", c.rs_url);
    c.listen_host = j.value("listen_host", c.listen_host);
    c.ta_port = j.value("ta_port", c.ta_port);
    c.rs_port = j.value("rs_port", c.rs_port);
    c.trace_limit = j.value("trace_limit", c.trace_limit);
    c.rs_trace_limit = j.value("rs_trace_limit", c.rs_trace_limit);
    c.window_ms = j.value("window_ms", c.window_ms);
    c.granularity_ms = j.value("granularity_ms", c.granularity_ms);
    c.t_max_ms = j.value("t_max_ms", c.t_max_ms);
    c.key_file = j.value("key_file", c.key_file);
    c.store_path = j.value("store_path", c.store_path);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kMalformed, std::string("bad config value: ") + e.what());
  }
  return c;
}

std::string Config::ToJson() const {
  return json{{"ta_url", ta_url},
              {"rs_url", rs_url},
              {"listen_host", listen_host},
              {"ta_port", ta_port},
              {"rs_port", rs_port},
              {"trace_limit", trace_limit},
              {"rs_trace_limit", rs_trace_limit},
              {"window_ms", window_ms},
              {"granularity_ms", granularity_ms},
              {"t_max_ms", t_max_ms},
              {"key_file", key_file},
              {"store_path", store_path}}
      .dump(2);
}

}  // namespace jager
