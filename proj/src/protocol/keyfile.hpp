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

#ifndef JAGER_PROTOCOL_KEYFILE_HPP_
#define JAGER_PROTOCOL_KEYFILE_HPP_

#include <map>
#include <optional>
#include <string>

#include "protocol/ta_service.hpp"

namespace jager {

// On-disk key material. Every group is optional so that the label manager,
// group manager and trace authority roles can be provisioned separately.
struct KeyFile {
  std::optional<crypto::OprfServerKey> oprf;
  std::optional<crypto::BlsKeyPair> sig_t;
  std::optional<crypto::BlsKeyPair> sig_r;
  std::optional<crypto::GroupManager> gm;
  std::optional<crypto::GroupPublicKey> gpk;
  std::optional<crypto::BlsKeyPair> rs;
  std::map<CarrierId, crypto::MemberKey> members;
  std::map<CarrierId, crypto::G1> request_keys;

  static KeyFile Load(const std::string& path);
  void Save(const std::string& path) const;

  bool HasTaKeys() const { return oprf && sig_t && sig_r && gm; }
  TaKeys ToTaKeys() const;
  static KeyFile FromTaKeys(const TaKeys& keys);
};

enum KeygenRole : unsigned {
  kKeygenLabelManager = 1u << 0,
  kKeygenGroupManager = 1u << 1,
  kKeygenTraceAuthority = 1u << 2,
  kKeygenRecordStore = 1u << 3,
  kKeygenAll = 0xfu,
};

// Fills in the requested key groups, keeping whatever is already present.
void GenerateKeys(KeyFile& file, unsigned roles, Rng& rng);

// Service addresses and limits, read from the JSON file named by the
// JAGER_CONFIG environment variable when set.
struct Config {
  std::string ta_url = "http://127.0.0.1:8700";
  std::string rs_url = "http://127.0.0.1:8701";
  std::string listen_host = "127.0.0.1";
  int ta_port = 8700;
  int rs_port = 8701;
  uint64_t trace_limit = 1000;
  uint64_t rs_trace_limit = 10000;
  uint64_t window_ms = kDayMs;
  uint64_t granularity_ms = 1000;
  uint64_t t_max_ms = 10000;
  std::string key_file = "jager_keys.json";
  std::string store_path;  // empty: in-memory record store

  static Config Load();
  static Config FromFile(const std::string& path);
  // Copy with the fields present in `json_text` replaced.
  Config Merge(const std::string& json_text) const;
  std::string ToJson() const;
};

}  // namespace jager

#endif  // JAGER_PROTOCOL_KEYFILE_HPP_
