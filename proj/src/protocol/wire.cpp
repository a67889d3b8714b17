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

#include "protocol/wire.hpp"

#include <algorithm>

#include "common/error.hpp"

namespace jager::wire {

using namespace crypto;

const json& Field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    Fail(ErrorCode::kMalformed, std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

std::string StringField(const json& j, const char* name) {
  const json& f = Field(j, name);
  if (!f.is_string()) Fail(ErrorCode::kMalformed, std::string("field '") + name + "' must be a string");
  return f.get<std::string>();
}

uint64_t U64Field(const json& j, const char* name) {
  const json& f = Field(j, name);
  if (!f.is_number_unsigned() && !(f.is_number_integer() && f.get<int64_t>() >= 0)) {
    Fail(ErrorCode::kMalformed, std::string("field '") + name + "' must be an unsigned integer");
  }
  return f.get<uint64_t>();
}

G1 G1Field(const json& j, const char* name) { return G1::FromBytes(FromBase64(StringField(j, name))); }
G2 G2Field(const json& j, const char* name) { return G2::FromBytes(FromBase64(StringField(j, name))); }
BlsSignature SigField(const json& j, const char* name) { return {G2Field(j, name)}; }
Digest DigestField(const json& j, const char* name) { return DigestFromHex(StringField(j, name)); }

json ToJson(const PublicParams& p) {
  return {{"oprf_pk", B64(p.oprf_pk)}, {"vk_t", B64(p.vk_t)}, {"vk_r", B64(p.vk_r)}, {"gpk", B64(p.gpk)}};
}

PublicParams ParamsFromJson(const json& j) {
  return PublicParams{G2Field(j, "oprf_pk"), G1Field(j, "vk_t"), G1Field(j, "vk_r"),
                      GroupPublicKey::FromBytes(FromBase64(StringField(j, "gpk")))};
}

json ToJson(const RsParams& p) { return {{"vk_rs", B64(p.vk_rs)}, {"vk_r", B64(p.vk_r)}}; }

RsParams RsParamsFromJson(const json& j) { return RsParams{G1Field(j, "vk_rs"), G1Field(j, "vk_r")}; }

json ToJson(const Record& r) {
  return {{"idx", ToHex(r.idx)}, {"ct1", B64(r.ct1)}, {"ct2", ToHex(r.ct2)}, {"gsig", B64(r.gsig)}};
}

Record RecordFromJson(const json& j) {
  Record r;
  r.idx = DigestField(j, "idx");
  r.ct1 = WesCiphertext::FromBytes(FromBase64(StringField(j, "ct1")));
  const Bytes ct2 = FromHex(StringField(j, "ct2"));
  if (ct2.size() != r.ct2.size()) Fail(ErrorCode::kMalformed, "ct2 must be 24 bytes");
  std::copy(ct2.begin(), ct2.end(), r.ct2.begin());
  r.gsig = GroupSignature::FromBytes(FromBase64(StringField(j, "gsig")));
  return r;
}

json ToJson(const RecordSet& s) {
  json records = json::array();
  for (const auto& sr : s.records) {
    json r = ToJson(sr.record);
    r["sigma_rs"] = B64(sr.sigma_rs);
    r["received_at"] = sr.record.received_at_ms;
    records.push_back(std::move(r));
  }
  return {{"idx", ToHex(s.idx)}, {"records", records}, {"set_sig", B64(s.set_sig)}};
}

RecordSet RecordSetFromJson(const json& j) {
  RecordSet s;
  s.idx = DigestField(j, "idx");
  s.set_sig = SigField(j, "set_sig");
  const json& records = Field(j, "records");
  if (!records.is_array()) Fail(ErrorCode::kMalformed, "records must be an array");
  for (const json& r : records) {
    SignedRecord sr;
    sr.record = RecordFromJson(r);
    sr.sigma_rs = SigField(r, "sigma_rs");
    if (r.contains("received_at")) sr.record.received_at_ms = U64Field(r, "received_at");
    s.records.push_back(std::move(sr));
  }
  return s;
}

json ToJson(const std::optional<RequestAuth>& auth) {
  if (!auth) return nullptr;
  return {{"time_ms", auth->time_ms}, {"sig", B64(auth->sig)}};
}

std::optional<RequestAuth> AuthFromJson(const json& j) {
  if (!j.is_object() || !j.contains("auth") || j["auth"].is_null()) return std::nullopt;
  const json& a = j["auth"];
  return RequestAuth{U64Field(a, "time_ms"), SigField(a, "sig")};
}

json ToJson(const CallDetails& c) { return {{"src", c.src}, {"dst", c.dst}, {"ts", c.ts}}; }

CallDetails CallFromJson(const json& j) {
  return CallDetails{NormalizeNumber(StringField(j, "src")), NormalizeNumber(StringField(j, "dst")),
                     U64Field(j, "ts")};
}

json ToJson(const OpenBundle& b) {
  json entries = json::array();
  for (const auto& e : b.entries) {
    entries.push_back({{"epoch", e.epoch},
                       {"label", ToHex(e.label)},
                       {"ct1", B64(e.ct1)},
                       {"ct2", ToHex(e.ct2)},
                       {"gsig", B64(e.gsig)},
                       {"hop", {e.hop.prev, e.hop.cur, e.hop.next}}});
  }
  return {{"call", ToJson(b.call)}, {"entries", entries}};
}

OpenBundle BundleFromJson(const json& j) {
  OpenBundle b;
  b.call = CallFromJson(Field(j, "call"));
  const json& entries = Field(j, "entries");
  if (!entries.is_array()) Fail(ErrorCode::kMalformed, "entries must be an array");
  for (const json& e : entries) {
    OpenEntry entry;
    entry.epoch = U64Field(e, "epoch");
    entry.label = DigestField(e, "label");
    entry.ct1 = WesCiphertext::FromBytes(FromBase64(StringField(e, "ct1")));
    const Bytes ct2 = FromHex(StringField(e, "ct2"));
    if (ct2.size() != entry.ct2.size()) Fail(ErrorCode::kMalformed, "ct2 must be 24 bytes");
    std::copy(ct2.begin(), ct2.end(), entry.ct2.begin());
    entry.gsig = GroupSignature::FromBytes(FromBase64(StringField(e, "gsig")));
    const json& hop = Field(e, "hop");
    if (!hop.is_array() || hop.size() != 3) Fail(ErrorCode::kMalformed, "hop must have 3 ids");
    entry.hop = Hop{hop[0].get<uint64_t>(), hop[1].get<uint64_t>(), hop[2].get<uint64_t>()};
    b.entries.push_back(std::move(entry));
  }
  return b;
}

json Parse(std::string_view body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded()) Fail(ErrorCode::kMalformed, "request body is not valid JSON");
  return j;
}

}  // namespace jager::wire
