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

#ifndef JAGER_PROTOCOL_WIRE_HPP_
#define JAGER_PROTOCOL_WIRE_HPP_

#include <nlohmann/json.hpp>

#include "protocol/endpoints.hpp"

// JSON encodings shared by the HTTP services, their clients and the key
// file. Group elements and signatures are base64; indices, labels and ct2
// are hex.
namespace jager::wire {

using nlohmann::json;

template <typename T>
std::string B64(const T& element) {
  const auto bytes = element.ToBytes();
  return ToBase64(ByteView(bytes.data(), bytes.size()));
}

// Reads a required field, throwing kMalformed when absent or mistyped.
const json& Field(const json& j, const char* name);
std::string StringField(const json& j, const char* name);
uint64_t U64Field(const json& j, const char* name);

crypto::G1 G1Field(const json& j, const char* name);
crypto::G2 G2Field(const json& j, const char* name);
crypto::BlsSignature SigField(const json& j, const char* name);
Digest DigestField(const json& j, const char* name);

json ToJson(const PublicParams& p);
PublicParams ParamsFromJson(const json& j);

json ToJson(const RsParams& p);
RsParams RsParamsFromJson(const json& j);

json ToJson(const Record& r);
Record RecordFromJson(const json& j);

json ToJson(const RecordSet& s);
RecordSet RecordSetFromJson(const json& j);

json ToJson(const std::optional<RequestAuth>& auth);
std::optional<RequestAuth> AuthFromJson(const json& j);

json ToJson(const CallDetails& c);
CallDetails CallFromJson(const json& j);

json ToJson(const OpenBundle& b);
OpenBundle BundleFromJson(const json& j);

// Parses a request body, throwing kMalformed on invalid JSON.
json Parse(std::string_view body);

}  // namespace jager::wire

#endif  // JAGER_PROTOCOL_WIRE_HPP_
