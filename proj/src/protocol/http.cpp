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

#include "protocol/http.hpp"

#include <httplib.h>

#include "common/error.hpp"
#include "protocol/wire.hpp"

namespace jager {

using namespace crypto;
using wire::json;

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kMalformed:
    case ErrorCode::kVerificationFailed: return 400;
    case ErrorCode::kUnauthenticated: return 401;
    case ErrorCode::kPermissionDenied: return 403;
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kAlreadyExists: return 409;
    case ErrorCode::kRateLimited: return 429;
    case ErrorCode::kUnavailable: return 503;
    case ErrorCode::kIo:
    case ErrorCode::kInternal: return 500;
  }
  return 500;
}

namespace {

using Handler = std::function<json(const json&)>;

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

httplib::Server::Handler Wrap(Handler handler) {
  return [handler = std::move(handler)](const httplib::Request& req, httplib::Response& res) {
    try {
      const json body = req.body.empty() ? json::object() : wire::Parse(req.body);
      Reply(res, 200, handler(body));
    } catch (const Error& e) {
      Reply(res, HttpStatusFor(e.code()), {{"error", ErrorCodeName(e.code())}, {"message", e.what()}});
    } catch (const json::exception& e) {
      Reply(res, 400, {{"error", ErrorCodeName(ErrorCode::kMalformed)}, {"message", e.what()}});
    } catch (const std::exception& e) {
      Reply(res, 500, {{"error", ErrorCodeName(ErrorCode::kInternal)}, {"message", e.what()}});
    }
  };
}

std::unique_ptr<httplib::Client> MakeClient(const std::string& base_url) {
  auto client = std::make_unique<httplib::Client>(base_url);
  if (!client->is_valid()) Fail(ErrorCode::kInvalidArgument, "bad service URL: " + base_url);
  client->set_keep_alive(true);
  client->set_tcp_nodelay(true);
  client->set_connection_timeout(5);
  client->set_read_timeout(60);
  return client;
}

json Call(std::mutex& mu, httplib::Client& client, const std::string& path, const json* body) {
  httplib::Result res;
  {
    std::lock_guard lock(mu);
    res = body ? client.Post(path, body->dump(), "application/json") : client.Get(path);
  }
  if (!res) {
    Fail(ErrorCode::kUnavailable, "request to " + path + " failed: " + httplib::to_string(res.error()));
  }
  json reply = json::parse(res->body, nullptr, false);
  if (res->status != 200) {
    if (!reply.is_discarded() && reply.contains("error")) {
      Fail(ErrorCodeFromName(reply.value("error", "")), reply.value("message", path));
    }
    Fail(ErrorCode::kUnavailable, path + " returned HTTP " + std::to_string(res->status));
  }
  if (reply.is_discarded()) Fail(ErrorCode::kMalformed, path + " returned invalid JSON");
  return reply;
}

constexpr size_t kWorkerThreads = 64;

CarrierId CarrierField(const json& j) { return wire::U64Field(j, "carrier_id"); }

}  // namespace

HttpService::HttpService() : server_(std::make_unique<httplib::Server>()) {
  server_->new_task_queue = [] { return new httplib::ThreadPool(kWorkerThreads); };
  server_->set_keep_alive_timeout(1);
  server_->set_keep_alive_max_count(1000);
  server_->set_tcp_nodelay(true);
}

HttpService::~HttpService() { Stop(); }

int HttpService::Bind(const std::string& host, int port) {
  port_ = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (port_ < 0) Fail(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  return port_;
}

void HttpService::Start() {
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

void HttpService::Run() { server_->listen_after_bind(); }

void HttpService::Stop() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

TaHttpService::TaHttpService(TaService& ta) {
  auto& s = server();
  s.Get("/params", Wrap([&ta](const json&) { return wire::ToJson(ta.params()); }));
  s.Post("/join", Wrap([&ta](const json& j) {
    std::optional<G1> request_vk;
    if (j.contains("request_vk") && !j["request_vk"].is_null()) request_vk = wire::G1Field(j, "request_vk");
    const MemberKey key = ta.HandleJoin(CarrierField(j), request_vk);
    return json{{"member_key", wire::B64(key)}, {"gpk", wire::B64(ta.params().gpk)}};
  }));
  s.Post("/label", Wrap([&ta](const json& j) {
    const G1 out = ta.HandleLabelRequest(CarrierField(j), wire::G1Field(j, "blinded"));
    return json{{"evaluated", wire::B64(out)}};
  }));
  s.Post("/authorize", Wrap([&ta](const json& j) {
    const auto sig = ta.HandleTraceAuthorization(CarrierField(j), wire::DigestField(j, "idx"),
                                                 wire::AuthFromJson(j));
    return json{{"sigma_r", wire::B64(sig)}};
  }));
  s.Post("/decrypt-auth", Wrap([&ta](const json& j) {
    const auto sig = ta.HandleDecryptAuthorization(CarrierField(j), wire::DigestField(j, "label"),
                                                   wire::AuthFromJson(j));
    return json{{"sigma_t", wire::B64(sig)}};
  }));
  s.Post("/open", Wrap([&ta](const json& j) {
    return json::parse(ta.HandleOpenRequest(wire::BundleFromJson(wire::Field(j, "bundle"))).ToJson());
  }));
}

RsHttpService::RsHttpService(RecordStore& rs) {
  auto& s = server();
  s.Get("/params", Wrap([&rs](const json&) { return wire::ToJson(RsParams{rs.vk_rs(), rs.vk_r()}); }));
  s.Post("/contribute", Wrap([&rs](const json& j) {
    const auto status = rs.Contribute(wire::RecordFromJson(j));
    return json{{"status", status == ContributeStatus::kAccepted ? "accepted" : "rejected"}};
  }));
  s.Post("/retrieve", Wrap([&rs](const json& j) {
    return wire::ToJson(
        rs.Retrieve(CarrierField(j), wire::DigestField(j, "idx"), wire::SigField(j, "sigma_r")));
  }));
}

HttpTa::HttpTa(const std::string& base_url) : client_(MakeClient(base_url)) {}
HttpTa::~HttpTa() = default;

PublicParams HttpTa::Params() { return wire::ParamsFromJson(Call(mu_, *client_, "/params", nullptr)); }

MemberKey HttpTa::Join(CarrierId carrier, const std::optional<G1>& request_vk) {
  json body{{"carrier_id", carrier}};
  if (request_vk) body["request_vk"] = wire::B64(*request_vk);
  const json reply = Call(mu_, *client_, "/join", &body);
  return MemberKey::FromBytes(FromBase64(wire::StringField(reply, "member_key")));
}

G1 HttpTa::EvaluateLabel(CarrierId carrier, const G1& blinded) {
  const json body{{"carrier_id", carrier}, {"blinded", wire::B64(blinded)}};
  return wire::G1Field(Call(mu_, *client_, "/label", &body), "evaluated");
}

BlsSignature HttpTa::AuthorizeTrace(CarrierId carrier, const Digest& idx,
                                    const std::optional<RequestAuth>& auth) {
  const json body{{"carrier_id", carrier}, {"idx", ToHex(idx)}, {"auth", wire::ToJson(auth)}};
  return wire::SigField(Call(mu_, *client_, "/authorize", &body), "sigma_r");
}

BlsSignature HttpTa::AuthorizeDecrypt(CarrierId carrier, const Digest& label,
                                      const std::optional<RequestAuth>& auth) {
  const json body{{"carrier_id", carrier}, {"label", ToHex(label)}, {"auth", wire::ToJson(auth)}};
  return wire::SigField(Call(mu_, *client_, "/decrypt-auth", &body), "sigma_t");
}

std::string HttpTa::Open(const OpenBundle& bundle) {
  const json body{{"bundle", wire::ToJson(bundle)}};
  return Call(mu_, *client_, "/open", &body).dump();
}

HttpRs::HttpRs(const std::string& base_url) : client_(MakeClient(base_url)) {}
HttpRs::~HttpRs() = default;

RsParams HttpRs::Params() { return wire::RsParamsFromJson(Call(mu_, *client_, "/params", nullptr)); }

ContributeStatus HttpRs::Contribute(const Record& submission) {
  const json body = wire::ToJson(submission);
  const json reply = Call(mu_, *client_, "/contribute", &body);
  return wire::StringField(reply, "status") == "accepted" ? ContributeStatus::kAccepted
                                                          : ContributeStatus::kRejected;
}

RecordSet HttpRs::Retrieve(CarrierId carrier, const Digest& idx, const BlsSignature& sigma_r) {
  const json body{{"carrier_id", carrier}, {"idx", ToHex(idx)}, {"sigma_r", wire::B64(sigma_r)}};
  return wire::RecordSetFromJson(Call(mu_, *client_, "/retrieve", &body));
}

}  // namespace jager
