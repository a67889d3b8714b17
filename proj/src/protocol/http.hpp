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

#ifndef JAGER_PROTOCOL_HTTP_HPP_
#define JAGER_PROTOCOL_HTTP_HPP_

#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "common/error.hpp"
#include "protocol/endpoints.hpp"

namespace httplib {
class Server;
class Client;
}  // namespace httplib

namespace jager {

int HttpStatusFor(ErrorCode code);

// JSON-over-HTTP front end for a service. Start() binds and serves on a
// background thread; Run() serves on the calling thread.
class HttpService {
 public:
  virtual ~HttpService();

  // Binds host:port (port 0 picks a free port) and returns the bound port.
  int Bind(const std::string& host, int port);
  void Start();
  void Run();
  void Stop();
  int port() const { return port_; }

 protected:
  HttpService();
  httplib::Server& server() { return *server_; }

 private:
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = -1;
};

// POST /join /label /authorize /decrypt-auth /open, GET /params
class TaHttpService : public HttpService {
 public:
  explicit TaHttpService(TaService& ta);
};

// POST /contribute /retrieve, GET /params
class RsHttpService : public HttpService {
 public:
  explicit RsHttpService(RecordStore& rs);
};

// Client side. Safe to share between threads; requests are serialized on
// one keep-alive connection.
class HttpTa : public TaEndpoint {
 public:
  explicit HttpTa(const std::string& base_url);
  ~HttpTa() override;

  PublicParams Params() override;
  crypto::MemberKey Join(CarrierId carrier, const std::optional<crypto::G1>& request_vk) override;
  crypto::G1 EvaluateLabel(CarrierId carrier, const crypto::G1& blinded) override;
  crypto::BlsSignature AuthorizeTrace(CarrierId carrier, const Digest& idx,
                                      const std::optional<RequestAuth>& auth) override;
  crypto::BlsSignature AuthorizeDecrypt(CarrierId carrier, const Digest& label,
                                        const std::optional<RequestAuth>& auth) override;
  std::string Open(const OpenBundle& bundle) override;

 private:
  std::mutex mu_;
  std::unique_ptr<httplib::Client> client_;
};

class HttpRs : public RsEndpoint {
 public:
  explicit HttpRs(const std::string& base_url);
  ~HttpRs() override;

  RsParams Params() override;
  ContributeStatus Contribute(const Record& submission) override;
  RecordSet Retrieve(CarrierId carrier, const Digest& idx, const crypto::BlsSignature& sigma_r) override;

 private:
  std::mutex mu_;
  std::unique_ptr<httplib::Client> client_;
};

}  // namespace jager

#endif  // JAGER_PROTOCOL_HTTP_HPP_
