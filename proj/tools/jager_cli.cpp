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

#include <jager/jager.h>

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <string>
#include <thread>
#include <vector>

namespace {

std::atomic<bool> stop_requested{false};

void OnSignal(int) { stop_requested = true; }

void InstallSignalHandlers() {
  struct sigaction sa {};
  sa.sa_handler = OnSignal;
  sigemptyset(&sa.sa_mask);
  sigaction(SIGINT, &sa, nullptr);
  sigaction(SIGTERM, &sa, nullptr);
}

class CliError : public std::runtime_error {
 public:
  explicit CliError(const std::string& what) : std::runtime_error(what) {}
};

void Check(jager_status status, const std::string& what) {
  if (status != JAGER_OK) {
    throw CliError(what + ": " + jager_status_name(status) + ": " + jager_last_error());
  }
}

struct StringDeleter {
  void operator()(char* s) const { jager_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct ConfigDeleter {
  void operator()(jager_config* c) const { jager_config_free(c); }
};
struct TaDeleter {
  void operator()(jager_ta_server* s) const { jager_ta_server_free(s); }
};
struct RsDeleter {
  void operator()(jager_rs_server* s) const { jager_rs_server_free(s); }
};
struct ClientDeleter {
  void operator()(jager_client* c) const { jager_client_free(c); }
};

std::unique_ptr<jager_config, ConfigDeleter> LoadConfig(const std::string& path, const std::string& overrides) {
  jager_config* raw = nullptr;
  Check(jager_config_load(path.empty() ? nullptr : path.c_str(), &raw), "loading config");
  std::unique_ptr<jager_config, ConfigDeleter> config(raw);
  if (!overrides.empty()) Check(jager_config_merge(config.get(), overrides.c_str()), "applying overrides");
  return config;
}

std::string ConfigString(const jager_config* config, const char* key) {
  char* raw = nullptr;
  Check(jager_config_to_json(config, &raw), "reading config");
  OwnedString json(raw);
  return nlohmann::json::parse(json.get()).at(key).get<std::string>();
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  out << text;
  if (!out) throw CliError("cannot write " + path);
}

bool Confirm(const std::string& question) {
  std::cout << question << " [y/N] " << std::flush;
  std::string answer;
  if (!std::getline(std::cin, answer)) return false;
  return answer == "y" || answer == "Y" || answer == "yes";
}

std::string Join(const std::vector<uint64_t>& ids, const char* sep) {
  std::string out;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(ids[i]);
  }
  return out;
}

void PrintTrace(const nlohmann::json& j) {
  const auto& call = j["call"];
  std::cout << "call " << call["src"].get<std::string>() << " -> " << call["dst"].get<std::string>() << " at "
            << call["ts"] << "\n";
  std::cout << "labels queried: " << j["labels_queried"] << "\n";
  if (j["status"] == "no records") {
    std::cout << "no records\n";
    return;
  }
  for (const auto& h : j["hops"]) {
    auto id = [](const nlohmann::json& v) {
      const uint64_t x = v.get<uint64_t>();
      return x == 0 ? std::string("O") : x == UINT64_MAX ? std::string("T") : std::to_string(x);
    };
    std::cout << "  hop (" << id(h["prev"]) << ", " << id(h["cur"]) << ", " << id(h["next"]) << ") epoch "
              << h["epoch"] << "\n";
  }
  const auto& r = j["report"];
  const auto& origin = r["origin"];
  if (!origin["selected"].is_null()) {
    std::cout << "origin: " << origin["selected"] << "\n";
  } else {
    std::cout << "origin: undetermined (candidates: " << Join(origin["candidates"].get<std::vector<uint64_t>>(), ", ")
              << ")\n";
  }
  if (!r["path"].empty()) {
    std::cout << "path: " << Join(r["path"].get<std::vector<uint64_t>>(), " -> ") << "\n";
  }
  for (const auto& p : r["candidate_paths"]) {
    std::cout << "candidate path: " << Join(p.get<std::vector<uint64_t>>(), " -> ") << "\n";
  }
  for (const char* key : {"origin", "transit", "terminator"}) {
    const auto ids = r["faulty"][key].get<std::vector<uint64_t>>();
    if (!ids.empty()) std::cout << "faulty " << key << ": " << Join(ids, ", ") << "\n";
  }
  std::cout << "connected: " << (r["connected"].get<bool>() ? "yes" : "no") << "\n";
  if (j.contains("accountability")) {
    const auto& a = j["accountability"];
    for (const auto& f : a["findings"]) {
      std::cout << "finding: entry " << f["entry"] << ": " << f["problem"].get<std::string>();
      if (!f["signer"].is_null()) std::cout << " (signed by " << f["signer"] << ")";
      std::cout << "\n";
    }
    const auto signers = a["faulty_signers"].get<std::vector<uint64_t>>();
    if (!signers.empty()) std::cout << "faulty signers: " << Join(signers, ", ") << "\n";
  }
}

// Accepts the artifact's single-dash role flags (-lm, -gm, -ta).
std::vector<std::string> NormalizeArgs(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  bool keygen = false;
  for (auto& a : args) {
    if (a == "keygen") keygen = true;
    if (keygen && (a == "-lm" || a == "-gm" || a == "-ta" || a == "-rs")) a = "-" + a;
  }
  std::reverse(args.begin(), args.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Call traceback services and tools"};
  app.require_subcommand(1);
  std::string config_path;
  std::string overrides;
  app.add_option("--config", config_path, "JSON config file (default: $JAGER_CONFIG)");
  app.add_option("--set", overrides, "JSON object overriding config fields");

  auto* keygen = app.add_subcommand("keygen", "Generate key material");
  std::string key_out;
  bool all = false, lm = false, gm = false, ta = false, rs = false;
  keygen->add_flag("-a,--all", all, "All key groups");
  keygen->add_flag("-l,--lm", lm, "Label manager (OPRF) key");
  keygen->add_flag("-g,--gm", gm, "Group manager key");
  keygen->add_flag("-t,--ta", ta, "Trace authority keys");
  keygen->add_flag("-r,--rs", rs, "Record store key");
  keygen->add_option("-o,--out", key_out, "Key file (default: config key_file)");

  auto* serve_ta = app.add_subcommand("serve-ta", "Run the traceback authority");
  int ta_port = -1;
  serve_ta->add_option("-p,--port", ta_port, "Listen port");

  auto* serve_rs = app.add_subcommand("serve-rs", "Run the record store");
  int rs_port = -1;
  double refresh_s = 5;
  serve_rs->add_option("-p,--port", rs_port, "Listen port");
  serve_rs->add_option("--refresh", refresh_s, "Seconds between group key refreshes")->check(CLI::PositiveNumber);

  auto* datagen = app.add_subcommand("datagen", "Generate a synthetic network and CDRs");
  jager_datagen_params dg;
  jager_datagen_defaults(&dg);
  bool emit_cdrs = false, yes = false;
  std::string data_dir = "data";
  datagen->add_option("-n,--carriers", dg.carriers, "Carriers")->capture_default_str();
  datagen->add_option("-s,--subscribers", dg.subscribers, "Subscribers")->capture_default_str();
  datagen->add_flag("-c,--cdrs", emit_cdrs, "Emit CDRs and the ground-truth ledger");
  datagen->add_option("--calls", dg.calls, "Calls when emitting CDRs")->capture_default_str();
  datagen->add_option("--seed", dg.seed, "Seed")->capture_default_str();
  datagen->add_option("--start-ts", dg.start_ts_ms, "First call time (ms)")->capture_default_str();
  datagen->add_option("-o,--out", data_dir, "Output directory")->capture_default_str();
  datagen->add_flag("-y,--yes", yes, "Overwrite without asking");

  uint64_t carrier = 0;
  std::string cred;
  auto add_carrier = [&](CLI::App* sub) {
    sub->add_option("--carrier", carrier, "Carrier id")->required();
    sub->add_option("--cred", cred, "Credential file (default: carrier_<id>.json)");
  };

  auto* join = app.add_subcommand("join", "Enroll a carrier with the authority");
  add_carrier(join);

  auto* contribute = app.add_subcommand("contribute", "Submit hop records");
  add_carrier(contribute);
  std::string csv;
  std::string src, dst;
  uint64_t ts = 0, prev = 0, next = UINT64_MAX;
  contribute->add_option("--csv", csv, "CDR CSV; rows for this carrier are submitted");
  contribute->add_option("-s,--src", src, "Calling number");
  contribute->add_option("-d,--dst", dst, "Called number");
  contribute->add_option("-t,--ts", ts, "Call time at this carrier (ms)");
  contribute->add_option("--prev", prev, "Previous carrier (0: origin)");
  contribute->add_option("--next", next, "Next carrier (default: terminating)");

  auto* trace = app.add_subcommand("trace", "Trace a call and print the reconstructed path");
  add_carrier(trace);
  bool open = false, raw_json = false;
  trace->add_option("-s,--src", src, "Calling number")->required();
  trace->add_option("-d,--dst", dst, "Called number")->required();
  trace->add_option("-t,--ts", ts, "Call time (ms)")->required();
  trace->add_flag("--open", open, "Ask the authority to attribute faulty hops");
  trace->add_flag("--json", raw_json, "Print the raw JSON result");

  auto* bench = app.add_subcommand("bench", "Protocol micro-benchmarks");
  size_t iterations = 1000;
  uint64_t bench_seed = 1;
  std::string bench_out;
  std::string growth_path;
  std::vector<size_t> growth_sizes{10'000, 100'000};
  size_t probes = 1000;
  bench->add_option("-n,--iterations", iterations, "Iterations per task (0 with --growth: growth only)")->capture_default_str();
  bench->add_option("--seed", bench_seed, "Seed")->capture_default_str();
  bench->add_option("-o,--out", bench_out, "CSV output (default: stdout)");
  bench->add_option("--growth", growth_path, "Also measure insert/select times on a log at this path");
  bench->add_option("--growth-sizes", growth_sizes, "Row counts for the growth measurement");
  bench->add_option("--probes", probes, "Timed operations per growth step")->capture_default_str();

  auto* bandwidth = app.add_subcommand("bandwidth", "Required link rate");
  double rate = 50'000, req_bits = 256, res_bits = 256, overhead = 0, batch = 1;
  bandwidth->add_option("--rate", rate, "Records per second")->capture_default_str();
  bandwidth->add_option("--req", req_bits, "Request bits")->capture_default_str();
  bandwidth->add_option("--res", res_bits, "Response bits")->capture_default_str();
  bandwidth->add_option("--overhead", overhead, "Overhead bytes per request")->capture_default_str();
  bandwidth->add_option("--batch", batch, "Requests per batch")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Partial deployment study");
  size_t sim_carriers = 7000, sim_calls = 1000, sim_seeds = 10;
  std::vector<double> adoption{0.02, 0.1};
  double robocallers = 0.1;
  uint64_t sim_seed = 1;
  std::string rank = "degree";
  std::string sim_out;
  simulate->add_option("-n,--carriers", sim_carriers, "Carriers")->capture_default_str();
  simulate->add_option("-a,--adoption", adoption, "Adopting fraction(s) of carriers");
  simulate->add_option("-r,--robocallers", robocallers, "Fraction of smallest carriers originating robocalls")
      ->capture_default_str();
  simulate->add_option("--calls", sim_calls, "Robocalls per seed")->capture_default_str();
  simulate->add_option("--seeds", sim_seeds, "Networks to average over")->capture_default_str();
  simulate->add_option("--seed", sim_seed, "First seed")->capture_default_str();
  simulate->add_option("--rank", rank, "Carrier size key")->check(CLI::IsMember({"degree", "strength"}))
      ->capture_default_str();
  simulate->add_option("-o,--out", sim_out, "CSV output (default: stdout)");

  std::vector<std::string> args = NormalizeArgs(argc, argv);
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    auto config = LoadConfig(config_path, overrides);
    auto credential = [&] { return cred.empty() ? "carrier_" + std::to_string(carrier) + ".json" : cred; };
    auto make_client = [&] {
      jager_client* raw = nullptr;
      Check(jager_client_create(config.get(), carrier, &raw), "connecting");
      std::unique_ptr<jager_client, ClientDeleter> client(raw);
      Check(jager_client_enroll(client.get(), credential().c_str()), "enrolling");
      return client;
    };

    if (*keygen) {
      unsigned roles = (all ? JAGER_ROLE_ALL : 0) | (lm ? JAGER_ROLE_LABEL_MANAGER : 0) |
                       (gm ? JAGER_ROLE_GROUP_MANAGER : 0) | (ta ? JAGER_ROLE_TRACE_AUTHORITY : 0) |
                       (rs ? JAGER_ROLE_RECORD_STORE : 0);
      if (roles == 0) throw CliError("choose key groups with -a, -lm, -gm, -ta or -rs");
      const std::string path = key_out.empty() ? ConfigString(config.get(), "key_file") : key_out;
      Check(jager_keygen(path.c_str(), roles), "keygen");
      char* raw = nullptr;
      Check(jager_keyfile_describe(path.c_str(), &raw), "reading keys");
      OwnedString summary(raw);
      std::cout << path << ": " << summary.get() << "\n";
    } else if (*serve_ta) {
      if (ta_port >= 0) Check(jager_config_merge(config.get(), ("{\"ta_port\":" + std::to_string(ta_port) + "}").c_str()), "port");
      jager_ta_server* raw = nullptr;
      Check(jager_ta_server_create(config.get(), &raw), "starting authority");
      std::unique_ptr<jager_ta_server, TaDeleter> server(raw);
      InstallSignalHandlers();
      Check(jager_ta_server_start(server.get()), "starting authority");
      std::cout << "authority listening on port " << jager_ta_server_port(server.get()) << std::endl;
      auto last_save = std::chrono::steady_clock::now();
      while (!stop_requested) {
        std::this_thread::sleep_for(std::chrono::milliseconds(200));
        if (std::chrono::steady_clock::now() - last_save > std::chrono::seconds(5)) {
          Check(jager_ta_server_save(server.get()), "saving group state");
          last_save = std::chrono::steady_clock::now();
        }
      }
      jager_ta_server_stop(server.get());
      Check(jager_ta_server_save(server.get()), "saving group state");
    } else if (*serve_rs) {
      if (rs_port >= 0) Check(jager_config_merge(config.get(), ("{\"rs_port\":" + std::to_string(rs_port) + "}").c_str()), "port");
      jager_rs_server* raw = nullptr;
      Check(jager_rs_server_create(config.get(), &raw), "starting record store");
      std::unique_ptr<jager_rs_server, RsDeleter> server(raw);
      InstallSignalHandlers();
      Check(jager_rs_server_start(server.get()), "starting record store");
      std::cout << "record store listening on port " << jager_rs_server_port(server.get()) << std::endl;
      auto last = std::chrono::steady_clock::now();
      while (!stop_requested) {
        std::this_thread::sleep_for(std::chrono::milliseconds(200));
        if (std::chrono::steady_clock::now() - last < std::chrono::duration<double>(refresh_s)) continue;
        last = std::chrono::steady_clock::now();
        int changed = 0;
        if (jager_rs_server_refresh(server.get(), &changed) != JAGER_OK) {
          std::cerr << "group key refresh failed: " << jager_last_error() << std::endl;
        } else if (changed) {
          std::cout << "group key updated" << std::endl;
        }
      }
      jager_rs_server_stop(server.get());
    } else if (*datagen) {
      if (!emit_cdrs) dg.calls = 0;
      bool exists = false;
      for (const char* f : {"carriers.csv", "subscribers.csv", "cdrs.csv", "ledger.json"}) {
        exists = exists || std::filesystem::exists(std::filesystem::path(data_dir) / f);
      }
      if (exists && !yes && !Confirm("overwrite existing data in " + data_dir + "?")) return 1;
      Check(jager_datagen(&dg, data_dir.c_str()), "datagen");
      std::cout << "wrote " << data_dir << "\n";
    } else if (*join) {
      make_client();
      std::cout << "carrier " << carrier << " enrolled; credential in " << credential() << "\n";
    } else if (*contribute) {
      auto client = make_client();
      if (!csv.empty()) {
        size_t accepted = 0, rejected = 0;
        Check(jager_client_contribute_csv(client.get(), csv.c_str(), &accepted, &rejected), "contribute");
        std::cout << "accepted " << accepted << ", rejected " << rejected << "\n";
        return rejected == 0 ? 0 : 1;
      }
      if (src.empty() || dst.empty()) throw CliError("contribute needs --csv or -s/-d/-t");
      int accepted = 0;
      Check(jager_client_contribute(client.get(), src.c_str(), dst.c_str(), ts, prev, next, &accepted),
            "contribute");
      std::cout << (accepted ? "accepted" : "rejected") << "\n";
      return accepted ? 0 : 1;
    } else if (*trace) {
      auto client = make_client();
      char* raw = nullptr;
      Check(jager_client_trace(client.get(), src.c_str(), dst.c_str(), ts, open ? JAGER_TRACE_OPEN : 0, &raw),
            "trace");
      OwnedString result(raw);
      if (raw_json) {
        std::cout << result.get() << "\n";
      } else {
        PrintTrace(nlohmann::json::parse(result.get()));
      }
    } else if (*bench) {
      const std::string keys = ConfigString(config.get(), "key_file");
      char* raw = nullptr;
      if (iterations > 0 || growth_path.empty()) {
        Check(jager_bench(keys.c_str(), iterations, bench_seed, &raw), "bench");
        OwnedString report(raw);
        WriteOutput(bench_out, report.get());
      }
      if (!growth_path.empty()) {
        Check(jager_storage_growth(growth_path.c_str(), growth_sizes.data(), growth_sizes.size(), probes,
                                   bench_seed, &raw),
              "storage growth");
        OwnedString growth(raw);
        std::cout << growth.get();
      }
    } else if (*bandwidth) {
      double bps = 0;
      Check(jager_bandwidth_bps(rate, req_bits, res_bits, overhead, batch, &bps), "bandwidth");
      std::printf("%.6f Mbps\n", bps / 1e6);
    } else if (*simulate) {
      jager_simulate_params sp{};
      sp.carriers = sim_carriers;
      sp.carrier_edges = 2;
      sp.adoption = adoption.data();
      sp.adoption_count = adoption.size();
      sp.robocaller_share = robocallers;
      sp.calls = sim_calls;
      sp.seeds = sim_seeds;
      sp.first_seed = sim_seed;
      sp.rank_key = rank.c_str();
      char* raw = nullptr;
      Check(jager_simulate(&sp, &raw), "simulate");
      OwnedString result(raw);
      WriteOutput(sim_out, result.get());
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
