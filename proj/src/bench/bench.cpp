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

#include "bench/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "common/error.hpp"
#include "protocol/carrier_client.hpp"
#include "protocol/record_store.hpp"
#include "protocol/storage.hpp"

namespace jager::bench {

namespace {

using SteadyClock = std::chrono::steady_clock;

template <typename Fn>
std::vector<double> Time(size_t iterations, Fn&& fn) {
  std::vector<double> samples;
  samples.reserve(iterations);
  for (size_t i = 0; i < iterations; ++i) {
    const auto start = SteadyClock::now();
    fn(i);
    samples.push_back(std::chrono::duration<double, std::milli>(SteadyClock::now() - start).count());
  }
  return samples;
}

std::string FormatDouble(double v) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << v;
  return out.str();
}

}  // namespace

TaskStats TaskStats::FromSamples(std::string task, const std::vector<double>& samples) {
  TaskStats s;
  s.task = std::move(task);
  if (samples.empty()) return s;
  const double n = static_cast<double>(samples.size());
  s.mean_ms = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  s.min_ms = *lo;
  s.max_ms = *hi;
  double var = 0;
  for (double x : samples) var += (x - s.mean_ms) * (x - s.mean_ms);
  s.std_ms = std::sqrt(var / n);
  return s;
}

const TaskStats* BenchReport::Find(const std::string& task) const {
  for (const auto& t : tasks) {
    if (t.task == task) return &t;
  }
  return nullptr;
}

std::string BenchReport::ToCsv() const {
  std::string out = std::string(kBenchCsvHeader) + "\n";
  for (const auto& t : tasks) {
    out += t.task + "," + FormatDouble(t.mean_ms) + "," + FormatDouble(t.min_ms) + "," + FormatDouble(t.max_ms) +
           "," + FormatDouble(t.std_ms) + "\n";
  }
  return out;
}

BenchReport BenchOps(const TaKeys& keys, size_t iterations, uint64_t seed) {
  if (iterations == 0) Fail(ErrorCode::kInvalidArgument, "iterations must be positive");
  Rng rng = Rng::Seeded(seed);
  TaConfig ta_config;
  ta_config.trace_limit = iterations + 1;
  TaService ta(keys, ta_config);
  auto rs = RecordStore::Setup(ta.params().gpk, ta.params().vk_r, rng, std::make_unique<MemoryStorage>());
  InProcessTa ta_ep(ta);
  InProcessRs rs_ep(*rs);
  constexpr CarrierId kCarrier = 1;
  CarrierClient client(kCarrier, ta_ep, rs_ep);
  client.Join();
  const crypto::GroupManager gm = ta.ExportKeys().gm;
  const crypto::GroupPublicKey gpk = ta.params().gpk;

  std::vector<CallDetails> calls;
  std::vector<crypto::BlindedRequest> blinded;
  for (size_t i = 0; i < iterations; ++i) {
    calls.push_back({"2025550100", "3035550199", 1'700'000'000'000 + i * 1000});
    blinded.push_back(crypto::Blind(EncodeCallDetails(calls[i], EpochOf(calls[i].ts, 1000)), rng));
  }
  const Hop hop{kOriginSentinel, kCarrier, 2};

  BenchReport report;
  report.tasks.push_back(TaskStats::FromSamples(
      kTaskLabel, Time(iterations, [&](size_t i) { ta.HandleLabelRequest(kCarrier, blinded[i].blinded); })));

  std::vector<Digest> labels;
  for (size_t i = 0; i < iterations; ++i) {
    labels.push_back(crypto::DirectPrf(keys.oprf, EncodeCallDetails(calls[i], EpochOf(calls[i].ts, 1000))));
  }
  std::vector<Record> records(iterations);
  report.tasks.push_back(TaskStats::FromSamples(kTaskContribution, Time(iterations, [&](size_t i) {
    records[i] = client.SealRecord(calls[i], EpochOf(calls[i].ts, 1000), labels[i], hop, rng);
  })));

  std::vector<crypto::BlsSignature> grants(iterations);
  report.tasks.push_back(TaskStats::FromSamples(kTaskAuthorization, Time(iterations, [&](size_t i) {
    grants[i] = ta.HandleTraceAuthorization(kCarrier, records[i].idx);
  })));

  std::vector<crypto::BlsSignature> sigma_t;
  for (size_t i = 0; i < iterations; ++i) sigma_t.push_back(crypto::BlsSign(keys.sig_t.sk, labels[i]));
  size_t mismatches = 0;
  report.tasks.push_back(TaskStats::FromSamples(kTaskDecryption, Time(iterations, [&](size_t i) {
    const auto key = crypto::WesDecrypt(sigma_t[i], records[i].ct1);
    mismatches += UnmaskHop(EncodeCallDetails(calls[i], EpochOf(calls[i].ts, 1000)), key, records[i].ct2) != hop;
  })));

  report.tasks.push_back(TaskStats::FromSamples(kTaskOpen, Time(iterations, [&](size_t i) {
    mismatches += gm.Open(records[i].gsig) != kCarrier;
  })));

  std::vector<Bytes> payloads;
  for (const auto& r : records) payloads.push_back(r.SignedPayload());
  report.tasks.push_back(TaskStats::FromSamples(kTaskGroupVerify, Time(iterations, [&](size_t i) {
    mismatches += !crypto::GroupVerify(gpk, payloads[i], records[i].gsig);
  })));

  if (mismatches != 0) Fail(ErrorCode::kInternal, "benchmark round trip produced wrong results");
  return report;
}

double BandwidthBps(double r_rec, double s_req_bits, double s_res_bits, double overhead_bytes, double batch) {
  if (!(batch >= 1)) Fail(ErrorCode::kInvalidArgument, "batch must be at least 1");
  const double payload = s_req_bits + s_res_bits;
  if (!(payload > 0)) Fail(ErrorCode::kInvalidArgument, "payload size must be positive");
  const double overhead = (overhead_bytes * 8 / payload) / batch;
  return r_rec * payload * (1 + overhead);
}

RankKey RankKeyFromName(const std::string& name) {
  if (name == "degree") return RankKey::kDegree;
  if (name == "strength") return RankKey::kStrength;
  Fail(ErrorCode::kInvalidArgument, "unknown rank key: " + name);
}

std::vector<CarrierId> RankCarriers(const netgen::CarrierGraph& g, RankKey key) {
  std::vector<uint64_t> size(g.size());
  for (size_t i = 0; i < g.size(); ++i) size[i] = key == RankKey::kDegree ? g.Degree(i) : g.Strength(i);
  std::vector<size_t> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return size[a] != size[b] ? size[a] > size[b] : a < b; });
  std::vector<CarrierId> ids;
  for (size_t i : order) ids.push_back(netgen::CarrierGraph::IdOf(i));
  return ids;
}

std::vector<double> SimulateDeployment(const netgen::CarrierGraph& g, const std::vector<double>& adoption,
                                       double robocaller_share, size_t calls, RankKey rank, uint64_t seed) {
  if (!(robocaller_share > 0 && robocaller_share <= 1)) {
    Fail(ErrorCode::kInvalidArgument, "robocaller share must lie in (0, 1]");
  }
  for (double a : adoption) {
    if (!(a > 0 && a <= 1)) Fail(ErrorCode::kInvalidArgument, "adoption must lie in (0, 1]");
  }
  if (calls == 0) Fail(ErrorCode::kInvalidArgument, "calls must be positive");
  const size_t n = g.size();
  std::vector<size_t> order;
  for (CarrierId id : RankCarriers(g, rank)) order.push_back(netgen::CarrierGraph::IndexOf(id));
  const size_t small_count = std::max<size_t>(1, static_cast<size_t>(robocaller_share * static_cast<double>(n)));
  const std::vector<size_t> small(order.end() - static_cast<std::ptrdiff_t>(small_count), order.end());

  std::vector<double> degrees(n);
  for (size_t i = 0; i < n; ++i) degrees[i] = static_cast<double>(g.Degree(i));
  std::mt19937_64 eng(seed);
  std::uniform_int_distribution<size_t> pick_small(0, small.size() - 1);
  std::discrete_distribution<size_t> pick_dest(degrees.begin(), degrees.end());

  std::map<size_t, std::vector<uint64_t>> dist_cache;
  std::vector<std::pair<size_t, std::optional<size_t>>> samples;
  for (size_t c = 0; c < calls; ++c) {
    const size_t o = small[pick_small(eng)];
    const size_t t = pick_dest(eng);
    if (o == t) {
      samples.emplace_back(o, std::nullopt);
      continue;
    }
    auto it = dist_cache.find(t);
    if (it == dist_cache.end()) it = dist_cache.emplace(t, netgen::DistancesTo(g, t)).first;
    samples.emplace_back(o, netgen::NextHopToward(g, it->second, o));
  }

  std::vector<double> rates;
  for (double a : adoption) {
    const size_t adopters = std::max<size_t>(1, static_cast<size_t>(a * static_cast<double>(n)));
    std::vector<bool> adopted(n, false);
    for (size_t k = 0; k < adopters && k < n; ++k) adopted[order[k]] = true;
    size_t traced = 0;
    for (const auto& [o, next] : samples) traced += adopted[o] || (next && adopted[*next]);
    rates.push_back(static_cast<double>(traced) / static_cast<double>(calls));
  }
  return rates;
}

std::vector<DeploymentSimResult> SweepDeployment(const netgen::CarrierNetworkParams& network,
                                                 const std::vector<double>& adoption, double robocaller_share,
                                                 size_t calls, RankKey rank, size_t seeds, uint64_t first_seed) {
  if (seeds == 0) Fail(ErrorCode::kInvalidArgument, "seeds must be positive");
  std::vector<DeploymentSimResult> results(adoption.size());
  for (size_t k = 0; k < adoption.size(); ++k) {
    results[k].adoption = adoption[k];
    results[k].robocaller_share = robocaller_share;
    results[k].seeds = seeds;
  }
  for (size_t s = 0; s < seeds; ++s) {
    const auto g = netgen::GenCarrierNetwork(network, first_seed + s);
    const auto rates = SimulateDeployment(g, adoption, robocaller_share, calls, rank, first_seed + s + 100);
    for (size_t k = 0; k < adoption.size(); ++k) results[k].per_seed.push_back(rates[k]);
  }
  for (auto& r : results) {
    r.success_rate = std::accumulate(r.per_seed.begin(), r.per_seed.end(), 0.0) / static_cast<double>(seeds);
  }
  return results;
}

std::string DeploymentCsv(const std::vector<DeploymentSimResult>& results) {
  std::string out = "adoption,robocaller_share,success_rate,seeds\n";
  for (const auto& r : results) {
    out += FormatDouble(r.adoption) + "," + FormatDouble(r.robocaller_share) + "," + FormatDouble(r.success_rate) +
           "," + std::to_string(r.seeds) + "\n";
  }
  return out;
}

std::vector<StorageGrowthPoint> MeasureStorageGrowth(const std::string& path, const std::vector<size_t>& sizes,
                                                     size_t probes, uint64_t seed) {
  if (probes == 0) Fail(ErrorCode::kInvalidArgument, "probes must be positive");
  if (!std::is_sorted(sizes.begin(), sizes.end())) Fail(ErrorCode::kInvalidArgument, "sizes must be ascending");
  Rng rng = Rng::Seeded(seed);
  std::filesystem::remove(path);
  auto storage = LogStorage::Open(path);

  TaKeys keys = TaKeys::Generate(rng);
  const crypto::MemberKey member = keys.gm.Join(1);
  Record tmpl;
  const Digest label{};
  Bytes message(crypto::kWesMessageBytes);
  tmpl.ct1 = crypto::WesEncrypt(keys.sig_t.vk, label, message, rng);
  tmpl.gsig = crypto::GroupSign(keys.gm.public_key(), member, tmpl.SignedPayload(), rng);

  auto next_record = [&] {
    Record r = tmpl;
    rng.Fill(r.idx);
    return r;
  };
  std::vector<Digest> inserted;
  std::vector<StorageGrowthPoint> points;
  for (size_t target : sizes) {
    while (storage->size() + probes < target) {
      Record r = next_record();
      storage->Append(r);
      if (inserted.size() < 4096) inserted.push_back(r.idx);
    }
    StorageGrowthPoint p;
    const auto insert = Time(probes, [&](size_t) {
      Record r = next_record();
      storage->Append(r);
      if (inserted.size() < 4096) inserted.push_back(r.idx);
    });
    std::uniform_int_distribution<size_t> pick(0, inserted.size() - 1);
    std::mt19937_64 eng(seed + target);
    size_t misses = 0;
    const auto select = Time(probes, [&](size_t) { misses += storage->Lookup(inserted[pick(eng)]).empty(); });
    if (misses != 0) Fail(ErrorCode::kInternal, "stored record not found");
    p.rows = storage->size();
    p.file_bytes = std::filesystem::file_size(path);
    p.insert_ms = TaskStats::FromSamples("", insert).mean_ms;
    p.select_ms = TaskStats::FromSamples("", select).mean_ms;
    points.push_back(p);
  }
  return points;
}

std::string StorageGrowthCsv(const std::vector<StorageGrowthPoint>& points) {
  std::string out = "rows,file_bytes,insert_ms,select_ms\n";
  for (const auto& p : points) {
    out += std::to_string(p.rows) + "," + std::to_string(p.file_bytes) + "," + FormatDouble(p.insert_ms) + "," +
           FormatDouble(p.select_ms) + "\n";
  }
  return out;
}

}  // namespace jager::bench
