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

#ifndef JAGER_BENCH_BENCH_HPP_
#define JAGER_BENCH_BENCH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "netgen/netgen.hpp"
#include "protocol/ta_service.hpp"

namespace jager::bench {

struct TaskStats {
  std::string task;
  double mean_ms = 0;
  double min_ms = 0;
  double max_ms = 0;
  double std_ms = 0;

  static TaskStats FromSamples(std::string task, const std::vector<double>& samples_ms);
};

inline constexpr const char* kBenchCsvHeader = "task,mean_ms,min_ms,max_ms,std_ms";

struct BenchReport {
  std::vector<TaskStats> tasks;

  const TaskStats* Find(const std::string& task) const;
  std::string ToCsv() const;
};

// Task names, in report order.
inline constexpr const char* kTaskLabel = "label_generation";
inline constexpr const char* kTaskContribution = "contribution";
inline constexpr const char* kTaskAuthorization = "authorization";
inline constexpr const char* kTaskDecryption = "decryption";
inline constexpr const char* kTaskOpen = "open";
inline constexpr const char* kTaskGroupVerify = "verify_group_signature";

// Times each protocol task `iterations` times on the calling thread.
//   label_generation        TA evaluation of one blinded label request
//   contribution            hop encryption plus group signature for one CDR
//   authorization           TA trace grant (rate limit check and signature)
//   decryption              one record decryption with the grant signature
//   open                    group manager open of one signature
//   verify_group_signature  RS check of one submission signature
BenchReport BenchOps(const TaKeys& keys, size_t iterations, uint64_t seed);

// Required link rate in bits/s for `r_rec` records per second, with the
// per-request overhead amortized over `batch` requests.
double BandwidthBps(double r_rec, double s_req_bits, double s_res_bits, double overhead_bytes, double batch);

enum class RankKey { kDegree, kStrength };

RankKey RankKeyFromName(const std::string& name);

struct DeploymentParams {
  double adoption = 0.1;
  double robocaller_share = 0.1;
  size_t calls = 1000;
  RankKey rank = RankKey::kDegree;
};

struct DeploymentSimResult {
  double adoption = 0;
  double robocaller_share = 0;
  double success_rate = 0;
  size_t seeds = 0;
  std::vector<double> per_seed;
};

// Carrier ids ordered from largest to smallest under `key`; ties by id.
std::vector<CarrierId> RankCarriers(const netgen::CarrierGraph& g, RankKey key);

// Robocalls start at a uniformly chosen carrier among the smallest
// `robocaller_share` and end at a carrier picked in proportion to degree.
// A call is traced when its originating carrier or that carrier's next hop
// is among the largest `adoption` carriers. Returns the traced fraction for
// each adoption level, all evaluated on the same sampled calls.
std::vector<double> SimulateDeployment(const netgen::CarrierGraph& g, const std::vector<double>& adoption,
                                       double robocaller_share, size_t calls, RankKey rank, uint64_t seed);

// One carrier network per seed (seed i uses `first_seed + i`), shared by
// every adoption level.
std::vector<DeploymentSimResult> SweepDeployment(const netgen::CarrierNetworkParams& network,
                                                 const std::vector<double>& adoption, double robocaller_share,
                                                 size_t calls, RankKey rank, size_t seeds, uint64_t first_seed);

std::string DeploymentCsv(const std::vector<DeploymentSimResult>& results);

struct StorageGrowthPoint {
  size_t rows = 0;
  uint64_t file_bytes = 0;
  double insert_ms = 0;
  double select_ms = 0;
};

// Grows an append log at `path` through each size in `sizes` and times
// `probes` single-row inserts and indexed selects at every step.
std::vector<StorageGrowthPoint> MeasureStorageGrowth(const std::string& path, const std::vector<size_t>& sizes,
                                                     size_t probes, uint64_t seed);

std::string StorageGrowthCsv(const std::vector<StorageGrowthPoint>& points);

}  // namespace jager::bench

#endif  // JAGER_BENCH_BENCH_HPP_
