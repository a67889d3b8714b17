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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "common/error.hpp"

namespace jager::bench {
namespace {

TEST(TaskStats, FromSamples) {
  const TaskStats s = TaskStats::FromSamples("t", {1.0, 2.0, 3.0, 6.0});
  EXPECT_DOUBLE_EQ(s.mean_ms, 3.0);
  EXPECT_DOUBLE_EQ(s.min_ms, 1.0);
  EXPECT_DOUBLE_EQ(s.max_ms, 6.0);
  EXPECT_DOUBLE_EQ(s.std_ms, std::sqrt((4.0 + 1.0 + 0.0 + 9.0) / 4.0));
}

TEST(BenchOps, SixTasksWithSaneStats) {
  Rng rng = Rng::Seeded(1);
  const TaKeys keys = TaKeys::Generate(rng);
  const BenchReport report = BenchOps(keys, 5, 2);
  ASSERT_EQ(report.tasks.size(), 6u);
  const std::vector<std::string> names{kTaskLabel, kTaskContribution, kTaskAuthorization,
                                       kTaskDecryption, kTaskOpen, kTaskGroupVerify};
  for (size_t i = 0; i < names.size(); ++i) {
    const TaskStats& t = report.tasks[i];
    EXPECT_EQ(t.task, names[i]);
    EXPECT_GT(t.mean_ms, 0);
    EXPECT_LE(t.min_ms, t.mean_ms);
    EXPECT_LE(t.mean_ms, t.max_ms);
    EXPECT_GE(t.std_ms, 0);
    EXPECT_EQ(report.Find(names[i]), &t);
  }
  EXPECT_EQ(report.Find("nope"), nullptr);

  std::istringstream csv(report.ToCsv());
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "task,mean_ms,min_ms,max_ms,std_ms");
  size_t rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 6u);
}

TEST(BenchOps, ZeroIterationsRejected) {
  Rng rng = Rng::Seeded(1);
  EXPECT_THROW(BenchOps(TaKeys::Generate(rng), 0, 1), Error);
}

TEST(Bandwidth, LabelPath) {
  EXPECT_DOUBLE_EQ(BandwidthBps(50'000, 256, 256, 0, 1), 25.6e6);
}

TEST(Bandwidth, SubmissionPath) {
  EXPECT_DOUBLE_EQ(BandwidthBps(50'000, 15'200, 0, 0, 1), 760e6);
}

TEST(Bandwidth, OverheadTerm) {
  EXPECT_DOUBLE_EQ(BandwidthBps(1, 512, 0, 64, 1), 512.0 * (1 + 1.0));
  EXPECT_DOUBLE_EQ(BandwidthBps(1, 512, 0, 64, 4), 512.0 * (1 + 0.25));
}

TEST(Bandwidth, LinearInRate) {
  for (double r : {1.0, 17.0, 50'000.0}) {
    EXPECT_DOUBLE_EQ(BandwidthBps(2 * r, 256, 256, 652, 3), 2 * BandwidthBps(r, 256, 256, 652, 3));
  }
}

TEST(Bandwidth, BatchingApproachesPayloadRate) {
  double last = BandwidthBps(50'000, 256, 256, 652, 1);
  for (double b : {2.0, 10.0, 100.0, 1e4, 1e8}) {
    const double bw = BandwidthBps(50'000, 256, 256, 652, b);
    EXPECT_LT(bw, last);
    EXPECT_GT(bw, 25.6e6);
    last = bw;
  }
  EXPECT_NEAR(last, 25.6e6, 10.0);
  EXPECT_THROW(BandwidthBps(1, 256, 256, 0, 0.5), Error);
}

TEST(RankCarriers, OrdersBySizeThenId) {
  netgen::CarrierGraph g;
  g.fitness.assign(4, 1.0);
  g.adj = {{{1, 9}}, {{0, 9}, {2, 1}, {3, 1}}, {{1, 1}}, {{1, 1}}};
  EXPECT_EQ(RankCarriers(g, RankKey::kDegree), (std::vector<CarrierId>{2, 1, 3, 4}));
  EXPECT_EQ(RankCarriers(g, RankKey::kStrength), (std::vector<CarrierId>{2, 1, 3, 4}));
  g.adj = {{{1, 9}, {2, 1}}, {{0, 9}}, {{0, 1}, {3, 1}}, {{2, 1}}};
  EXPECT_EQ(RankCarriers(g, RankKey::kDegree), (std::vector<CarrierId>{1, 3, 2, 4}));
  EXPECT_EQ(RankCarriers(g, RankKey::kStrength), (std::vector<CarrierId>{1, 2, 3, 4}));
  EXPECT_EQ(RankKeyFromName("strength"), RankKey::kStrength);
  EXPECT_THROW(RankKeyFromName("mass"), Error);
}

TEST(SimulateDeployment, FullAdoptionTracesEverything) {
  netgen::CarrierNetworkParams p;
  p.carriers = 300;
  const auto g = netgen::GenCarrierNetwork(p, 1);
  EXPECT_EQ(SimulateDeployment(g, {1.0}, 0.1, 500, RankKey::kDegree, 2), std::vector<double>{1.0});
}

TEST(SimulateDeployment, MonotoneInAdoption) {
  netgen::CarrierNetworkParams p;
  p.carriers = 1000;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = netgen::GenCarrierNetwork(p, seed);
    for (RankKey key : {RankKey::kDegree, RankKey::kStrength}) {
      const auto rates = SimulateDeployment(g, {0.01, 0.02, 0.05, 0.1, 0.3, 0.6, 1.0}, 0.1, 400, key, seed);
      for (size_t i = 1; i < rates.size(); ++i) EXPECT_GE(rates[i], rates[i - 1]);
      for (double r : rates) {
        EXPECT_GE(r, 0.0);
        EXPECT_LE(r, 1.0);
      }
    }
  }
}

TEST(SimulateDeployment, RejectsBadFractions) {
  netgen::CarrierNetworkParams p;
  p.carriers = 50;
  const auto g = netgen::GenCarrierNetwork(p, 1);
  EXPECT_THROW(SimulateDeployment(g, {0.0}, 0.1, 10, RankKey::kDegree, 1), Error);
  EXPECT_THROW(SimulateDeployment(g, {0.5}, 1.5, 10, RankKey::kDegree, 1), Error);
}

TEST(SweepDeployment, PairedSeedsAndCsv) {
  netgen::CarrierNetworkParams p;
  p.carriers = 500;
  const auto results = SweepDeployment(p, {0.02, 0.1}, 0.1, 300, RankKey::kDegree, 3, 7);
  ASSERT_EQ(results.size(), 2u);
  for (size_t s = 0; s < 3; ++s) EXPECT_LE(results[0].per_seed[s], results[1].per_seed[s]);
  EXPECT_EQ(results[0].seeds, 3u);
  EXPECT_NE(DeploymentCsv(results).find("adoption,robocaller_share,success_rate,seeds\n"), std::string::npos);
  EXPECT_EQ(SweepDeployment(p, {0.02, 0.1}, 0.1, 300, RankKey::kDegree, 3, 7)[1].per_seed, results[1].per_seed);
}

TEST(StorageGrowth, GrowsLinearlyAndFindsRows) {
  const auto path = (std::filesystem::temp_directory_path() / "jager_growth_test.log").string();
  const auto points = MeasureStorageGrowth(path, {100, 400}, 20, 3);
  ASSERT_EQ(points.size(), 2u);
  EXPECT_EQ(points[0].rows, 100u);
  EXPECT_EQ(points[1].rows, 400u);
  EXPECT_EQ(points[1].file_bytes, 4 * points[0].file_bytes);
  EXPECT_GT(points[0].insert_ms, 0);
  EXPECT_GT(points[0].select_ms, 0);
  EXPECT_EQ(StorageGrowthCsv(points).substr(0, 34), "rows,file_bytes,insert_ms,select_m");
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace jager::bench
