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

#include "trace/validate.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "../support/validate_oracle.hpp"
#include "common/rng.hpp"

namespace jager::trace {
namespace {

constexpr CarrierId O = kOriginSentinel;
constexpr CarrierId T = kTermSentinel;

std::vector<Hop> HonestHops(const std::vector<CarrierId>& path) {
  std::vector<Hop> hops;
  for (size_t i = 0; i < path.size(); ++i) {
    hops.push_back({i == 0 ? O : path[i - 1], path[i], i + 1 == path.size() ? T : path[i + 1]});
  }
  return hops;
}

TEST(BuildMultigraph, SingleHop) {
  const std::vector<Hop> hops{{1, 2, 3}};
  const TraceGraph g = BuildMultigraph(hops);
  EXPECT_EQ(g.vertices, (std::set<CarrierId>{1, 2, 3}));
  EXPECT_EQ(g.edges, (std::vector<Edge>{{1, 2}, {2, 3}}));
}

TEST(BuildMultigraph, DuplicateHopDoublesEdges) {
  const std::vector<Hop> hops{{1, 2, 3}, {1, 2, 3}};
  const TraceGraph g = BuildMultigraph(hops);
  EXPECT_EQ(g.Multiplicity({1, 2}), 2u);
  EXPECT_EQ(g.Multiplicity({2, 3}), 2u);
}

TEST(BuildMultigraph, IdealPathDegreeProfile) {
  const TraceGraph g = BuildMultigraph(HonestHops({1, 2, 3, 4}));
  EXPECT_EQ(g.InDegree(1), 0u);
  EXPECT_EQ(g.OutDegree(1), 2u);
  EXPECT_EQ(g.InDegree(4), 2u);
  EXPECT_EQ(g.OutDegree(4), 0u);
  for (CarrierId v : {2, 3}) {
    EXPECT_EQ(g.InDegree(v), 2u);
    EXPECT_EQ(g.OutDegree(v), 2u);
  }
}

TEST(Validate, IdealPath) {
  const ValidationReport r = Validate(HonestHops({1, 2, 3, 4}));
  EXPECT_TRUE(r.NoFaults());
  EXPECT_EQ(r.origin, std::optional<CarrierId>(1));
  EXPECT_EQ(r.terminator, std::optional<CarrierId>(4));
  EXPECT_EQ(r.path, (std::vector<CarrierId>{1, 2, 3, 4}));
  EXPECT_EQ(r.transit, (std::set<CarrierId>{2, 3}));
}

// Hand-derived degrees: 1 in1/out3, 2 in1/out1, 3 in3/out1, 4 in0/out1,
// 6 in1/out0.
TEST(Validate, ConflictingOriginsFixture) {
  const std::vector<Hop> hops{{1, 2, 3}, {4, 1, 3}, {1, 3, 6}};
  const ValidationReport r = Validate(hops);
  EXPECT_EQ(r.origins, (std::set<CarrierId>{4}));
  EXPECT_EQ(r.terminators, (std::set<CarrierId>{6}));
  EXPECT_EQ(r.transit, (std::set<CarrierId>{1, 2, 3}));
  EXPECT_EQ(r.faulty_transit, (std::set<CarrierId>{1, 3}));
  EXPECT_TRUE(r.faulty_origin.empty());
  EXPECT_EQ(r.origin, std::optional<CarrierId>(4));
  EXPECT_EQ(r.path, (std::vector<CarrierId>{4, 1, 3, 6}));
}

TEST(Validate, OriginatorOnly) {
  const std::vector<Hop> hops{{O, 1, 2}};
  const ValidationReport r = Validate(hops);
  EXPECT_EQ(r.origin, std::optional<CarrierId>(1));
  EXPECT_EQ(r.terminator, std::optional<CarrierId>(2));
  EXPECT_TRUE(r.NoFaults());
  EXPECT_EQ(r.path, (std::vector<CarrierId>{1, 2}));
}

TEST(Validate, IsolatedOriginatorAdmitted) {
  const std::vector<Hop> hops{{O, 7, T}};
  const ValidationReport r = Validate(hops);
  EXPECT_EQ(r.origin, std::optional<CarrierId>(7));
  EXPECT_TRUE(r.NoFaults());
  EXPECT_EQ(r.path, std::vector<CarrierId>{7});
}

TEST(Validate, EmptyInput) {
  const ValidationReport r = Validate({});
  EXPECT_TRUE(r.NoFaults());
  EXPECT_FALSE(r.origin);
  EXPECT_TRUE(r.path.empty());
  EXPECT_TRUE(r.connected);
}

TEST(Validate, CompetingOriginsYieldCandidatePaths) {
  // Two complete attestations of different origins into carrier 3.
  const std::vector<Hop> hops{{O, 1, 3}, {O, 2, 3}, {1, 3, 4}, {2, 3, 4}, {3, 4, T}};
  const ValidationReport r = Validate(hops);
  EXPECT_EQ(r.origins, (std::set<CarrierId>{1, 2}));
  EXPECT_EQ(r.likely_origins, (std::set<CarrierId>{1, 2}));
  EXPECT_FALSE(r.origin);
  EXPECT_EQ(r.candidate_paths,
            (std::vector<std::vector<CarrierId>>{{1, 3, 4}, {2, 3, 4}}));
}

TEST(Validate, MissingOriginRecordFlagsWeakCandidate) {
  const std::vector<Hop> hops{{O, 1, 2}, {1, 2, 3}, {9, 2, 3}, {2, 3, T}};
  const ValidationReport r = Validate(hops);
  EXPECT_EQ(r.origins, (std::set<CarrierId>{1, 9}));
  EXPECT_EQ(r.faulty_origin, (std::set<CarrierId>{9}));
  EXPECT_EQ(r.origin, std::optional<CarrierId>(1));
}

TEST(Validate, DisconnectedGivesSubgraphs) {
  const std::vector<Hop> hops{{O, 1, 2}, {O, 5, 6}};
  const ValidationReport r = Validate(hops);
  EXPECT_FALSE(r.connected);
  ASSERT_EQ(r.subgraphs.size(), 2u);
  EXPECT_EQ(r.subgraphs[0].vertices, (std::vector<CarrierId>{1, 2}));
  EXPECT_EQ(r.subgraphs[1].edges, (std::vector<Edge>{{5, 6}}));
  EXPECT_TRUE(r.path.empty());
}

TEST(Validate, DuplicateHonestHopsAreTolerated) {
  auto hops = HonestHops({1, 2, 3});
  const auto once = Validate(hops);
  hops.push_back(hops[1]);
  hops.push_back(hops[0]);
  const auto twice = Validate(hops);
  EXPECT_EQ(twice.path, once.path);
  EXPECT_EQ(twice.origin, once.origin);
}

TEST(ShortestPath, LexicographicTieBreak) {
  const std::vector<Hop> hops{{1, 3, 4}, {1, 2, 4}};
  const TraceGraph g = BuildMultigraph(hops);
  EXPECT_EQ(ShortestPath(g, 1, 4), (std::vector<CarrierId>{1, 2, 4}));
  EXPECT_TRUE(ShortestPath(g, 4, 1).empty());
}

TEST(ValidateProperty, IdealPathsOfLengthTwoToEight) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t len = 2 + trial % 7;
    std::vector<CarrierId> ids(20);
    std::iota(ids.begin(), ids.end(), 1);
    std::shuffle(ids.begin(), ids.end(), gen);
    const std::vector<CarrierId> path(ids.begin(), ids.begin() + len);
    const ValidationReport r = Validate(HonestHops(path));
    EXPECT_TRUE(r.NoFaults());
    EXPECT_EQ(r.path, path);
  }
}

TEST(ValidateProperty, OrderIndependentAndPartitioned) {
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Hop> hops;
    const size_t n = 1 + gen() % 6;
    for (size_t i = 0; i < n; ++i) {
      auto pick = [&](bool end) -> CarrierId {
        const uint64_t x = gen() % 7;
        return x == 0 ? (end ? T : O) : x;
      };
      hops.push_back({pick(false), 1 + gen() % 6, pick(true)});
    }
    const ValidationReport a = Validate(hops);
    std::shuffle(hops.begin(), hops.end(), gen);
    EXPECT_EQ(Validate(hops), a);
    std::set<CarrierId> all;
    size_t total = a.origins.size() + a.terminators.size() + a.transit.size();
    all.insert(a.origins.begin(), a.origins.end());
    all.insert(a.terminators.begin(), a.terminators.end());
    all.insert(a.transit.begin(), a.transit.end());
    EXPECT_EQ(all.size(), total);
    EXPECT_EQ(all, BuildMultigraph(hops).vertices);
    if (a.origin) EXPECT_TRUE(a.origins.count(*a.origin));
    if (a.terminator) EXPECT_TRUE(a.terminators.count(*a.terminator));
  }
}

TEST(ValidateProperty, MatchesBruteForceOracleOnRandomHopSets) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Hop> hops;
    const size_t n = 1 + gen() % 9;
    for (size_t i = 0; i < n; ++i) {
      const uint64_t p = gen() % 7, x = gen() % 7;
      hops.push_back({p == 0 ? O : p, 1 + gen() % 6, x == 0 ? T : x});
    }
    const ValidationReport r = Validate(hops);
    const oracle::Expected e = oracle::Classify(hops);
    EXPECT_EQ(r.origins, e.origins);
    EXPECT_EQ(r.terminators, e.terminators);
    EXPECT_EQ(r.transit, e.transit);
    EXPECT_EQ(r.faulty_origin, e.faulty_origin);
    EXPECT_EQ(r.faulty_transit, e.faulty_transit);
    EXPECT_EQ(r.faulty_terminator, e.faulty_terminator);
    EXPECT_EQ(r.likely_origins, e.likely_origins);
    EXPECT_EQ(r.likely_terminators, e.likely_terminators);
    EXPECT_EQ(r.origin, e.origin);
    EXPECT_EQ(r.terminator, e.terminator);
    EXPECT_EQ(r.connected, e.connected);
    EXPECT_EQ(r.path, e.path);
    EXPECT_EQ(r.candidate_paths, e.candidate_paths);
  }
}

}  // namespace
}  // namespace jager::trace
