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

#include "netgen/netgen.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <random>
#include <set>

#include "common/error.hpp"
#include "trace/validate.hpp"

namespace jager::netgen {
namespace {

CarrierGraph Small(size_t n, uint64_t seed) {
  CarrierNetworkParams p;
  p.carriers = n;
  return GenCarrierNetwork(p, seed);
}

CarrierGraph FromEdges(size_t n, const std::vector<std::tuple<size_t, size_t, uint32_t>>& edges) {
  CarrierGraph g;
  g.fitness.assign(n, 1.0);
  g.adj.resize(n);
  for (auto [a, b, w] : edges) {
    g.adj[a].push_back({b, w});
    g.adj[b].push_back({a, w});
  }
  return g;
}

uint64_t PathCost(const CarrierGraph& g, const std::vector<CarrierId>& path) {
  uint64_t cost = 0;
  for (size_t i = 1; i < path.size(); ++i) {
    const auto& links = g.adj[CarrierGraph::IndexOf(path[i - 1])];
    auto it = std::find_if(links.begin(), links.end(),
                           [&](const Link& l) { return l.to == CarrierGraph::IndexOf(path[i]); });
    EXPECT_NE(it, links.end());
    cost += it->weight;
  }
  return cost;
}

uint64_t BruteForceCost(const CarrierGraph& g, size_t a, size_t b) {
  uint64_t best = std::numeric_limits<uint64_t>::max();
  std::vector<bool> on(g.size(), false);
  std::function<void(size_t, uint64_t)> dfs = [&](size_t v, uint64_t cost) {
    if (v == b) {
      best = std::min(best, cost);
      return;
    }
    on[v] = true;
    for (const Link& l : g.adj[v]) {
      if (!on[l.to]) dfs(l.to, cost + l.weight);
    }
    on[v] = false;
  };
  dfs(a, 0);
  return best;
}

TEST(GenCarrierNetwork, EdgeCountFollowsGrowthRule) {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    CarrierNetworkParams p;
    p.carriers = 10;
    p.edges_per_arrival = 2;
    const CarrierGraph g = GenCarrierNetwork(p, seed);
    EXPECT_EQ(g.EdgeCount(), 2u * (10 - 3) + 3);
  }
}

TEST(GenCarrierNetwork, ConnectedSimplePositiveWeights) {
  const CarrierGraph g = Small(500, 7);
  EXPECT_TRUE(g.IsConnected());
  for (size_t i = 0; i < g.size(); ++i) {
    std::set<size_t> seen;
    for (const Link& l : g.adj[i]) {
      EXPECT_NE(l.to, i);
      EXPECT_TRUE(seen.insert(l.to).second);
      EXPECT_GE(l.weight, 1u);
      EXPECT_LE(l.weight, 10u);
    }
    EXPECT_GE(g.fitness[i], 0.75);
    EXPECT_LE(g.fitness[i], 1.0);
  }
}

TEST(GenCarrierNetwork, HeavyTailedDegrees) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const CarrierGraph g = Small(1000, seed);
    std::vector<size_t> deg;
    for (size_t i = 0; i < g.size(); ++i) deg.push_back(g.Degree(i));
    std::sort(deg.begin(), deg.end());
    const double median = (deg[499] + deg[500]) / 2.0;
    EXPECT_GE(static_cast<double>(deg.back()), 3 * median) << "seed " << seed;
  }
}

TEST(GenCarrierNetwork, Deterministic) {
  const CarrierGraph a = Small(200, 42);
  const CarrierGraph b = Small(200, 42);
  EXPECT_EQ(a.fitness, b.fitness);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a.adj[i].size(), b.adj[i].size());
    for (size_t k = 0; k < a.adj[i].size(); ++k) {
      EXPECT_EQ(a.adj[i][k].to, b.adj[i][k].to);
      EXPECT_EQ(a.adj[i][k].weight, b.adj[i][k].weight);
    }
  }
  EXPECT_NE(Small(200, 43).fitness, a.fitness);
}

TEST(GenCarrierNetwork, RejectsBadParams) {
  CarrierNetworkParams p;
  p.carriers = 2;
  EXPECT_THROW(GenCarrierNetwork(p, 1), Error);
  p.carriers = 10;
  p.edges_per_arrival = 0;
  EXPECT_THROW(GenCarrierNetwork(p, 1), Error);
  p.edges_per_arrival = 2;
  p.fitness_min = 0;
  EXPECT_THROW(GenCarrierNetwork(p, 1), Error);
}

TEST(ShortestCallPath, SameCarrier) {
  const CarrierGraph g = Small(20, 1);
  EXPECT_EQ(ShortestCallPath(g, 5, 5), (std::vector<CarrierId>{5}));
}

TEST(ShortestCallPath, TwoCheapEdgesBeatOneDearEdge) {
  const CarrierGraph g = FromEdges(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 3}});
  EXPECT_EQ(ShortestCallPath(g, 1, 3), (std::vector<CarrierId>{1, 2, 3}));
}

TEST(ShortestCallPath, TieBreaksLexicographically) {
  const CarrierGraph g = FromEdges(4, {{0, 2, 1}, {2, 3, 1}, {0, 1, 1}, {1, 3, 1}});
  EXPECT_EQ(ShortestCallPath(g, 1, 4), (std::vector<CarrierId>{1, 2, 4}));
}

TEST(ShortestCallPath, DisconnectedFails) {
  const CarrierGraph g = FromEdges(3, {{0, 1, 1}});
  EXPECT_THROW(ShortestCallPath(g, 1, 3), Error);
  EXPECT_THROW(ShortestCallPath(g, 1, 9), Error);
}

TEST(ShortestCallPath, MatchesExhaustiveSearch) {
  std::mt19937_64 eng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t n = 2 + eng() % 7;
    std::vector<std::tuple<size_t, size_t, uint32_t>> edges;
    for (size_t i = 1; i < n; ++i) edges.emplace_back(i, eng() % i, 1 + eng() % 10);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < i; ++j) {
        if (eng() % 3 == 0) edges.emplace_back(i, j, 1 + eng() % 10);
      }
    }
    std::set<std::pair<size_t, size_t>> seen;
    std::erase_if(edges, [&](const auto& e) {
      auto [a, b, w] = e;
      return !seen.insert({std::min(a, b), std::max(a, b)}).second;
    });
    const CarrierGraph g = FromEdges(n, edges);
    for (size_t a = 0; a < n; ++a) {
      for (size_t b = 0; b < n; ++b) {
        const auto path = ShortestCallPath(g, CarrierGraph::IdOf(a), CarrierGraph::IdOf(b));
        EXPECT_EQ(path.front(), CarrierGraph::IdOf(a));
        EXPECT_EQ(path.back(), CarrierGraph::IdOf(b));
        EXPECT_EQ(PathCost(g, path), BruteForceCost(g, a, b));
        EXPECT_EQ(std::set<CarrierId>(path.begin(), path.end()).size(), path.size());
      }
    }
  }
}

TEST(CarrierQuotas, SumsAndProportional) {
  const CarrierGraph g = Small(100, 5);
  const auto quota = CarrierQuotas(g, 10000);
  size_t total = 0;
  for (size_t q : quota) total += q;
  EXPECT_EQ(total, 10000u);
  const double twice_edges = 2.0 * g.EdgeCount();
  for (size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(quota[i], 10000 * g.Degree(i) / twice_edges, 1.0);
  }
}

TEST(GenSubscribers, AssignmentTracksDegreeShare) {
  const CarrierGraph g = Small(100, 11);
  SubscriberParams p;
  p.subscribers = 10000;
  const SubscriberGraph s = GenSubscribers(g, p, 12);
  std::map<CarrierId, size_t> count;
  for (const auto& sub : s.subscribers) ++count[sub.home];
  size_t total = 0;
  const double twice_edges = 2.0 * g.EdgeCount();
  for (size_t i = 0; i < g.size(); ++i) {
    const double expected = 10000 * g.Degree(i) / twice_edges;
    const double got = static_cast<double>(count[CarrierGraph::IdOf(i)]);
    EXPECT_LE(std::abs(got - expected), std::max(1.0, 0.1 * expected)) << "carrier " << i + 1;
    total += count[CarrierGraph::IdOf(i)];
  }
  EXPECT_EQ(total, 10000u);
}

TEST(GenSubscribers, NumbersUniqueTenDigits) {
  const CarrierGraph g = Small(50, 2);
  SubscriberParams p;
  p.subscribers = 5000;
  const SubscriberGraph s = GenSubscribers(g, p, 3);
  std::set<std::string> numbers;
  for (const auto& sub : s.subscribers) {
    ASSERT_EQ(sub.number.size(), 10u);
    EXPECT_TRUE(std::all_of(sub.number.begin(), sub.number.end(), ::isdigit));
    EXPECT_NE(sub.number[0], '0');
    EXPECT_NE(sub.number[0], '1');
    EXPECT_NE(sub.number[3], '0');
    EXPECT_NE(sub.number[3], '1');
    numbers.insert(sub.number);
  }
  EXPECT_EQ(numbers.size(), s.subscribers.size());
  EXPECT_EQ(s.edges.size(), 3u + 2u * (5000 - 3));
}

TEST(GenSubscribers, AvoidanceLowersSameCarrierEdges) {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const CarrierGraph g = Small(100, seed);
    SubscriberParams avoid;
    avoid.subscribers = 10000;
    SubscriberParams uniform = avoid;
    uniform.placement_attempts = 1;
    const double with = GenSubscribers(g, avoid, seed + 100).SameCarrierEdgeFraction();
    const double without = GenSubscribers(g, uniform, seed + 100).SameCarrierEdgeFraction();
    EXPECT_LT(with, without) << "seed " << seed;
  }
}

TEST(GenSubscribers, Deterministic) {
  const CarrierGraph g = Small(50, 2);
  SubscriberParams p;
  p.subscribers = 1000;
  const SubscriberGraph a = GenSubscribers(g, p, 9);
  const SubscriberGraph b = GenSubscribers(g, p, 9);
  EXPECT_EQ(a.edges, b.edges);
  for (size_t i = 0; i < a.subscribers.size(); ++i) {
    EXPECT_EQ(a.subscribers[i].number, b.subscribers[i].number);
    EXPECT_EQ(a.subscribers[i].home, b.subscribers[i].home);
  }
}

class GenCdrsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    carriers_ = Small(100, 21);
    SubscriberParams sp;
    sp.subscribers = 2000;
    subs_ = GenSubscribers(carriers_, sp, 22);
    CdrParams cp;
    cp.calls = 300;
    cdrs_ = GenCdrs(subs_, carriers_, cp, 23);
  }

  CarrierGraph carriers_;
  SubscriberGraph subs_;
  CdrSet cdrs_;
};

TEST_F(GenCdrsTest, HonestChainsValidateClean) {
  ASSERT_EQ(cdrs_.ledger.size(), 300u);
  for (const auto& truth : cdrs_.ledger) {
    std::vector<Hop> hops;
    for (const auto& c : truth.cdrs) hops.push_back(c.hop);
    const auto report = trace::Validate(hops);
    EXPECT_TRUE(report.NoFaults());
    ASSERT_TRUE(report.origin.has_value());
    EXPECT_EQ(*report.origin, truth.path.front());
    EXPECT_EQ(report.path, truth.path);
  }
}

TEST_F(GenCdrsTest, TimestampsWithinSetupWindow) {
  for (const auto& truth : cdrs_.ledger) {
    uint64_t last = truth.call.ts;
    for (const auto& c : truth.cdrs) {
      EXPECT_GE(c.call.ts, last);
      EXPECT_LE(c.call.ts, truth.call.ts + 10'000);
      EXPECT_EQ(c.call.src, truth.call.src);
      EXPECT_EQ(c.call.dst, truth.call.dst);
      last = c.call.ts;
    }
    EXPECT_EQ(truth.cdrs.front().call.ts, truth.call.ts);
  }
}

TEST_F(GenCdrsTest, CdrsReconstructLedger) {
  std::multiset<std::tuple<std::string, std::string, CarrierId, CarrierId, CarrierId>> from_cdrs, from_ledger;
  for (const auto& c : cdrs_.cdrs) from_cdrs.insert({c.call.src, c.call.dst, c.hop.prev, c.hop.cur, c.hop.next});
  for (const auto& t : cdrs_.ledger) {
    for (size_t k = 0; k < t.path.size(); ++k) {
      from_ledger.insert({t.call.src, t.call.dst, k == 0 ? kOriginSentinel : t.path[k - 1], t.path[k],
                          k + 1 == t.path.size() ? kTermSentinel : t.path[k + 1]});
    }
  }
  EXPECT_EQ(from_cdrs, from_ledger);
}

TEST_F(GenCdrsTest, HomesMatchPathEnds) {
  std::map<std::string, CarrierId> home;
  for (const auto& s : subs_.subscribers) home[s.number] = s.home;
  for (const auto& t : cdrs_.ledger) {
    EXPECT_EQ(t.path.front(), home.at(t.call.src));
    EXPECT_EQ(t.path.back(), home.at(t.call.dst));
  }
}

TEST_F(GenCdrsTest, LedgerJsonRoundTrips) {
  const auto j = nlohmann::json::parse(cdrs_.LedgerJson());
  ASSERT_EQ(j["calls"].size(), cdrs_.ledger.size());
  EXPECT_EQ(j["calls"][0]["path"].get<std::vector<CarrierId>>(), cdrs_.ledger[0].path);
  EXPECT_EQ(j["calls"][0]["src"], cdrs_.ledger[0].call.src);
}

TEST(GenCdrs, MeanHopsAtFullScale) {
  CarrierNetworkParams cp;
  cp.carriers = 7000;
  const CarrierGraph g = GenCarrierNetwork(cp, 1);
  SubscriberParams sp;
  sp.subscribers = 10000;
  const SubscriberGraph s = GenSubscribers(g, sp, 2);
  CdrParams p;
  p.calls = 500;
  const CdrSet set = GenCdrs(s, g, p, 3);
  double hops = 0;
  for (const auto& t : set.ledger) hops += static_cast<double>(t.path.size());
  hops /= static_cast<double>(set.ledger.size());
  EXPECT_NEAR(hops, 5.0, 2.0);
}

}  // namespace
}  // namespace jager::netgen
