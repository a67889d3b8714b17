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

#include <algorithm>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <unordered_set>

#include "common/error.hpp"

namespace jager::netgen {

namespace {

using Engine = std::mt19937_64;

uint64_t UniformInt(Engine& eng, uint64_t lo, uint64_t hi) {
  return std::uniform_int_distribution<uint64_t>(lo, hi)(eng);
}

double Uniform01(Engine& eng) { return std::uniform_real_distribution<double>(0.0, 1.0)(eng); }

void AddLink(CarrierGraph& g, size_t a, size_t b, uint32_t w) {
  g.adj[a].push_back({b, w});
  g.adj[b].push_back({a, w});
}

}  // namespace

size_t CarrierGraph::EdgeCount() const {
  size_t twice = 0;
  for (const auto& links : adj) twice += links.size();
  return twice / 2;
}

uint64_t CarrierGraph::Strength(size_t i) const {
  uint64_t s = 0;
  for (const Link& l : adj[i]) s += l.weight;
  return s;
}

bool CarrierGraph::IsConnected() const {
  if (adj.empty()) return true;
  std::vector<bool> seen(adj.size(), false);
  std::vector<size_t> stack{0};
  seen[0] = true;
  size_t count = 1;
  while (!stack.empty()) {
    size_t v = stack.back();
    stack.pop_back();
    for (const Link& l : adj[v]) {
      if (!seen[l.to]) {
        seen[l.to] = true;
        ++count;
        stack.push_back(l.to);
      }
    }
  }
  return count == adj.size();
}

CarrierGraph GenCarrierNetwork(const CarrierNetworkParams& p, uint64_t seed) {
  const size_t m = p.edges_per_arrival;
  if (m == 0 || p.carriers < m + 1) {
    Fail(ErrorCode::kInvalidArgument, "carrier network needs m >= 1 and N >= m + 1");
  }
  if (!(p.fitness_min > 0 && p.fitness_min <= p.fitness_max && p.fitness_max <= 1)) {
    Fail(ErrorCode::kInvalidArgument, "fitness range must lie in (0, 1]");
  }
  Engine eng(seed);
  CarrierGraph g;
  g.fitness.resize(p.carriers);
  for (double& f : g.fitness) f = p.fitness_min + (p.fitness_max - p.fitness_min) * Uniform01(eng);
  g.adj.resize(p.carriers);
  auto weight = [&] { return static_cast<uint32_t>(UniformInt(eng, p.weight_min, p.weight_max)); };

  std::vector<size_t> stubs;
  for (size_t i = 0; i <= m; ++i) {
    for (size_t j = 0; j < i; ++j) {
      AddLink(g, i, j, weight());
      stubs.push_back(i);
      stubs.push_back(j);
    }
  }
  std::vector<size_t> chosen;
  for (size_t n = m + 1; n < p.carriers; ++n) {
    chosen.clear();
    while (chosen.size() < m) {
      const size_t c = stubs[UniformInt(eng, 0, stubs.size() - 1)];
      if (Uniform01(eng) >= g.fitness[c]) continue;
      if (std::find(chosen.begin(), chosen.end(), c) == chosen.end()) chosen.push_back(c);
    }
    for (size_t c : chosen) {
      AddLink(g, n, c, weight());
      stubs.push_back(c);
      stubs.push_back(n);
    }
  }
  return g;
}

std::vector<size_t> CarrierQuotas(const CarrierGraph& carriers, size_t subscribers) {
  const size_t n = carriers.size();
  uint64_t total_degree = 0;
  for (size_t i = 0; i < n; ++i) total_degree += carriers.Degree(i);
  std::vector<size_t> quota(n);
  std::vector<std::pair<uint64_t, size_t>> remainders;
  size_t assigned = 0;
  for (size_t i = 0; i < n; ++i) {
    const uint64_t scaled = static_cast<uint64_t>(carriers.Degree(i)) * subscribers;
    quota[i] = scaled / total_degree;
    assigned += quota[i];
    remainders.emplace_back(scaled % total_degree, i);
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  for (size_t k = 0; assigned < subscribers; ++k, ++assigned) ++quota[remainders[k].second];
  return quota;
}

double SubscriberGraph::SameCarrierEdgeFraction() const {
  if (edges.empty()) return 0;
  size_t same = 0;
  for (const auto& [a, b] : edges) same += subscribers[a].home == subscribers[b].home;
  return static_cast<double>(same) / static_cast<double>(edges.size());
}

SubscriberGraph GenSubscribers(const CarrierGraph& carriers, const SubscriberParams& p, uint64_t seed) {
  const size_t m = p.edges_per_arrival;
  if (m == 0 || p.subscribers < m + 1) {
    Fail(ErrorCode::kInvalidArgument, "subscriber graph needs m >= 1 and S >= m + 1");
  }
  Engine eng(seed);
  SubscriberGraph sg;
  sg.subscribers.resize(p.subscribers);

  std::vector<std::vector<size_t>> neighbours(p.subscribers);
  std::vector<size_t> stubs;
  auto link = [&](size_t a, size_t b) {
    sg.edges.emplace_back(a, b);
    neighbours[a].push_back(b);
    neighbours[b].push_back(a);
    stubs.push_back(a);
    stubs.push_back(b);
  };
  for (size_t i = 0; i <= m; ++i) {
    for (size_t j = 0; j < i; ++j) link(i, j);
  }
  std::vector<size_t> chosen;
  for (size_t n = m + 1; n < p.subscribers; ++n) {
    chosen.clear();
    while (chosen.size() < m) {
      const size_t c = stubs[UniformInt(eng, 0, stubs.size() - 1)];
      if (std::find(chosen.begin(), chosen.end(), c) == chosen.end()) chosen.push_back(c);
    }
    for (size_t c : chosen) link(n, c);
  }

  std::vector<size_t> pool;
  const auto quota = CarrierQuotas(carriers, p.subscribers);
  for (size_t c = 0; c < quota.size(); ++c) pool.insert(pool.end(), quota[c], c);
  std::vector<bool> placed(p.subscribers, false);
  for (size_t s = 0; s < p.subscribers; ++s) {
    size_t pick = 0;
    for (size_t attempt = 0; attempt < std::max<size_t>(1, p.placement_attempts); ++attempt) {
      pick = UniformInt(eng, 0, pool.size() - 1);
      const CarrierId home = CarrierGraph::IdOf(pool[pick]);
      const bool clash = std::any_of(neighbours[s].begin(), neighbours[s].end(), [&](size_t nb) {
        return placed[nb] && sg.subscribers[nb].home == home;
      });
      if (!clash) break;
    }
    sg.subscribers[s].home = CarrierGraph::IdOf(pool[pick]);
    placed[s] = true;
    pool[pick] = pool.back();
    pool.pop_back();
  }

  std::unordered_set<std::string> used;
  for (auto& sub : sg.subscribers) {
    std::string number;
    do {
      number = std::to_string(UniformInt(eng, 2, 9)) + std::to_string(UniformInt(eng, 0, 9)) +
               std::to_string(UniformInt(eng, 0, 9)) + std::to_string(UniformInt(eng, 2, 9));
      const uint64_t rest = UniformInt(eng, 0, 999999);
      std::string tail = std::to_string(rest);
      number += std::string(6 - tail.size(), '0') + tail;
    } while (!used.insert(number).second);
    sub.number = number;
  }
  return sg;
}

std::vector<uint64_t> DistancesTo(const CarrierGraph& g, size_t target) {
  constexpr uint64_t kInf = std::numeric_limits<uint64_t>::max();
  std::vector<uint64_t> dist(g.size(), kInf);
  using Item = std::pair<uint64_t, size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[target] = 0;
  pq.emplace(0, target);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (const Link& l : g.adj[u]) {
      if (d + l.weight < dist[l.to]) {
        dist[l.to] = d + l.weight;
        pq.emplace(dist[l.to], l.to);
      }
    }
  }
  return dist;
}

size_t NextHopToward(const CarrierGraph& g, const std::vector<uint64_t>& dist, size_t from) {
  size_t best = std::numeric_limits<size_t>::max();
  for (const Link& l : g.adj[from]) {
    if (dist[l.to] != std::numeric_limits<uint64_t>::max() && dist[l.to] + l.weight == dist[from]) {
      best = std::min(best, l.to);
    }
  }
  if (best == std::numeric_limits<size_t>::max()) Fail(ErrorCode::kNotFound, "carriers are not connected");
  return best;
}

std::vector<CarrierId> ShortestCallPath(const CarrierGraph& g, CarrierId a, CarrierId b) {
  const size_t from = CarrierGraph::IndexOf(a);
  const size_t to = CarrierGraph::IndexOf(b);
  if (a == 0 || b == 0 || from >= g.size() || to >= g.size()) {
    Fail(ErrorCode::kInvalidArgument, "carrier not in graph");
  }
  const auto dist = DistancesTo(g, to);
  if (dist[from] == std::numeric_limits<uint64_t>::max()) {
    Fail(ErrorCode::kNotFound, "carriers are not connected");
  }
  std::vector<CarrierId> path{a};
  for (size_t cur = from; cur != to;) {
    cur = NextHopToward(g, dist, cur);
    path.push_back(CarrierGraph::IdOf(cur));
  }
  return path;
}

CdrSet GenCdrs(const SubscriberGraph& subs, const CarrierGraph& carriers, const CdrParams& p, uint64_t seed) {
  if (subs.edges.empty()) Fail(ErrorCode::kInvalidArgument, "subscriber graph has no edges");
  Engine eng(seed);
  CdrSet out;
  for (size_t i = 0; i < p.calls; ++i) {
    auto [a, b] = subs.edges[UniformInt(eng, 0, subs.edges.size() - 1)];
    if (UniformInt(eng, 0, 1)) std::swap(a, b);
    CallTruth truth;
    truth.call = CallDetails{subs.subscribers[a].number, subs.subscribers[b].number,
                             p.start_ts_ms + i * p.spacing_ms};
    truth.path = ShortestCallPath(carriers, subs.subscribers[a].home, subs.subscribers[b].home);
    uint64_t ts = truth.call.ts;
    for (size_t k = 0; k < truth.path.size(); ++k) {
      if (k > 0) {
        ts = std::min(ts + UniformInt(eng, p.hop_delay_min_ms, p.hop_delay_max_ms),
                      truth.call.ts + p.max_setup_ms);
      }
      Cdr cdr;
      cdr.call = CallDetails{truth.call.src, truth.call.dst, ts};
      cdr.hop = Hop{k == 0 ? kOriginSentinel : truth.path[k - 1], truth.path[k],
                    k + 1 == truth.path.size() ? kTermSentinel : truth.path[k + 1]};
      truth.cdrs.push_back(cdr);
      out.cdrs.push_back(cdr);
    }
    out.ledger.push_back(std::move(truth));
  }
  return out;
}

std::string CdrSet::LedgerJson() const {
  nlohmann::json calls = nlohmann::json::array();
  for (const auto& t : ledger) {
    nlohmann::json hops = nlohmann::json::array();
    for (const auto& c : t.cdrs) hops.push_back({{"ts", c.call.ts}, {"hop", {c.hop.prev, c.hop.cur, c.hop.next}}});
    calls.push_back({{"src", t.call.src}, {"dst", t.call.dst}, {"ts", t.call.ts}, {"path", t.path}, {"hops", hops}});
  }
  return nlohmann::json{{"calls", calls}}.dump(1);
}

void WriteCarrierCsv(const std::string& path, const CarrierGraph& g) {
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path);
  out << "a,b,weight\n";
  for (size_t i = 0; i < g.size(); ++i) {
    for (const Link& l : g.adj[i]) {
      if (i < l.to) out << CarrierGraph::IdOf(i) << ',' << CarrierGraph::IdOf(l.to) << ',' << l.weight << '\n';
    }
  }
}

void WriteSubscriberCsv(const std::string& path, const SubscriberGraph& s) {
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path);
  out << "number,carrier\n";
  for (const auto& sub : s.subscribers) out << sub.number << ',' << sub.home << '\n';
}

}  // namespace jager::netgen
