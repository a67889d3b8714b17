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

#include <algorithm>
#include <deque>
#include <nlohmann/json.hpp>

namespace jager::trace {

size_t TraceGraph::InDegree(CarrierId v) const {
  return std::count_if(edges.begin(), edges.end(), [v](const Edge& e) { return e.second == v; });
}

size_t TraceGraph::OutDegree(CarrierId v) const {
  return std::count_if(edges.begin(), edges.end(), [v](const Edge& e) { return e.first == v; });
}

size_t TraceGraph::Multiplicity(const Edge& e) const {
  auto [lo, hi] = std::equal_range(edges.begin(), edges.end(), e);
  return static_cast<size_t>(hi - lo);
}

TraceGraph BuildMultigraph(std::span<const Hop> hops) {
  TraceGraph g;
  auto add_edge = [&](CarrierId a, CarrierId b) {
    if (IsSentinel(a) || IsSentinel(b)) return;
    g.edges.emplace_back(a, b);
  };
  for (const Hop& h : hops) {
    for (CarrierId v : {h.prev, h.cur, h.next}) {
      if (!IsSentinel(v)) g.vertices.insert(v);
    }
    add_edge(h.prev, h.cur);
    add_edge(h.cur, h.next);
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

std::vector<CarrierId> ShortestPath(const TraceGraph& g, CarrierId from, CarrierId to) {
  if (!g.vertices.count(from) || !g.vertices.count(to)) return {};
  std::map<CarrierId, std::set<CarrierId>> out, in;
  for (const auto& [a, b] : g.edges) {
    out[a].insert(b);
    in[b].insert(a);
  }
  std::map<CarrierId, size_t> dist{{to, 0}};
  std::deque<CarrierId> queue{to};
  while (!queue.empty()) {
    CarrierId v = queue.front();
    queue.pop_front();
    for (CarrierId u : in[v]) {
      if (dist.emplace(u, dist[v] + 1).second) queue.push_back(u);
    }
  }
  if (!dist.count(from)) return {};
  std::vector<CarrierId> path{from};
  CarrierId cur = from;
  while (cur != to) {
    // out[cur] is ordered, so the first neighbour one step closer is the
    // lexicographically smallest continuation.
    for (CarrierId next : out[cur]) {
      auto it = dist.find(next);
      if (it != dist.end() && it->second + 1 == dist[cur]) {
        cur = next;
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

std::vector<Subgraph> WeakComponents(const TraceGraph& g) {
  std::map<CarrierId, std::set<CarrierId>> adj;
  for (CarrierId v : g.vertices) adj[v];
  for (const auto& [a, b] : g.edges) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  std::map<CarrierId, size_t> comp;
  std::vector<Subgraph> out;
  for (CarrierId start : g.vertices) {
    if (comp.count(start)) continue;
    const size_t id = out.size();
    out.emplace_back();
    std::deque<CarrierId> queue{start};
    comp[start] = id;
    while (!queue.empty()) {
      CarrierId v = queue.front();
      queue.pop_front();
      out[id].vertices.push_back(v);
      for (CarrierId u : adj[v]) {
        if (comp.emplace(u, id).second) queue.push_back(u);
      }
    }
    std::sort(out[id].vertices.begin(), out[id].vertices.end());
  }
  for (const Edge& e : g.edges) out[comp[e.first]].edges.push_back(e);
  return out;
}

ValidationReport Validate(std::span<const Hop> hops) {
  ValidationReport r;
  const TraceGraph g = BuildMultigraph(hops);
  std::map<CarrierId, size_t> din, dout;
  for (const auto& [a, b] : g.edges) {
    ++dout[a];
    ++din[b];
  }

  for (CarrierId v : g.vertices) {
    if (din[v] == 0) {
      r.origins.insert(v);
    } else if (dout[v] == 0) {
      r.terminators.insert(v);
    } else {
      r.transit.insert(v);
    }
  }

  if (r.origins.size() == 1) {
    r.origin = *r.origins.begin();
  } else {
    for (CarrierId v : r.origins) {
      (dout[v] == 2 ? r.likely_origins : r.faulty_origin).insert(v);
    }
    if (r.likely_origins.size() == 1) r.origin = *r.likely_origins.begin();
  }

  if (r.terminators.size() == 1) {
    r.terminator = *r.terminators.begin();
  } else {
    for (CarrierId v : r.terminators) {
      (din[v] == 2 ? r.likely_terminators : r.faulty_terminator).insert(v);
    }
    if (r.likely_terminators.size() == 1) r.terminator = *r.likely_terminators.begin();
  }

  auto in_range = [](size_t d) { return d == 1 || d == 2; };
  for (CarrierId v : r.transit) {
    if (!in_range(din[v]) || !in_range(dout[v])) r.faulty_transit.insert(v);
  }

  r.subgraphs = WeakComponents(g);
  r.connected = r.subgraphs.size() <= 1;
  if (!r.connected) return r;
  r.subgraphs.clear();

  if (r.origin && r.terminator) {
    r.path = ShortestPath(g, *r.origin, *r.terminator);
  } else if (r.origin && g.vertices.size() == 1) {
    r.path = {*r.origin};
  } else {
    std::set<CarrierId> sources = r.origin ? std::set<CarrierId>{*r.origin} : r.likely_origins;
    std::set<CarrierId> sinks =
        r.terminator ? std::set<CarrierId>{*r.terminator} : r.likely_terminators;
    for (CarrierId s : sources) {
      for (CarrierId t : sinks) {
        auto p = ShortestPath(g, s, t);
        if (!p.empty()) r.candidate_paths.push_back(std::move(p));
      }
    }
  }
  return r;
}

std::set<CarrierId> ValidationReport::AllFaulty() const {
  std::set<CarrierId> all = faulty_origin;
  all.insert(faulty_transit.begin(), faulty_transit.end());
  all.insert(faulty_terminator.begin(), faulty_terminator.end());
  return all;
}

std::string ValidationReport::ToJson() const {
  using nlohmann::json;
  auto opt = [](const std::optional<CarrierId>& v) { return v ? json(*v) : json(nullptr); };
  json j;
  j["faulty"] = {{"origin", faulty_origin},
                 {"transit", faulty_transit},
                 {"terminator", faulty_terminator}};
  j["origin"] = {{"selected", opt(origin)}, {"candidates", origins}, {"likely", likely_origins}};
  j["terminator"] = {
      {"selected", opt(terminator)}, {"candidates", terminators}, {"likely", likely_terminators}};
  j["transit"] = transit;
  j["connected"] = connected;
  j["path"] = path;
  j["candidate_paths"] = candidate_paths;
  json subs = json::array();
  for (const auto& s : subgraphs) subs.push_back({{"vertices", s.vertices}, {"edges", s.edges}});
  j["subgraphs"] = subs;
  return j.dump();
}

}  // namespace jager::trace
