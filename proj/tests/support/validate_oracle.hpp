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

#ifndef JAGER_TESTS_SUPPORT_VALIDATE_ORACLE_HPP_
#define JAGER_TESTS_SUPPORT_VALIDATE_ORACLE_HPP_

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "protocol/call_details.hpp"

namespace jager::oracle {

// Degree-rule classification computed by brute force: degrees are counted
// straight from the hop tuples, connectivity by union-find and paths by
// enumerating every simple path.
struct Expected {
  std::set<CarrierId> origins, terminators, transit;
  std::set<CarrierId> faulty_origin, faulty_transit, faulty_terminator;
  std::set<CarrierId> likely_origins, likely_terminators;
  std::optional<CarrierId> origin, terminator;
  bool connected = true;
  std::vector<CarrierId> path;
  std::vector<std::vector<CarrierId>> candidate_paths;
};

inline bool Real(CarrierId v) { return v != kOriginSentinel && v != kTermSentinel; }

inline Expected Classify(const std::vector<Hop>& hops) {
  Expected e;
  std::set<CarrierId> vertices;
  std::map<CarrierId, size_t> din, dout;
  std::vector<std::pair<CarrierId, CarrierId>> edges;
  for (const Hop& h : hops) {
    for (CarrierId v : {h.prev, h.cur, h.next}) {
      if (Real(v)) vertices.insert(v);
    }
    if (Real(h.prev) && Real(h.cur)) edges.emplace_back(h.prev, h.cur);
    if (Real(h.cur) && Real(h.next)) edges.emplace_back(h.cur, h.next);
  }
  for (const auto& [a, b] : edges) {
    dout[a]++;
    din[b]++;
  }
  for (CarrierId v : vertices) {
    if (din[v] == 0) {
      e.origins.insert(v);
    } else if (dout[v] == 0) {
      e.terminators.insert(v);
    } else {
      e.transit.insert(v);
    }
  }
  if (e.origins.size() == 1) {
    e.origin = *e.origins.begin();
  } else {
    for (CarrierId v : e.origins) {
      if (dout[v] == 2) {
        e.likely_origins.insert(v);
      } else {
        e.faulty_origin.insert(v);
      }
    }
    if (e.likely_origins.size() == 1) e.origin = *e.likely_origins.begin();
  }
  if (e.terminators.size() == 1) {
    e.terminator = *e.terminators.begin();
  } else {
    for (CarrierId v : e.terminators) {
      if (din[v] == 2) {
        e.likely_terminators.insert(v);
      } else {
        e.faulty_terminator.insert(v);
      }
    }
    if (e.likely_terminators.size() == 1) e.terminator = *e.likely_terminators.begin();
  }
  for (CarrierId v : e.transit) {
    const bool in_ok = din[v] >= 1 && din[v] <= 2;
    const bool out_ok = dout[v] >= 1 && dout[v] <= 2;
    if (!in_ok || !out_ok) e.faulty_transit.insert(v);
  }

  std::map<CarrierId, CarrierId> parent;
  for (CarrierId v : vertices) parent[v] = v;
  std::function<CarrierId(CarrierId)> find = [&](CarrierId v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (const auto& [a, b] : edges) parent[find(a)] = find(b);
  std::set<CarrierId> roots;
  for (CarrierId v : vertices) roots.insert(find(v));
  e.connected = roots.size() <= 1;
  if (!e.connected) return e;

  auto best_path = [&](CarrierId from, CarrierId to) {
    std::optional<std::vector<CarrierId>> best;
    std::vector<CarrierId> cur{from};
    std::function<void()> walk = [&] {
      const CarrierId v = cur.back();
      if (v == to) {
        if (!best || cur.size() < best->size() || (cur.size() == best->size() && cur < *best)) best = cur;
        return;
      }
      for (const auto& [a, b] : edges) {
        if (a != v || std::find(cur.begin(), cur.end(), b) != cur.end()) continue;
        cur.push_back(b);
        walk();
        cur.pop_back();
      }
    };
    walk();
    return best.value_or(std::vector<CarrierId>{});
  };

  if (e.origin && e.terminator) {
    e.path = best_path(*e.origin, *e.terminator);
  } else if (e.origin && vertices.size() == 1) {
    e.path = {*e.origin};
  } else {
    const std::set<CarrierId> sources = e.origin ? std::set<CarrierId>{*e.origin} : e.likely_origins;
    const std::set<CarrierId> sinks = e.terminator ? std::set<CarrierId>{*e.terminator} : e.likely_terminators;
    for (CarrierId s : sources) {
      for (CarrierId t : sinks) {
        auto p = best_path(s, t);
        if (!p.empty()) e.candidate_paths.push_back(p);
      }
    }
  }
  return e;
}

}  // namespace jager::oracle

#endif  // JAGER_TESTS_SUPPORT_VALIDATE_ORACLE_HPP_
