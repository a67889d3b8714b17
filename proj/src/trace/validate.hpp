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

#ifndef JAGER_TRACE_VALIDATE_HPP_
#define JAGER_TRACE_VALIDATE_HPP_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "protocol/call_details.hpp"

namespace jager::trace {

using Edge = std::pair<CarrierId, CarrierId>;

// Directed multigraph over carriers. Each hop contributes prev->cur and
// cur->next; edges to or from a sentinel are left out.
struct TraceGraph {
  std::set<CarrierId> vertices;
  std::vector<Edge> edges;  // sorted, duplicates kept

  size_t InDegree(CarrierId v) const;
  size_t OutDegree(CarrierId v) const;
  size_t Multiplicity(const Edge& e) const;
};

TraceGraph BuildMultigraph(std::span<const Hop> hops);

struct Subgraph {
  std::vector<CarrierId> vertices;
  std::vector<Edge> edges;

  bool operator==(const Subgraph&) const = default;
};

struct ValidationReport {
  std::set<CarrierId> faulty_origin;
  std::set<CarrierId> faulty_transit;
  std::set<CarrierId> faulty_terminator;
  std::optional<CarrierId> origin;
  std::set<CarrierId> origins;
  std::set<CarrierId> likely_origins;
  std::optional<CarrierId> terminator;
  std::set<CarrierId> terminators;
  std::set<CarrierId> likely_terminators;
  std::set<CarrierId> transit;
  bool connected = true;
  // Shortest origin to terminator path when both are known and the graph
  // is weakly connected.
  std::vector<CarrierId> path;
  // One path per (origin candidate, terminator candidate) pair when the
  // origin or terminator is ambiguous.
  std::vector<std::vector<CarrierId>> candidate_paths;
  std::vector<Subgraph> subgraphs;  // only when not weakly connected

  bool NoFaults() const {
    return faulty_origin.empty() && faulty_transit.empty() && faulty_terminator.empty();
  }
  std::set<CarrierId> AllFaulty() const;
  std::string ToJson() const;

  bool operator==(const ValidationReport&) const = default;
};

// Classifies vertices into originators (no inbound edge), terminators
// (inbound but no outbound edge) and transit carriers, resolves a single
// origin and terminator where possible, flags carriers whose degrees break
// the call-path invariants, and recovers the path.
ValidationReport Validate(std::span<const Hop> hops);

// Fewest edges, ties broken by the lexicographically smallest vertex
// sequence. Empty when `to` is unreachable.
std::vector<CarrierId> ShortestPath(const TraceGraph& g, CarrierId from, CarrierId to);

std::vector<Subgraph> WeakComponents(const TraceGraph& g);

}  // namespace jager::trace

#endif  // JAGER_TRACE_VALIDATE_HPP_
