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

#ifndef JAGER_NETGEN_NETGEN_HPP_
#define JAGER_NETGEN_NETGEN_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "protocol/call_details.hpp"

namespace jager::netgen {

struct Link {
  size_t to;
  uint32_t weight;
};

// Undirected weighted carrier interconnect. Vertex i carries CarrierId i+1.
struct CarrierGraph {
  std::vector<double> fitness;
  std::vector<std::vector<Link>> adj;

  size_t size() const { return adj.size(); }
  size_t EdgeCount() const;
  size_t Degree(size_t i) const { return adj[i].size(); }
  uint64_t Strength(size_t i) const;
  static CarrierId IdOf(size_t i) { return i + 1; }
  static size_t IndexOf(CarrierId id) { return id - 1; }
  bool IsConnected() const;
};

struct CarrierNetworkParams {
  size_t carriers = 7000;
  size_t edges_per_arrival = 2;
  double fitness_min = 0.75;
  double fitness_max = 1.0;
  uint32_t weight_min = 1;
  uint32_t weight_max = 10;
};

// Seed is the complete graph on m+1 nodes. Each later node links to m
// distinct nodes picked with probability proportional to fitness * degree.
CarrierGraph GenCarrierNetwork(const CarrierNetworkParams& params, uint64_t seed);

struct Subscriber {
  std::string number;  // 10 digits
  CarrierId home = 0;
};

struct SubscriberGraph {
  std::vector<Subscriber> subscribers;
  std::vector<std::pair<size_t, size_t>> edges;

  double SameCarrierEdgeFraction() const;
};

struct SubscriberParams {
  size_t subscribers = 10000;
  size_t edges_per_arrival = 2;
  // Carrier draws per subscriber while a neighbour shares the carrier; 1
  // disables the check.
  size_t placement_attempts = 16;
};

// Scale-free call graph; carriers receive subscribers in proportion to
// their interconnect degree.
SubscriberGraph GenSubscribers(const CarrierGraph& carriers, const SubscriberParams& params, uint64_t seed);

// Degree-proportional subscriber quota per carrier (largest remainder).
std::vector<size_t> CarrierQuotas(const CarrierGraph& carriers, size_t subscribers);

// Minimum total weight; among equal-weight paths the lexicographically
// smallest id sequence.
std::vector<CarrierId> ShortestCallPath(const CarrierGraph& g, CarrierId a, CarrierId b);

// Dijkstra distances to `target` (by index).
std::vector<uint64_t> DistancesTo(const CarrierGraph& g, size_t target);

// Next hop from `from` towards the target whose distances are given.
size_t NextHopToward(const CarrierGraph& g, const std::vector<uint64_t>& dist, size_t from);

struct CallTruth {
  CallDetails call;  // ts at the originating carrier
  std::vector<CarrierId> path;
  std::vector<Cdr> cdrs;  // one per path carrier, in path order
};

struct CdrParams {
  size_t calls = 1000;
  uint64_t start_ts_ms = 1'700'000'000'000;
  uint64_t spacing_ms = 30'000;
  uint64_t hop_delay_min_ms = 10;
  uint64_t hop_delay_max_ms = 500;
  uint64_t max_setup_ms = 10'000;
};

struct CdrSet {
  std::vector<Cdr> cdrs;
  std::vector<CallTruth> ledger;

  std::string LedgerJson() const;
};

CdrSet GenCdrs(const SubscriberGraph& subs, const CarrierGraph& carriers, const CdrParams& params,
               uint64_t seed);

void WriteCarrierCsv(const std::string& path, const CarrierGraph& g);
void WriteSubscriberCsv(const std::string& path, const SubscriberGraph& s);

}  // namespace jager::netgen

#endif  // JAGER_NETGEN_NETGEN_HPP_
