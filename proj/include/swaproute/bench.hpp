// Copyright 2022 The swaproute Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file bench.hpp
 * @brief Random-instance sweeps comparing the strategy router with the
 * greedy baseline.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "swaproute/topology.hpp"

namespace swaproute {

enum class BenchTopology { Line, Grid2D, Grid3D, HeavyHex, UnrolledHeavyHex };

std::string_view to_string(BenchTopology topology);
/// Family names plus "unrolled-heavy-hex"; UnknownFamily otherwise.
BenchTopology bench_topology_from_string(std::string_view name);

/**
 * Smallest map of the topology holding `n` qubits: line(n), square grid,
 * cube, heavy-hex with fewest qubits, unrolled heavy-hex with a line of
 * 4 ceil(n/5).
 */
CouplingMap bench_map(BenchTopology topology, std::size_t n);

/// HeavyHex(i, j) with qubit count closest to `n`, ties to the smaller map.
CouplingMap nearest_heavy_hex(std::size_t n);

struct BenchConfig {
  std::vector<BenchTopology> topologies;
  std::vector<std::size_t> sizes;
  std::vector<double> densities;
  std::vector<std::uint64_t> seeds;
  bool baseline = true;
  std::size_t threads = 1;
};

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;
  double median = 0.0;
};

Summary summarize(std::vector<double> samples);

struct RouterStats {
  Summary cnot_count;
  Summary cnot_layers;
  Summary seconds;
};

struct BenchPoint {
  BenchTopology topology = BenchTopology::Line;
  std::size_t n = 0;
  std::size_t map_qubits = 0;
  double density = 0.0;
  RouterStats strategy;
  RouterStats baseline;  // zero when disabled
};

/**
 * Routes one cost layer of random_gnm(n, D, seed) per seed with both routers.
 * Points come back in config order whatever the thread count.
 */
std::vector<BenchPoint> run_bench(const BenchConfig& config);

std::string bench_csv(const std::vector<BenchPoint>& points);

/// Thread cap from SWAPROUTE_THREADS, else the hardware concurrency.
std::size_t default_thread_count();

}  // namespace swaproute
