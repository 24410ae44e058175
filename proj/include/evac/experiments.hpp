#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evac/crowd_sim.hpp"

namespace evac {

struct ExperimentConfig {
  const GridMap* map = nullptr;
  std::string map_name = "map";
  std::vector<double> densities{0.02, 0.06};
  std::vector<Policy> policies{Policy::congestion_aware, Policy::nearest_exit};
  int trials = 30;
  std::uint64_t seed0 = 1;  // trial i runs with seed0 + i
  double beta = 0.5;
  double gamma = 5.0;
  int patch_radius = 3;
  int replan_every = 5;
  double tick_seconds = 1.0;
  double v_max = 1.5;
  double v_min_frac = 0.1;
  double rho_cap = 6.0;
  int max_ticks = 10000;
  int planning_threads = 1;
};

/// CSV documents (returned in memory; the CLI writes them to disk). All
/// three start with the same "# key=value ..." config header so no output
/// can be misread without its parameters.
struct ExperimentResult {
  std::string runs_csv;     // map_density,policy,seed,total_egress_ticks,complete
  std::string curves_csv;   // map_density,policy,seed,tick,remaining
  std::string summary_csv;  // map_density,policy,trials,mean_ticks,ci98_lo,ci98_hi
};

/// Runs every (density, policy, trial) cell. Deterministic given the config.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct BenchConfig {
  const GridMap* map = nullptr;
  std::string map_name = "map";
  std::vector<int> agent_counts{10, 100, 500, 1000};
  std::vector<int> worker_counts{1, 2, 4, 8};  // single_pass only
  int trials = 5;
  std::uint64_t seed = 1;
  double beta = 0.5;
  double gamma = 5.0;
  int patch_radius = 3;
  bool include_repeated = true;
  bool include_dijkstra = true;
};

/// Times routing a whole population per planner variant. The timed region
/// covers planning only (map parsing, spawning and the density build sit
/// outside it). Columns: planner,agents,workers,mean_ms,trials,route_checksum.
/// mean_ms is wall time and therefore not reproducible; route_checksum is a
/// content hash of all routes in agent order and is.
std::string bench_planners(const BenchConfig& cfg);

}  // namespace evac
