#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evac/density_map.hpp"
#include "evac/grid_map.hpp"
#include "evac/router.hpp"

namespace evac {

enum class Policy { congestion_aware, nearest_exit };

const char* policy_name(Policy p);
std::optional<Policy> policy_from_name(std::string_view name);

/// Inclusive cell rectangle for clustered spawning.
struct SpawnRect {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;
};

/// Everything that defines one evacuation run. Identical scenarios produce
/// bit-identical results.
struct Scenario {
  const GridMap* map = nullptr;
  double map_density = 0.06;  // agents per free cell; population = round(density * free)
  Policy policy = Policy::congestion_aware;
  double beta = 0.5;
  double gamma = 5.0;
  int patch_radius = 3;
  std::uint64_t seed = 1;
  int replan_every = 5;       // ticks between policy applications
  double tick_seconds = 1.0;
  double v_max = 1.5;         // m/s
  double v_min_frac = 0.1;    // floor as a fraction of v_max; keeps agents moving
  double rho_cap = 6.0;       // density at which speed reaches the floor
  int max_ticks = 10000;
  int planning_threads = 1;   // fan-out for replans; results independent of it
  std::optional<SpawnRect> spawn_rect;  // restrict spawning to a cell rectangle
};

/// Throws std::invalid_argument describing the first violated constraint.
void validate_scenario(const Scenario& sc);

struct Agent {
  int id = 0;
  WorldPos position;
  std::optional<Route> route;
  std::size_t next_waypoint = 0;  // index into route->cells
  bool evacuated = false;
  double distance_budget = 0.0;  // meters left within the current tick
};

struct EgressStats {
  int total_egress_ticks = 0;
  std::vector<int> remaining_curve;  // non-evacuated count after each tick
  std::vector<GridCoord> per_agent_exit;  // last assigned exit per agent id
  std::uint64_t seed = 0;
  bool complete = true;  // false when the tick limit cut the run short
};

/// Places round(map_density * free_cells) agents at the centers of uniformly
/// drawn free cells (cells may repeat). Deterministic per seed. Throws if the
/// population rounds to zero or the spawn rectangle holds no free cells.
std::vector<Agent> spawn_population(const Scenario& sc);

/// v = v_max * clamp(1 - rho/rho_cap, v_min_frac, 1).
double speed_from_density(double rho, const Scenario& sc);

/// Pure shortest-path route to the distance-nearest exit (density ignored);
/// the baseline policy. nullopt when no exit is reachable.
std::optional<Route> nearest_exit_policy(const GridMap& map, GridCoord src);

/// Discrete-time evacuation world. Each step rebuilds the density snapshot,
/// replans the agents whose cadence slot came up, then moves every agent
/// along its route at a speed throttled by the density at its current cell
/// (the agent's own contribution is excluded, so a lone agent is never
/// slowed by itself).
///
/// Replanning is staggered: agent i replans when (tick + i) % replan_every
/// == 0, never the whole crowd at once. Synchronized replans let a dense
/// cluster flip between two near-equal routes in lockstep -- its own
/// density shadow makes whichever side it stands on look worse -- and such
/// a cluster can oscillate without ever reaching an exit.
class Simulation {
 public:
  explicit Simulation(const Scenario& sc);           // spawns the population
  Simulation(const Scenario& sc, std::vector<Agent> agents);  // injected population

  void step();
  EgressStats run();  // steps until everyone is out or max_ticks

  int tick() const { return tick_; }
  int remaining() const { return remaining_; }
  bool all_evacuated() const { return remaining_ == 0; }
  const std::vector<Agent>& agents() const { return agents_; }
  const DensityMap& density() const { return dmap_; }

 private:
  void replan_due();
  void replan_range(Planner& planner, std::size_t begin, std::size_t end);

  Scenario sc_;
  const GridMap* map_;
  Planner planner_;
  DensityMap dmap_;
  std::vector<Agent> agents_;
  std::vector<GridCoord> per_agent_exit_;
  std::vector<int> remaining_curve_;
  std::vector<double> rho_scratch_;
  std::vector<double> speed_scratch_;
  std::vector<std::size_t> alive_scratch_;
  std::vector<std::size_t> replan_scratch_;
  int tick_ = 0;
  int remaining_ = 0;
};

/// spawn + step loop. Fully deterministic given the scenario.
EgressStats run_evacuation(const Scenario& sc);

}  // namespace evac
