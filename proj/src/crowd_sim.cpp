#include "evac/crowd_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "evac/rng.hpp"

namespace evac {

const char* policy_name(Policy p) {
  return p == Policy::congestion_aware ? "congestion_aware" : "nearest_exit";
}

std::optional<Policy> policy_from_name(std::string_view name) {
  if (name == "congestion_aware") return Policy::congestion_aware;
  if (name == "nearest_exit") return Policy::nearest_exit;
  return std::nullopt;
}

void validate_scenario(const Scenario& sc) {
  if (!sc.map) throw std::invalid_argument("scenario has no map");
  if (!(sc.map_density > 0.0)) throw std::invalid_argument("map_density must be > 0");
  if (!(sc.beta >= 0.0 && sc.beta <= 1.0)) throw std::invalid_argument("beta must be in [0, 1]");
  if (!(sc.gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (sc.patch_radius < 0) throw std::invalid_argument("patch_radius must be >= 0");
  if (sc.replan_every < 1) throw std::invalid_argument("replan_every must be >= 1");
  if (!(sc.tick_seconds > 0.0)) throw std::invalid_argument("tick_seconds must be > 0");
  if (!(sc.v_max > 0.0)) throw std::invalid_argument("v_max must be > 0");
  if (!(sc.v_min_frac > 0.0 && sc.v_min_frac <= 1.0)) {
    throw std::invalid_argument("v_min_frac must be in (0, 1]");
  }
  if (!(sc.rho_cap > 0.0)) throw std::invalid_argument("rho_cap must be > 0");
  if (sc.max_ticks < 1) throw std::invalid_argument("max_ticks must be >= 1");
  if (sc.planning_threads < 1) throw std::invalid_argument("planning_threads must be >= 1");
}

std::vector<Agent> spawn_population(const Scenario& sc) {
  validate_scenario(sc);
  const GridMap& map = *sc.map;

  std::vector<GridCoord> candidates;
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      if (map.kind(x, y) != CellKind::Free) continue;
      if (sc.spawn_rect) {
        const auto& r = *sc.spawn_rect;
        if (x < r.x0 || x > r.x1 || y < r.y0 || y > r.y1) continue;
      }
      candidates.push_back({x, y});
    }
  }
  if (candidates.empty()) throw std::invalid_argument("spawn area contains no free cells");

  const long long population = std::llround(sc.map_density * map.free_cell_count());
  if (population <= 0) throw std::invalid_argument("population rounds to zero");

  Rng rng(sc.seed);
  std::vector<Agent> agents(static_cast<std::size_t>(population));
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const GridCoord cell = candidates[rng.below(candidates.size())];
    agents[i].id = static_cast<int>(i);
    agents[i].position = map.center(cell);
  }
  return agents;
}

double speed_from_density(double rho, const Scenario& sc) {
  // Same expression shape as the throttle kernel (multiply by the
  // reciprocal), so scalar call sites and the batched kernel agree bitwise.
  const double inv_rho_cap = 1.0 / sc.rho_cap;
  double factor = 1.0 - rho * inv_rho_cap;
  factor = std::min(factor, 1.0);
  factor = std::max(factor, sc.v_min_frac);
  return sc.v_max * factor;
}

std::optional<Route> nearest_exit_policy(const GridMap& map, GridCoord src) {
  const DensityMap zeros(map.width(), map.height(), 1.0, 0,
                         std::vector<double>(static_cast<std::size_t>(map.cell_count()), 0.0), 0);
  RouterOptions opts;
  opts.beta = 1.0;
  return plan_route(map, zeros, src, map.exits(), opts);
}

Simulation::Simulation(const Scenario& sc) : Simulation(sc, spawn_population(sc)) {}

Simulation::Simulation(const Scenario& sc, std::vector<Agent> agents)
    : sc_(sc), map_(sc.map), planner_(*sc.map), agents_(std::move(agents)) {
  validate_scenario(sc_);
  const MapDiagnostics diag = validate_map(*map_);
  if (diag.unreachable_free_cells != 0) {
    throw std::invalid_argument("map has " + std::to_string(diag.unreachable_free_cells) +
                                " free cells with no path to an exit");
  }
  per_agent_exit_.assign(agents_.size(), GridCoord{-1, -1});
  remaining_ = 0;
  for (const Agent& a : agents_) {
    if (a.id < 0 || static_cast<std::size_t>(a.id) >= agents_.size()) {
      throw std::invalid_argument("agent ids must be 0..n-1");
    }
    if (!a.evacuated) ++remaining_;
  }
}

void Simulation::replan_range(Planner& planner, std::size_t begin, std::size_t end) {
  RouterOptions opts;
  opts.beta = sc_.policy == Policy::nearest_exit ? 1.0 : sc_.beta;
  for (std::size_t i = begin; i < end; ++i) {
    Agent& a = agents_[replan_scratch_[i]];
    const auto cell = map_->cell_of(a.position);
    if (!cell) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "tick %d: agent %d left the world at (%g, %g)", tick_, a.id,
                    a.position.x, a.position.y);
      throw std::runtime_error(buf);
    }
    a.route = planner.plan(dmap_, *cell, map_->exits(), opts);
    if (!a.route) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "tick %d: agent %d at (%d, %d) has no route to any exit",
                    tick_, a.id, cell->x, cell->y);
      throw std::runtime_error(buf);
    }
    // Head for the current cell's center first -- unless the agent already
    // sits on the route's first segment, in which case backtracking to the
    // center would just undo progress (and with a short replan cadence agents
    // would oscillate around their cell centers forever). Direction changes
    // still go through the center, which keeps diagonal segments clear of
    // wall corners.
    a.next_waypoint = 0;
    const auto& cells = a.route->cells;
    if (cells.size() >= 2) {
      const WorldPos c0 = map_->center(cells[0]);
      const WorldPos c1 = map_->center(cells[1]);
      const double d0 = std::hypot(a.position.x - c0.x, a.position.y - c0.y);
      const double d1 = std::hypot(c1.x - a.position.x, c1.y - a.position.y);
      const double d = std::hypot(c1.x - c0.x, c1.y - c0.y);
      if (d0 + d1 <= d + 1e-9) a.next_waypoint = 1;
    }
    per_agent_exit_[static_cast<std::size_t>(a.id)] = a.route->chosen_exit;
  }
}

void Simulation::replan_due() {
  replan_scratch_.clear();
  for (const std::size_t idx : alive_scratch_) {
    const Agent& a = agents_[idx];
    if (!a.route || (tick_ + a.id) % sc_.replan_every == 0) replan_scratch_.push_back(idx);
  }
  const std::size_t n = replan_scratch_.size();
  if (n == 0) return;
  const int threads = std::min<int>(sc_.planning_threads, static_cast<int>(n));
  if (threads <= 1) {
    replan_range(planner_, 0, n);
    return;
  }
  // Fan out over an immutable snapshot; every worker gets its own scratch.
  // The per-agent results do not depend on the partition.
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  const std::size_t chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([this, t, chunk, n, &errors] {
      const std::size_t lo = static_cast<std::size_t>(t) * chunk;
      const std::size_t hi = std::min(n, lo + chunk);
      try {
        Planner local(*map_);
        replan_range(local, lo, hi);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void Simulation::step() {
  // 1. Fresh density snapshot from everyone still inside.
  alive_scratch_.clear();
  std::vector<WorldPos> positions;
  positions.reserve(static_cast<std::size_t>(remaining_));
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    if (agents_[i].evacuated) continue;
    alive_scratch_.push_back(i);
    positions.push_back(agents_[i].position);
  }
  dmap_ = build_density(bin_positions(positions, *map_), *map_,
                        {sc_.gamma, sc_.patch_radius});

  // 2. Replan whoever is due (routeless agents always are, so tick 0 plans
  //    everyone).
  replan_due();

  // 3. Speeds from the snapshot, own contribution excluded.
  const std::size_t n = alive_scratch_.size();
  rho_scratch_.resize(n);
  speed_scratch_.resize(n);
  const double self = single_agent_peak(sc_.gamma);
  for (std::size_t i = 0; i < n; ++i) {
    const Agent& a = agents_[alive_scratch_[i]];
    const auto cell = map_->cell_of(a.position);
    rho_scratch_[i] = std::max(0.0, dmap_.value(cell->x, cell->y) - self);
  }
  const auto& ks = kernels::kernels();
  ks.throttle(speed_scratch_.data(), rho_scratch_.data(), n, sc_.v_max, 1.0 / sc_.rho_cap,
              sc_.v_min_frac);

  // 4. Advance along route polylines, fractional budget carrying over
  //    between waypoints within the tick.
  for (std::size_t i = 0; i < n; ++i) {
    Agent& a = agents_[alive_scratch_[i]];
    const auto& cells = a.route->cells;
    double budget = speed_scratch_[i] * sc_.tick_seconds;
    while (budget > 0.0 && a.next_waypoint < cells.size()) {
      const WorldPos target = map_->center(cells[a.next_waypoint]);
      const double dx = target.x - a.position.x;
      const double dy = target.y - a.position.y;
      const double dist = std::sqrt(dx * dx + dy * dy);
      if (dist <= budget) {
        a.position = target;
        budget -= dist;
        ++a.next_waypoint;
      } else {
        a.position.x += dx / dist * budget;
        a.position.y += dy / dist * budget;
        budget = 0.0;
      }
    }
    a.distance_budget = budget;
    if (a.next_waypoint >= cells.size()) {
      a.evacuated = true;
      --remaining_;
    }
  }

  ++tick_;
  remaining_curve_.push_back(remaining_);
}

EgressStats Simulation::run() {
  while (remaining_ > 0 && tick_ < sc_.max_ticks) step();

  EgressStats stats;
  stats.total_egress_ticks = tick_;
  stats.remaining_curve = remaining_curve_;
  stats.per_agent_exit = per_agent_exit_;
  stats.seed = sc_.seed;
  stats.complete = remaining_ == 0;
  return stats;
}

EgressStats run_evacuation(const Scenario& sc) {
  Simulation sim(sc);
  return sim.run();
}

}  // namespace evac
