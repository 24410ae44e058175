#include "evac/experiments.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <thread>

#include "evac/baselines.hpp"
#include "evac/rng.hpp"
#include "evac/stats.hpp"

namespace evac {

namespace {

std::string fmt(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

struct Fnv1a {
  std::uint64_t h = 0xcbf29ce484222325ull;

  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 0x100000001b3ull;
    }
  }
  void u32(std::uint32_t v) { bytes(&v, sizeof v); }
  void u64(std::uint64_t v) { bytes(&v, sizeof v); }
};

std::uint64_t checksum_routes(const std::vector<std::optional<Route>>& routes) {
  Fnv1a fnv;
  for (const auto& r : routes) {
    if (!r) {
      fnv.u32(0xffffffffu);
      continue;
    }
    fnv.u32(static_cast<std::uint32_t>(r->cells.size()));
    for (const GridCoord& c : r->cells) {
      fnv.u32(static_cast<std::uint32_t>(c.x));
      fnv.u32(static_cast<std::uint32_t>(c.y));
    }
    fnv.u64(std::bit_cast<std::uint64_t>(r->total_cost));
  }
  return fnv.h;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (!cfg.map) throw std::invalid_argument("experiment has no map");
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.densities.empty()) throw std::invalid_argument("density sweep is empty");
  for (double d : cfg.densities) {
    if (!(d > 0.0)) throw std::invalid_argument("sweep densities must be > 0");
  }
  if (cfg.policies.empty()) throw std::invalid_argument("policy list is empty");

  const std::string header = fmt(
      "# map=%s beta=%g gamma=%g patch_radius=%d replan_every=%d tick_seconds=%g v_max=%g "
      "v_min_frac=%g rho_cap=%g max_ticks=%d trials=%d seed0=%llu\n",
      cfg.map_name.c_str(), cfg.beta, cfg.gamma, cfg.patch_radius, cfg.replan_every,
      cfg.tick_seconds, cfg.v_max, cfg.v_min_frac, cfg.rho_cap, cfg.max_ticks, cfg.trials,
      static_cast<unsigned long long>(cfg.seed0));

  ExperimentResult out;
  out.runs_csv = header + "map_density,policy,seed,total_egress_ticks,complete\n";
  out.curves_csv = header + "map_density,policy,seed,tick,remaining\n";
  out.summary_csv = header + "map_density,policy,trials,mean_ticks,ci98_lo,ci98_hi\n";

  for (double density : cfg.densities) {
    for (Policy policy : cfg.policies) {
      std::vector<double> totals;
      totals.reserve(static_cast<std::size_t>(cfg.trials));
      for (int trial = 0; trial < cfg.trials; ++trial) {
        Scenario sc;
        sc.map = cfg.map;
        sc.map_density = density;
        sc.policy = policy;
        sc.beta = cfg.beta;
        sc.gamma = cfg.gamma;
        sc.patch_radius = cfg.patch_radius;
        sc.seed = cfg.seed0 + static_cast<std::uint64_t>(trial);
        sc.replan_every = cfg.replan_every;
        sc.tick_seconds = cfg.tick_seconds;
        sc.v_max = cfg.v_max;
        sc.v_min_frac = cfg.v_min_frac;
        sc.rho_cap = cfg.rho_cap;
        sc.max_ticks = cfg.max_ticks;
        sc.planning_threads = cfg.planning_threads;

        const EgressStats stats = run_evacuation(sc);
        totals.push_back(static_cast<double>(stats.total_egress_ticks));

        out.runs_csv += fmt("%g,%s,%llu,%d,%d\n", density, policy_name(policy),
                            static_cast<unsigned long long>(sc.seed), stats.total_egress_ticks,
                            stats.complete ? 1 : 0);
        for (std::size_t t = 0; t < stats.remaining_curve.size(); ++t) {
          out.curves_csv += fmt("%g,%s,%llu,%zu,%d\n", density, policy_name(policy),
                                static_cast<unsigned long long>(sc.seed), t + 1,
                                stats.remaining_curve[t]);
        }
      }

      double mean, lo, hi;
      if (totals.size() == 1) {
        mean = lo = hi = totals[0];  // degenerate interval: the point itself
      } else {
        const MeanCi ci = mean_ci98(totals);
        mean = ci.mean;
        lo = ci.lo;
        hi = ci.hi;
      }
      out.summary_csv += fmt("%g,%s,%d,%.17g,%.17g,%.17g\n", density, policy_name(policy),
                             cfg.trials, mean, lo, hi);
    }
  }
  return out;
}

std::string bench_planners(const BenchConfig& cfg) {
  if (!cfg.map) throw std::invalid_argument("bench has no map");
  if (cfg.map->exits().empty()) throw std::invalid_argument("bench map has no exits");
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.agent_counts.empty()) throw std::invalid_argument("agent count list is empty");
  for (int n : cfg.agent_counts) {
    if (n < 1) throw std::invalid_argument("agent counts must be >= 1");
  }
  for (int w : cfg.worker_counts) {
    if (w < 1) throw std::invalid_argument("worker counts must be >= 1");
  }

  const GridMap& map = *cfg.map;
  std::vector<GridCoord> free_cells;
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      if (map.kind(x, y) == CellKind::Free) free_cells.push_back({x, y});
    }
  }
  if (free_cells.empty()) throw std::invalid_argument("bench map has no free cells");
  const std::vector<GridCoord> exits(map.exits().begin(), map.exits().end());
  RouterOptions opts;
  opts.beta = cfg.beta;

  std::string csv = fmt("# map=%s beta=%g gamma=%g patch_radius=%d trials=%d seed=%llu\n",
                        cfg.map_name.c_str(), cfg.beta, cfg.gamma, cfg.patch_radius, cfg.trials,
                        static_cast<unsigned long long>(cfg.seed));
  csv += "planner,agents,workers,mean_ms,trials,route_checksum\n";

  for (int n : cfg.agent_counts) {
    // Deterministic per-count population and its density field, prepared
    // outside the timed region.
    Rng rng(cfg.seed + static_cast<std::uint64_t>(n));
    std::vector<GridCoord> srcs(static_cast<std::size_t>(n));
    PopulationCounts counts;
    for (auto& s : srcs) {
      s = free_cells[rng.below(free_cells.size())];
      ++counts[s];
    }
    const DensityMap dmap = build_density(counts, map, {cfg.gamma, cfg.patch_radius});

    std::vector<std::optional<Route>> routes(srcs.size());
    const auto timed = [&](const std::function<void()>& fill) {
      double total_ms = 0.0;
      for (int trial = 0; trial < cfg.trials; ++trial) {
        const auto t0 = std::chrono::steady_clock::now();
        fill();
        const auto t1 = std::chrono::steady_clock::now();
        total_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
      }
      return total_ms / cfg.trials;
    };
    const auto emit = [&](const char* planner, int workers, double mean_ms) {
      csv += fmt("%s,%d,%d,%.3f,%d,%016llx\n", planner, n, workers, mean_ms, cfg.trials,
                 static_cast<unsigned long long>(checksum_routes(routes)));
    };

    for (int w : cfg.worker_counts) {
      if (w == 1) {
        Planner planner(map);
        const double ms = timed([&] {
          for (std::size_t i = 0; i < srcs.size(); ++i) {
            routes[i] = planner.plan(dmap, srcs[i], exits, opts);
          }
        });
        emit("single_pass", 1, ms);
      } else {
        const double ms = timed([&] {
          std::vector<std::thread> pool;
          pool.reserve(static_cast<std::size_t>(w));
          const std::size_t chunk = (srcs.size() + w - 1) / static_cast<std::size_t>(w);
          for (int t = 0; t < w; ++t) {
            pool.emplace_back([&, t] {
              const std::size_t lo = static_cast<std::size_t>(t) * chunk;
              const std::size_t hi = std::min(srcs.size(), lo + chunk);
              if (lo >= hi) return;
              Planner local(map);
              for (std::size_t i = lo; i < hi; ++i) {
                routes[i] = local.plan(dmap, srcs[i], exits, opts);
              }
            });
          }
          for (auto& th : pool) th.join();
        });
        emit("single_pass", w, ms);
      }
    }

    if (cfg.include_repeated) {
      RepeatedAstar ra(map);
      const double ms = timed([&] {
        for (std::size_t i = 0; i < srcs.size(); ++i) {
          routes[i] = ra.plan(dmap, srcs[i], exits, opts);
        }
      });
      emit("repeated_astar", 1, ms);
    }
    if (cfg.include_dijkstra) {
      DijkstraExit dj(map);
      const double ms = timed([&] {
        for (std::size_t i = 0; i < srcs.size(); ++i) {
          routes[i] = dj.plan(dmap, srcs[i], exits, opts);
        }
      });
      emit("dijkstra", 1, ms);
    }
  }
  return csv;
}

}  // namespace evac
