#include "evac/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evac {

namespace {

struct HeapWorse {
  template <typename E>
  bool operator()(const E& a, const E& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;
    return a.id > b.id;
  }
};

std::vector<GridCoord> walk_parents(const GridMap& map, const std::vector<std::int32_t>& parent,
                                    int goal_id) {
  std::vector<GridCoord> cells;
  int cur = goal_id;
  while (cur >= 0) {
    cells.push_back(GridCoord{cur % map.width(), cur / map.width()});
    cur = parent[cur];
    if (static_cast<int>(cells.size()) > map.cell_count()) {
      throw std::logic_error("baseline trace: corrupt parent chain");
    }
  }
  std::reverse(cells.begin(), cells.end());
  return cells;
}

}  // namespace

namespace detail {

BaselineScratch::BaselineScratch(const GridMap& map) {
  const std::size_t n = static_cast<std::size_t>(map.cell_count());
  stamp.assign(n, 0);
  closed.assign(n, 0);
  seq.assign(n, 0);
  g.assign(n, 0.0);
  parent.assign(n, -1);
  begin_run();
}

void BaselineScratch::begin_run() {
  ++generation;
  if (generation == 0) {
    std::fill(stamp.begin(), stamp.end(), 0u);
    generation = 1;
  }
  heap.clear();
}

}  // namespace detail

std::optional<Route> SingleGoalAstar::plan(const DensityMap& dmap, GridCoord src, GridCoord dst,
                                           const RouterOptions& opts, SearchStats* stats) {
  const GridMap& map = *map_;
  if (!map.walkable(src)) throw std::invalid_argument("baseline: source not walkable");
  if (!map.walkable(dst)) throw std::invalid_argument("baseline: destination not walkable");

  auto& sc = scratch_;
  sc.begin_run();
  const double h_scale = opts.raw_heuristic ? 1.0 : opts.beta;
  const auto h_of = [&](GridCoord c) { return h_scale * euclid_cells(c, dst); };
  const auto touch = [&](int id) {
    if (sc.stamp[id] != sc.generation) {
      sc.stamp[id] = sc.generation;
      sc.closed[id] = 0;
      sc.seq[id] = 0;
      sc.parent[id] = -1;
    }
  };

  const int src_id = map.cell_index(src);
  const int dst_id = map.cell_index(dst);
  touch(src_id);
  sc.g[src_id] = 0.0;
  const double h0 = h_of(src);
  sc.heap.push_back({h0, h0, src_id, ++sc.seq[src_id]});

  while (!sc.heap.empty()) {
    std::pop_heap(sc.heap.begin(), sc.heap.end(), HeapWorse{});
    const auto top = sc.heap.back();
    sc.heap.pop_back();
    const int id = top.id;
    if (sc.stamp[id] != sc.generation || sc.seq[id] != top.seq || sc.closed[id]) {
      if (stats) ++stats->stale_pops;
      continue;
    }
    if (stats) ++stats->pops;
    if (id == dst_id) {
      return route_from_cells(walk_parents(map, sc.parent, id), dmap, opts.beta);
    }
    if (stats) ++stats->expansions;

    const GridCoord p{id % map.width(), id / map.width()};
    const double pg = sc.g[id];
    map.for_each_neighbor(p, [&](GridCoord s, double step) {
      const int sid = map.cell_index(s);
      const double cand_g = pg + edge_cost_value(step, dmap.value(s.x, s.y), opts.beta);
      const bool seen = sc.stamp[sid] == sc.generation;
      if (!seen || cand_g < sc.g[sid]) {
        touch(sid);
        if (seen && sc.closed[sid]) {
          sc.closed[sid] = 0;
          if (stats) ++stats->reopens;
        }
        sc.g[sid] = cand_g;
        sc.parent[sid] = id;
        const double h = h_of(s);
        sc.heap.push_back({cand_g + h, h, sid, ++sc.seq[sid]});
        std::push_heap(sc.heap.begin(), sc.heap.end(), HeapWorse{});
      }
    });
    sc.closed[id] = 1;
  }
  return std::nullopt;
}

std::optional<Route> RepeatedAstar::plan(const DensityMap& dmap, GridCoord src,
                                         std::span<const GridCoord> dsts,
                                         const RouterOptions& opts, SearchStats* stats) {
  if (dsts.empty()) throw std::invalid_argument("baseline: destination list is empty");
  std::optional<Route> best;
  for (GridCoord d : dsts) {
    auto route = inner_.plan(dmap, src, d, opts, stats);
    if (route && (!best || route->total_cost < best->total_cost)) best = std::move(route);
  }
  return best;
}

std::optional<Route> DijkstraExit::plan(const DensityMap& dmap, GridCoord src,
                                        std::span<const GridCoord> dsts,
                                        const RouterOptions& opts, SearchStats* stats) {
  const GridMap& map = *map_;
  if (!map.walkable(src)) throw std::invalid_argument("baseline: source not walkable");
  if (dsts.empty()) throw std::invalid_argument("baseline: destination list is empty");

  std::vector<int> dst_ids;
  dst_ids.reserve(dsts.size());
  for (GridCoord d : dsts) {
    if (!map.walkable(d)) throw std::invalid_argument("baseline: destination not walkable");
    dst_ids.push_back(map.cell_index(d));
  }
  const auto is_dst = [&](int id) {
    return std::find(dst_ids.begin(), dst_ids.end(), id) != dst_ids.end();
  };

  auto& sc = scratch_;
  sc.begin_run();
  const auto touch = [&](int id) {
    if (sc.stamp[id] != sc.generation) {
      sc.stamp[id] = sc.generation;
      sc.closed[id] = 0;
      sc.seq[id] = 0;
      sc.parent[id] = -1;
    }
  };

  const int src_id = map.cell_index(src);
  touch(src_id);
  sc.g[src_id] = 0.0;
  sc.heap.push_back({0.0, 0.0, src_id, ++sc.seq[src_id]});

  while (!sc.heap.empty()) {
    std::pop_heap(sc.heap.begin(), sc.heap.end(), HeapWorse{});
    const auto top = sc.heap.back();
    sc.heap.pop_back();
    const int id = top.id;
    if (sc.stamp[id] != sc.generation || sc.seq[id] != top.seq || sc.closed[id]) {
      if (stats) ++stats->stale_pops;
      continue;
    }
    if (stats) ++stats->pops;
    if (is_dst(id)) {
      return route_from_cells(walk_parents(map, sc.parent, id), dmap, opts.beta);
    }
    if (stats) ++stats->expansions;

    const GridCoord p{id % map.width(), id / map.width()};
    const double pg = sc.g[id];
    map.for_each_neighbor(p, [&](GridCoord s, double step) {
      const int sid = map.cell_index(s);
      const double cand_g = pg + edge_cost_value(step, dmap.value(s.x, s.y), opts.beta);
      const bool seen = sc.stamp[sid] == sc.generation;
      if (!seen || cand_g < sc.g[sid]) {
        touch(sid);
        sc.closed[sid] = 0;
        sc.g[sid] = cand_g;
        sc.parent[sid] = id;
        sc.heap.push_back({cand_g, 0.0, sid, ++sc.seq[sid]});
        std::push_heap(sc.heap.begin(), sc.heap.end(), HeapWorse{});
      }
    });
    sc.closed[id] = 1;
  }
  return std::nullopt;
}

std::optional<Route> astar_single_goal(const GridMap& map, const DensityMap& dmap, GridCoord src,
                                       GridCoord dst, const RouterOptions& opts,
                                       SearchStats* stats) {
  SingleGoalAstar astar(map);
  return astar.plan(dmap, src, dst, opts, stats);
}

std::optional<Route> repeated_astar(const GridMap& map, const DensityMap& dmap, GridCoord src,
                                    std::span<const GridCoord> dsts, const RouterOptions& opts,
                                    SearchStats* stats) {
  RepeatedAstar astar(map);
  return astar.plan(dmap, src, dsts, opts, stats);
}

std::optional<Route> dijkstra_best_exit(const GridMap& map, const DensityMap& dmap, GridCoord src,
                                        std::span<const GridCoord> dsts, const RouterOptions& opts,
                                        SearchStats* stats) {
  DijkstraExit dij(map);
  return dij.plan(dmap, src, dsts, opts, stats);
}

}  // namespace evac
