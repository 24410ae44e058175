#include "evac/router.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "evac/stats.hpp"

namespace evac {

namespace {

// Min-heap order: f, then h, then row-major cell id. The id component makes
// pop order — and therefore every tie — identical across runs and platforms.
struct HeapWorse {
  template <typename E>
  bool operator()(const E& a, const E& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;
    return a.id > b.id;
  }
};

[[noreturn]] void throw_bad_coord(const char* what, GridCoord c) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s: (%d, %d)", what, c.x, c.y);
  throw std::invalid_argument(buf);
}

}  // namespace

double edge_cost(GridCoord p, GridCoord s, const DensityMap& dmap, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must be in [0, 1]");
  const int dx = std::abs(p.x - s.x);
  const int dy = std::abs(p.y - s.y);
  if (std::max(dx, dy) != 1) throw std::invalid_argument("edge_cost: cells are not adjacent");
  const double dist = (dx == 1 && dy == 1) ? kSqrt2 : 1.0;
  return edge_cost_value(dist, dmap.at(s), beta);
}

double euclid_cells(GridCoord a, GridCoord b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

double heuristic(GridCoord s, GridCoord dst, double beta) { return beta * euclid_cells(s, dst); }

FrontierLists::FrontierLists(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("frontier dimensions must be positive");
  const std::size_t n = static_cast<std::size_t>(width) * height;
  stamp_.assign(n, 0);
  state_.assign(n, State::unseen);
  seq_.assign(n, 0);
  g_.assign(n, 0.0);
  h_.assign(n, 0.0);
  parent_.assign(n, -1);
  dst_.assign(n, -1);
  reset();
}

void FrontierLists::reset() {
  ++generation_;
  if (generation_ == 0) {  // wrapped: the stamps are no longer unambiguous
    std::fill(stamp_.begin(), stamp_.end(), 0u);
    generation_ = 1;
  }
  heap_.clear();
  stale_pops_ = 0;
}

FrontierLists::State FrontierLists::state(GridCoord c) const {
  const int id = index(c);
  return live(id) ? state_[id] : State::unseen;
}

double FrontierLists::open_f(GridCoord c) const {
  const int id = index(c);
  return g_[id] + h_[id];
}

double FrontierLists::closed_g(GridCoord c) const { return g_[index(c)]; }

void FrontierLists::insert(const PlanNode& s) {
  const int id = index(s.pos);
  if (!live(id)) {
    stamp_[id] = generation_;
    seq_[id] = 0;
  }
  state_[id] = State::open;
  g_[id] = s.g;
  h_[id] = s.h;
  parent_[id] = s.parent ? index(*s.parent) : -1;
  dst_[id] = index(s.dst);
  ++seq_[id];
  heap_.push_back(HeapEntry{s.f, s.h, id, seq_[id]});
  std::push_heap(heap_.begin(), heap_.end(), HeapWorse{});
}

std::optional<PlanNode> FrontierLists::pop() {
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), HeapWorse{});
    const HeapEntry top = heap_.back();
    heap_.pop_back();
    const int id = top.id;
    if (!live(id) || state_[id] != State::open || seq_[id] != top.seq) {
      ++stale_pops_;  // superseded (or closed) entry, skip
      continue;
    }
    PlanNode node;
    node.pos = coord(id);
    if (parent_[id] >= 0) node.parent = coord(parent_[id]);
    node.dst = coord(dst_[id]);
    node.g = g_[id];
    node.h = h_[id];
    node.f = g_[id] + h_[id];
    return node;
  }
  return std::nullopt;
}

void FrontierLists::close(GridCoord c) { state_[index(c)] = State::closed; }

std::optional<GridCoord> FrontierLists::parent_of(GridCoord c) const {
  const int p = parent_[index(c)];
  if (p < 0) return std::nullopt;
  return coord(p);
}

bool validate_candidate(const PlanNode& s, const FrontierLists& lists) {
  switch (lists.state(s.pos)) {
    case FrontierLists::State::unseen:
      return true;  // (i) never explored
    case FrontierLists::State::open:
      return s.f < lists.open_f(s.pos);  // (ii) beats the live open entry
    case FrontierLists::State::closed:
      return s.g < lists.closed_g(s.pos);  // (iii) better g: re-expansion allowed
  }
  return false;
}

Route route_from_cells(std::vector<GridCoord> cells, const DensityMap& dmap, double beta) {
  Route route;
  route.cells = std::move(cells);
  route.chosen_exit = route.cells.empty() ? GridCoord{} : route.cells.back();

  // Sum the edge costs in source→exit order with compensation, so the total
  // does not depend on which of several equal-cost paths a search happened
  // to settle on.
  NeumaierAccumulator total;
  for (std::size_t i = 1; i < route.cells.size(); ++i) {
    const GridCoord a = route.cells[i - 1];
    const GridCoord b = route.cells[i];
    const double dist = (a.x != b.x && a.y != b.y) ? kSqrt2 : 1.0;
    total.add(edge_cost_value(dist, dmap.value(b.x, b.y), beta));
  }
  route.total_cost = total.total();
  return route;
}

Route trace_path(const PlanNode& goal, const FrontierLists& lists, const GridMap& map,
                 const DensityMap& dmap, double beta) {
  std::vector<GridCoord> cells;
  GridCoord cur = goal.pos;
  cells.push_back(cur);
  const int limit = map.cell_count();
  while (auto parent = lists.parent_of(cur)) {
    cells.push_back(*parent);
    cur = *parent;
    if (static_cast<int>(cells.size()) > limit) {
      throw std::logic_error("trace_path: parent chain longer than the map");
    }
  }
  std::reverse(cells.begin(), cells.end());
  return route_from_cells(std::move(cells), dmap, beta);
}

Planner::Planner(const GridMap& map)
    : map_(&map),
      lists_(map.width(), map.height()),
      dst_stamp_(static_cast<std::size_t>(map.cell_count()), 0),
      h_cache_(static_cast<std::size_t>(map.cell_count()), 0.0),
      h_dst_cache_(static_cast<std::size_t>(map.cell_count()), 0) {}

void Planner::refresh_h_cache(std::span<const GridCoord> dsts, double h_scale) {
  if (h_scale == cached_scale_ && std::equal(dsts.begin(), dsts.end(), cached_dsts_.begin(),
                                             cached_dsts_.end())) {
    return;
  }
  const GridMap& map = *map_;
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      const GridCoord c{x, y};
      double best = std::numeric_limits<double>::infinity();
      GridCoord best_dst = dsts[0];
      for (GridCoord d : dsts) {
        const double e = euclid_cells(c, d);
        if (e < best) {
          best = e;
          best_dst = d;
        }
      }
      const int id = map.cell_index(c);
      h_cache_[id] = h_scale * best;
      h_dst_cache_[id] = map.cell_index(best_dst);
    }
  }
  cached_dsts_.assign(dsts.begin(), dsts.end());
  cached_scale_ = h_scale;
}

std::optional<Route> Planner::plan(const DensityMap& dmap, GridCoord src,
                                   std::span<const GridCoord> dsts, const RouterOptions& opts,
                                   SearchStats* stats) {
  const GridMap& map = *map_;
  if (dmap.width() != map.width() || dmap.height() != map.height()) {
    throw std::invalid_argument("density map dimensions do not match the grid");
  }
  if (!(opts.beta >= 0.0 && opts.beta <= 1.0)) {
    throw std::invalid_argument("beta must be in [0, 1]");
  }
  if (!map.in_bounds(src)) throw_bad_coord("source out of bounds", src);
  if (map.kind(src.x, src.y) == CellKind::Wall) throw_bad_coord("source is a wall", src);
  if (dsts.empty()) throw std::invalid_argument("destination list is empty");
  for (GridCoord d : dsts) {
    if (!map.in_bounds(d) || map.kind(d.x, d.y) != CellKind::Exit) {
      throw_bad_coord("destination is not an exit cell", d);
    }
  }

  ++dst_generation_;
  if (dst_generation_ == 0) {
    std::fill(dst_stamp_.begin(), dst_stamp_.end(), 0u);
    dst_generation_ = 1;
  }
  for (GridCoord d : dsts) dst_stamp_[map.cell_index(d)] = dst_generation_;
  const auto is_destination = [&](GridCoord c) {
    return dst_stamp_[map.cell_index(c)] == dst_generation_;
  };

  if (is_destination(src)) {
    return Route{{src}, src, 0.0};
  }

  // h = scale * (Euclidean distance to the nearest destination). Scoring
  // against the nearest destination is what makes a single pass serve the
  // whole destination list.
  const double h_scale = opts.raw_heuristic ? 1.0 : opts.beta;
  refresh_h_cache(dsts, h_scale);
  const auto seeded = [&](GridCoord s) {
    const int id = map.cell_index(s);
    GridCoord d{h_dst_cache_[id] % map.width(), h_dst_cache_[id] / map.width()};
    return PlanNode{s, std::nullopt, d, 0.0, h_cache_[id], 0.0};
  };

  lists_.reset();
  {
    PlanNode root = seeded(src);
    root.f = root.g + root.h;
    lists_.insert(root);
  }

  while (auto popped = lists_.pop()) {
    if (stats) {
      ++stats->pops;
      if (stats->record_popped_f) stats->popped_f.push_back(popped->f);
    }
    if (is_destination(popped->pos)) {
      PlanNode goal = *popped;
      goal.dst = goal.pos;  // the popped destination is the chosen one
      if (stats) stats->stale_pops += lists_.stale_pops();
      return trace_path(goal, lists_, map, dmap, opts.beta);
    }
    if (stats) ++stats->expansions;

    const GridCoord p = popped->pos;
    const double pg = popped->g;
    map.for_each_neighbor(p, [&](GridCoord s, double step) {
      PlanNode cand = seeded(s);
      cand.parent = p;
      cand.g = pg + edge_cost_value(step, dmap.value(s.x, s.y), opts.beta);
      cand.f = cand.g + cand.h;
      if (validate_candidate(cand, lists_)) {
        if (stats && lists_.state(s) == FrontierLists::State::closed) ++stats->reopens;
        lists_.insert(cand);
      }
    });
    lists_.close(p);
  }

  if (stats) stats->stale_pops += lists_.stale_pops();
  return std::nullopt;
}

std::optional<Route> plan_route(const GridMap& map, const DensityMap& dmap, GridCoord src,
                                std::span<const GridCoord> dsts, const RouterOptions& opts,
                                SearchStats* stats) {
  Planner planner(map);
  return planner.plan(dmap, src, dsts, opts, stats);
}

}  // namespace evac
