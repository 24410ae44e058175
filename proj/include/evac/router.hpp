#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "evac/density_map.hpp"
#include "evac/grid_map.hpp"

namespace evac {

struct RouterOptions {
  double beta = 0.5;          // distance-vs-congestion weight in [0, 1]
  bool raw_heuristic = false;  // unscaled Euclidean h (inadmissible for beta < 1)
};

/// Search node. f = g + h always; parent is empty only for the source.
struct PlanNode {
  GridCoord pos;
  std::optional<GridCoord> parent;
  GridCoord dst;  // the destination this node's h was scored against
  double g = 0.0;
  double h = 0.0;
  double f = 0.0;
};

struct Route {
  std::vector<GridCoord> cells;  // source first, chosen exit last
  GridCoord chosen_exit{};
  double total_cost = 0.0;
};

/// Optional per-search counters, mostly for tests and benchmarks.
struct SearchStats {
  std::uint64_t pops = 0;        // live nodes popped
  std::uint64_t stale_pops = 0;  // lazily-invalidated heap entries skipped
  std::uint64_t expansions = 0;  // popped nodes whose successors were generated
  std::uint64_t reopens = 0;     // closed positions re-opened with a better g
  bool record_popped_f = false;
  std::vector<double> popped_f;  // f of each live pop, when recording
};

/// Cost of one step from p onto s: beta * step_length + (1 - beta) * rho[s],
/// step length 1 or sqrt(2) in cell units. Throws std::invalid_argument for a
/// non-adjacent pair (Chebyshev distance != 1).
double edge_cost(GridCoord p, GridCoord s, const DensityMap& dmap, double beta);

/// The shared cost expression. Every cost computed anywhere in the project
/// (search, baselines, route totals) goes through this one shape so results
/// are comparable bit-for-bit.
inline double edge_cost_value(double dist, double rho_s, double beta) {
  return beta * dist + (1.0 - beta) * rho_s;
}

double euclid_cells(GridCoord a, GridCoord b);

/// Admissible heuristic: beta * Euclidean distance to dst.
double heuristic(GridCoord s, GridCoord dst, double beta);

/// Open + closed bookkeeping for one search, keyed by position.
///
/// Open is a binary heap over (f, h, row-major cell id) — the deterministic
/// tie-break order — augmented with per-position arrays for O(1) lookup.
/// Superseded heap entries are invalidated lazily via a sequence counter and
/// skipped on pop. Closed keeps the g at which a position was finalized;
/// re-opening with a strictly better g is permitted. Arrays are generation-
/// stamped so reset() is O(1) and instances can be reused across searches.
class FrontierLists {
 public:
  enum class State : unsigned char { unseen, open, closed };

  FrontierLists(int width, int height);

  void reset();

  State state(GridCoord c) const;
  /// f of the live open entry at c. Requires state(c) == open.
  double open_f(GridCoord c) const;
  /// g at which c was closed. Requires state(c) == closed.
  double closed_g(GridCoord c) const;

  /// Records s as the live open entry for its position (replacing any
  /// previous one) and pushes it on the heap. Caller validates first.
  void insert(const PlanNode& s);

  /// Pops the minimum-(f, h, id) live entry, or nullopt when open is empty.
  std::optional<PlanNode> pop();

  /// Moves a popped position to closed at its current g.
  void close(GridCoord c);

  std::optional<GridCoord> parent_of(GridCoord c) const;

  /// Invalidated heap entries skipped by pop() since the last reset().
  std::uint64_t stale_pops() const { return stale_pops_; }

 private:
  struct HeapEntry {
    double f;
    double h;
    std::int32_t id;
    std::uint32_t seq;
  };

  int index(GridCoord c) const { return c.y * width_ + c.x; }
  GridCoord coord(int id) const { return {id % width_, id / width_}; }
  bool live(int id) const { return stamp_[id] == generation_; }

  int width_;
  int height_;
  std::uint32_t generation_ = 0;
  std::uint64_t stale_pops_ = 0;
  std::vector<std::uint32_t> stamp_;
  std::vector<State> state_;
  std::vector<std::uint32_t> seq_;
  std::vector<double> g_;
  std::vector<double> h_;
  std::vector<std::int32_t> parent_;  // cell id, -1 for the source
  std::vector<std::int32_t> dst_;
  std::vector<HeapEntry> heap_;
};

/// True iff s should enter the open list: its position was never seen, or the
/// live open entry there has strictly higher f, or the position is closed
/// with strictly higher g (re-expansion).
bool validate_candidate(const PlanNode& s, const FrontierLists& lists);

/// Builds a Route from an explicit cell sequence: chosen_exit is the last
/// cell, total_cost the compensated sum of edge costs in order. This is the
/// one canonical way route totals are computed anywhere in the project.
Route route_from_cells(std::vector<GridCoord> cells, const DensityMap& dmap, double beta);

/// Walks the parent chain from a popped goal node and returns the route in
/// source-to-exit order. total_cost is the compensated sum of the edge costs
/// along the returned cells (it may differ from goal.g by rounding only).
Route trace_path(const PlanNode& goal, const FrontierLists& lists, const GridMap& map,
                 const DensityMap& dmap, double beta);

/// Single-pass multi-destination congestion-aware A*.
///
/// One open/closed pair serves every destination: candidates score h against
/// their nearest destination and the first destination popped wins. Returns
/// nullopt when no destination is reachable. Reusable: holds scratch sized to
/// the map, so repeated plans allocate nothing.
class Planner {
 public:
  explicit Planner(const GridMap& map);

  std::optional<Route> plan(const DensityMap& dmap, GridCoord src, std::span<const GridCoord> dsts,
                            const RouterOptions& opts = {}, SearchStats* stats = nullptr);

  const GridMap& map() const { return *map_; }

 private:
  void refresh_h_cache(std::span<const GridCoord> dsts, double h_scale);

  const GridMap* map_;
  FrontierLists lists_;
  std::vector<std::uint32_t> dst_stamp_;
  std::uint32_t dst_generation_ = 0;

  // h depends only on (destination set, scale), both constant across the
  // replans of a whole simulation run, so it is precomputed per cell and
  // reused until the destinations change.
  std::vector<double> h_cache_;
  std::vector<std::int32_t> h_dst_cache_;
  std::vector<GridCoord> cached_dsts_;
  double cached_scale_ = -1.0;
};

/// Convenience wrapper constructing a Planner per call.
std::optional<Route> plan_route(const GridMap& map, const DensityMap& dmap, GridCoord src,
                                std::span<const GridCoord> dsts, const RouterOptions& opts = {},
                                SearchStats* stats = nullptr);

}  // namespace evac
