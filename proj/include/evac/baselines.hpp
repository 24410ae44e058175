#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "evac/router.hpp"

namespace evac {

namespace detail {

/// Per-cell search arrays shared by the baseline planners. Generation-
/// stamped like the main planner's so instances can be reused without
/// per-run clearing — keeps benchmark comparisons about the algorithms,
/// not about who allocates.
struct BaselineScratch {
  explicit BaselineScratch(const GridMap& map);

  void begin_run();

  struct Entry {
    double f;
    double h;
    std::int32_t id;
    std::uint32_t seq;
  };

  std::uint32_t generation = 0;
  std::vector<std::uint32_t> stamp;
  std::vector<unsigned char> closed;
  std::vector<std::uint32_t> seq;
  std::vector<double> g;
  std::vector<std::int32_t> parent;
  std::vector<Entry> heap;
};

}  // namespace detail

/// Textbook single-destination A* over the same grid and cost model.
/// Deliberately boring: admits a candidate whenever it strictly improves the
/// best-known g (classic decrease-key via lazy re-push), re-opening closed
/// cells if needed. Serves as the optimality oracle for the single-pass
/// planner.
class SingleGoalAstar {
 public:
  explicit SingleGoalAstar(const GridMap& map) : map_(&map), scratch_(map) {}

  std::optional<Route> plan(const DensityMap& dmap, GridCoord src, GridCoord dst,
                            const RouterOptions& opts = {}, SearchStats* stats = nullptr);

 private:
  const GridMap* map_;
  detail::BaselineScratch scratch_;
};

/// One full A* per destination, keeping the cheapest route. Stats accumulate
/// across the passes, which is what makes it the expansion-count baseline.
class RepeatedAstar {
 public:
  explicit RepeatedAstar(const GridMap& map) : inner_(map) {}

  std::optional<Route> plan(const DensityMap& dmap, GridCoord src, std::span<const GridCoord> dsts,
                            const RouterOptions& opts = {}, SearchStats* stats = nullptr);

 private:
  SingleGoalAstar inner_;
};

/// Uniform-cost search (h = 0) that stops at the first destination popped.
class DijkstraExit {
 public:
  explicit DijkstraExit(const GridMap& map) : map_(&map), scratch_(map) {}

  std::optional<Route> plan(const DensityMap& dmap, GridCoord src, std::span<const GridCoord> dsts,
                            const RouterOptions& opts = {}, SearchStats* stats = nullptr);

 private:
  const GridMap* map_;
  detail::BaselineScratch scratch_;
};

std::optional<Route> astar_single_goal(const GridMap& map, const DensityMap& dmap, GridCoord src,
                                       GridCoord dst, const RouterOptions& opts = {},
                                       SearchStats* stats = nullptr);

std::optional<Route> repeated_astar(const GridMap& map, const DensityMap& dmap, GridCoord src,
                                    std::span<const GridCoord> dsts, const RouterOptions& opts = {},
                                    SearchStats* stats = nullptr);

std::optional<Route> dijkstra_best_exit(const GridMap& map, const DensityMap& dmap, GridCoord src,
                                        std::span<const GridCoord> dsts,
                                        const RouterOptions& opts = {},
                                        SearchStats* stats = nullptr);

}  // namespace evac
