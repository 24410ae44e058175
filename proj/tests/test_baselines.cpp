#include <doctest.h>

#include <cmath>
#include <limits>

#include "evac/baselines.hpp"
#include "evac/rng.hpp"
#include "evac/router.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace evac;

namespace {

GridMap walled_map(Rng& rng, int side, int exits) {
  std::string text;
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) text += rng.unit() < 0.25 ? '#' : '.';
    text += '\n';
  }
  for (int i = 0; i < exits; ++i) {
    const int x = static_cast<int>(rng.below(static_cast<std::uint64_t>(side)));
    const int y = static_cast<int>(rng.below(static_cast<std::uint64_t>(side)));
    text[static_cast<std::size_t>(y) * (side + 1) + x] = 'E';
  }
  return GridMap::parse(text);
}

DensityMap noise_density(Rng& rng, const GridMap& map) {
  std::vector<double> rho(static_cast<std::size_t>(map.cell_count()));
  for (auto& v : rho) v = 6.0 * rng.unit();
  return DensityMap(map.width(), map.height(), 5.0, 3, std::move(rho), 0);
}

}  // namespace

TEST_SUITE("baselines") {

TEST_CASE("single-goal A* finds the oracle-optimal cost per destination") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const GridMap map = walled_map(rng, 15, 2);
    const DensityMap dmap = noise_density(rng, map);
    GridCoord src{-1, -1};
    for (int y = 0; y < map.height() && src.x < 0; ++y)
      for (int x = 0; x < map.width() && src.x < 0; ++x)
        if (map.kind(x, y) == CellKind::Free) src = {x, y};
    REQUIRE(src.x >= 0);

    const auto res = oracle::dijkstra_all(map, dmap, src, 0.5);
    for (const auto& dst : map.exits()) {
      const auto got = astar_single_goal(map, dmap, src, dst, {0.5});
      const double want = res.dist[map.cell_index(dst)];
      CAPTURE(trial);
      REQUIRE(got.has_value() == !std::isinf(want));
      if (got) {
        const double resummed = oracle::path_cost(
            oracle::walk_parents(res, map, map.cell_index(dst)), dmap, 0.5);
        CHECK(got->total_cost == resummed);
        CHECK(oracle::route_valid(*got, map, dmap, src, std::span(&dst, 1), 0.5));
      }
    }
  }
}

TEST_CASE("repeated A* keeps the cheapest destination") {
  Rng rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const GridMap map = walled_map(rng, 15, 3);
    const DensityMap dmap = noise_density(rng, map);
    GridCoord src{-1, -1};
    for (int y = map.height() - 1; y >= 0 && src.x < 0; --y)
      for (int x = 0; x < map.width() && src.x < 0; ++x)
        if (map.kind(x, y) == CellKind::Free) src = {x, y};
    REQUIRE(src.x >= 0);

    const auto got = repeated_astar(map, dmap, src, map.exits(), {0.5});
    double best = std::numeric_limits<double>::infinity();
    for (const auto& dst : map.exits()) {
      const auto one = astar_single_goal(map, dmap, src, dst, {0.5});
      if (one) best = std::min(best, one->total_cost);
    }
    REQUIRE(got.has_value() == !std::isinf(best));
    if (got) CHECK(got->total_cost == best);
  }
}

TEST_CASE("all three planners agree with the single-pass router on cost") {
  Rng rng(33);
  for (int trial = 0; trial < 25; ++trial) {
    const GridMap map = walled_map(rng, 18, 4);
    const DensityMap dmap = noise_density(rng, map);
    std::vector<GridCoord> free_cells;
    for (int y = 0; y < map.height(); ++y)
      for (int x = 0; x < map.width(); ++x)
        if (map.kind(x, y) == CellKind::Free) free_cells.push_back({x, y});
    if (free_cells.empty()) continue;
    const GridCoord src = free_cells[rng.below(free_cells.size())];

    const auto sp = plan_route(map, dmap, src, map.exits(), {0.5});
    const auto rep = repeated_astar(map, dmap, src, map.exits(), {0.5});
    const auto dij = dijkstra_best_exit(map, dmap, src, map.exits(), {0.5});
    REQUIRE(sp.has_value() == rep.has_value());
    REQUIRE(sp.has_value() == dij.has_value());
    if (sp) {
      CHECK(sp->total_cost == rep->total_cost);
      CHECK(sp->total_cost == dij->total_cost);
    }
  }
}

TEST_CASE("stats accumulate across the repeated passes") {
  const GridMap map = testutil::open_map(10, 10, {{0, 0}, {9, 9}, {9, 0}});
  const DensityMap dmap = testutil::zero_density(map);
  SearchStats one, all;
  REQUIRE(astar_single_goal(map, dmap, {5, 5}, {0, 0}, {1.0}, &one));
  REQUIRE(repeated_astar(map, dmap, {5, 5}, map.exits(), {1.0}, &all));
  CHECK(all.expansions > one.expansions);  // three searches worth of work
  CHECK(all.pops >= 3);
}

TEST_CASE("baselines validate sources and destinations") {
  const GridMap map = GridMap::parse("E..\n.#.\n...\n");
  const DensityMap dmap = testutil::zero_density(map);
  CHECK_THROWS_AS(astar_single_goal(map, dmap, {1, 1}, {0, 0}, {0.5}), std::invalid_argument);
  CHECK_THROWS_AS(astar_single_goal(map, dmap, {0, 1}, {1, 1}, {0.5}), std::invalid_argument);
  CHECK_THROWS_AS(repeated_astar(map, dmap, {0, 1}, {}, {0.5}), std::invalid_argument);
  CHECK_THROWS_AS(dijkstra_best_exit(map, dmap, {0, 1}, {}, {0.5}), std::invalid_argument);
}

TEST_CASE("walled-off sources give no-route across all baselines") {
  const GridMap map = GridMap::parse("E#.\n.#.\n.#.\n");
  const DensityMap dmap = testutil::zero_density(map);
  CHECK_FALSE(astar_single_goal(map, dmap, {2, 1}, {0, 0}, {0.5}).has_value());
  CHECK_FALSE(repeated_astar(map, dmap, {2, 1}, map.exits(), {0.5}).has_value());
  CHECK_FALSE(dijkstra_best_exit(map, dmap, {2, 1}, map.exits(), {0.5}).has_value());
}

}  // TEST_SUITE
