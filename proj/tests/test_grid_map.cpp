#include <doctest.h>

#include <algorithm>

#include "evac/grid_map.hpp"
#include "helpers.hpp"

using namespace evac;

TEST_SUITE("grid_map") {

TEST_CASE("parse counts kinds and dimensions") {
  const GridMap m = GridMap::parse("..E\n.#.\n...\n");
  CHECK(m.width() == 3);
  CHECK(m.height() == 3);
  CHECK(m.cell_size() == 1.0);
  CHECK(m.cell_count() == 9);
  CHECK(m.free_cell_count() == 7);
  CHECK(m.kind(2, 0) == CellKind::Exit);
  CHECK(m.kind(1, 1) == CellKind::Wall);
  CHECK(m.kind(0, 0) == CellKind::Free);
  REQUIRE(m.exits().size() == 1);
  CHECK(m.exits()[0] == GridCoord{2, 0});
}

TEST_CASE("serialize round-trips including the cell_size header") {
  const std::string canonical = "..E\n.#.\n...\n";
  CHECK(GridMap::parse(canonical).serialize() == canonical);

  const std::string with_header = "@cell_size=0.5\nE.\n..\n";
  const GridMap m = GridMap::parse(with_header);
  CHECK(m.cell_size() == 0.5);
  CHECK(m.world_width() == 1.0);
  CHECK(m.world_height() == 1.0);
  CHECK(m.serialize() == with_header);
  CHECK(GridMap::parse(m.serialize()).serialize() == m.serialize());
}

TEST_CASE("parse tolerates CRLF and leading blank lines") {
  const GridMap m = GridMap::parse("\n\n.E\r\n..\r\n");
  CHECK(m.width() == 2);
  CHECK(m.height() == 2);
  CHECK(m.kind(1, 0) == CellKind::Exit);
}

TEST_CASE("parse rejects malformed documents with positions") {
  CHECK_THROWS_AS(GridMap::parse(""), ParseError);
  CHECK_THROWS_AS(GridMap::parse("...\n...\n"), ParseError);  // no exits
  CHECK_THROWS_AS(GridMap::parse("..E\n....\n"), ParseError);  // ragged

  try {
    GridMap::parse(".E\n.x\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 2);
  }

  CHECK_THROWS_AS(GridMap::parse(".E\n\n..\n"), ParseError);       // blank line inside grid
  CHECK_THROWS_AS(GridMap::parse(".E\n@cell_size=1\n"), ParseError);  // header after grid
  CHECK_THROWS_AS(GridMap::parse("@size=3\n.E\n"), ParseError);       // unknown key
  CHECK_THROWS_AS(GridMap::parse("@cell_size\n.E\n"), ParseError);    // no '='
  CHECK_THROWS_AS(GridMap::parse("@cell_size=abc\n.E\n"), ParseError);
  CHECK_THROWS_AS(GridMap::parse("@cell_size=-1\n.E\n"), ParseError);
  CHECK_THROWS_AS(GridMap::parse("@cell_size=0\n.E\n"), ParseError);
}

TEST_CASE("at checks bounds, kind does not") {
  const GridMap m = GridMap::parse(".E\n..\n");
  CHECK(m.at({1, 0}) == CellKind::Exit);
  CHECK_THROWS_AS(m.at({2, 0}), std::out_of_range);
  CHECK_THROWS_AS(m.at({0, -1}), std::out_of_range);
  CHECK(m.in_bounds({1, 1}));
  CHECK_FALSE(m.in_bounds({2, 1}));
  CHECK(m.walkable({0, 0}));
  CHECK_FALSE(m.walkable({-1, 0}));
}

TEST_CASE("neighbors of an interior cell on an open map") {
  const GridMap m = testutil::open_map(3, 3);
  const auto nbs = m.neighbors({1, 1});
  REQUIRE(nbs.size() == 8);
  int diagonals = 0;
  for (const auto& nb : nbs) {
    if (nb.step == doctest::Approx(kSqrt2)) {
      ++diagonals;
    } else {
      CHECK(nb.step == 1.0);
    }
  }
  CHECK(diagonals == 4);
  CHECK(m.neighbors({0, 0}).size() == 3);
}

TEST_CASE("diagonal is blocked only when both flanking cells are walls") {
  // Moving (0,1) -> (1,0): flanks are (1,1) and (0,0).
  const GridMap both = GridMap::parse("#E\n.#\n");
  const auto nbs_both = both.neighbors({0, 1});
  CHECK(std::none_of(nbs_both.begin(), nbs_both.end(),
                     [](const Neighbor& n) { return n.pos == GridCoord{1, 0}; }));

  const GridMap one = GridMap::parse(".E\n.#\n");  // only (1,1) is a wall
  const auto nbs_one = one.neighbors({0, 1});
  CHECK(std::any_of(nbs_one.begin(), nbs_one.end(),
                    [](const Neighbor& n) { return n.pos == GridCoord{1, 0}; }));
}

TEST_CASE("neighbors rejects walls and out-of-bounds cells") {
  const GridMap m = GridMap::parse(".E\n#.\n");
  CHECK_THROWS_AS(m.neighbors({0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(m.neighbors({5, 5}), std::invalid_argument);
}

TEST_CASE("for_each_neighbor agrees with neighbors") {
  const GridMap m = GridMap::parse("..E\n.#.\n...\n");
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 3; ++x) {
      if (!m.walkable({x, y})) continue;
      std::vector<Neighbor> collected;
      m.for_each_neighbor({x, y}, [&](GridCoord c, double s) { collected.push_back({c, s}); });
      const auto expected = m.neighbors({x, y});
      REQUIRE(collected.size() == expected.size());
      for (std::size_t i = 0; i < collected.size(); ++i) {
        CHECK(collected[i].pos == expected[i].pos);
        CHECK(collected[i].step == expected[i].step);
      }
    }
  }
}

TEST_CASE("exits are reported in reading order and grouped by adjacency") {
  const GridMap m = GridMap::parse("EE..E\n.....\nE....\n");
  const auto exits = m.exits();
  REQUIRE(exits.size() == 4);
  CHECK(exits[0] == GridCoord{0, 0});
  CHECK(exits[1] == GridCoord{1, 0});
  CHECK(exits[2] == GridCoord{4, 0});
  CHECK(exits[3] == GridCoord{0, 2});

  const auto labels = m.exit_labels();
  REQUIRE(labels.size() == 4);
  CHECK(labels[0] == labels[1]);   // adjacent pair is one exit
  CHECK(labels[0] != labels[2]);
  CHECK(labels[2] != labels[3]);
  CHECK(*std::max_element(labels.begin(), labels.end()) == 2);
}

TEST_CASE("cell_of maps world points to cells and rejects outside points") {
  const GridMap m = GridMap::parse("@cell_size=2\n.E\n..\n");
  CHECK(m.cell_of({0.0, 0.0}) == GridCoord{0, 0});
  CHECK(m.cell_of({1.9, 0.1}) == GridCoord{0, 0});
  CHECK(m.cell_of({2.0, 3.9}) == GridCoord{1, 1});
  CHECK_FALSE(m.cell_of({4.0, 0.0}).has_value());  // right edge is exclusive
  CHECK_FALSE(m.cell_of({-0.001, 0.0}).has_value());
  CHECK_FALSE(m.cell_of({0.0, 4.0}).has_value());

  const WorldPos c = m.center({1, 1});
  CHECK(c.x == 3.0);
  CHECK(c.y == 3.0);
  CHECK(m.cell_of(c) == GridCoord{1, 1});
}

TEST_CASE("validate_map flood-fills from the exits") {
  const GridMap open = GridMap::parse("..E\n...\n");
  CHECK(validate_map(open).unreachable_free_cells == 0);

  // Bottom-right cell sealed off by walls.
  const GridMap sealed = GridMap::parse("E...\n..##\n..#.\n");
  const auto diag = validate_map(sealed);
  CHECK(diag.unreachable_free_cells == 1);
  REQUIRE(diag.unreachable.size() == 1);
  CHECK(diag.unreachable[0] == GridCoord{3, 2});
}

TEST_CASE("shipped maps validate clean") {
  const GridMap school = testutil::load_map(testutil::data_path("school_100x100.map"));
  CHECK(school.width() == 100);
  CHECK(school.height() == 100);
  CHECK(school.free_cell_count() == 9000);
  CHECK(school.exits().size() == 5);
  const auto labels = school.exit_labels();
  CHECK(*std::max_element(labels.begin(), labels.end()) == 4);  // five exits
  CHECK(validate_map(school).unreachable_free_cells == 0);

  const GridMap demo = testutil::load_map(testutil::data_path("two_exits_cluster.map"));
  CHECK(demo.exits().size() == 2);
  CHECK(validate_map(demo).unreachable_free_cells == 0);
}

}  // TEST_SUITE
