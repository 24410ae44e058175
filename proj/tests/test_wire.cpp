#include <doctest.h>

#include "evac/wire.hpp"

using namespace evac;
using namespace evac::wire;

TEST_SUITE("wire") {

TEST_CASE("POS parses user and world coordinates") {
  const auto cmd = parse_client_line("POS 7 12.5 30.0");
  REQUIRE(cmd);
  const auto* pos = std::get_if<PosCmd>(&*cmd);
  REQUIRE(pos);
  CHECK(pos->user == 7);
  CHECK(pos->x == 12.5);
  CHECK(pos->y == 30.0);
}

TEST_CASE("PLAN, BYE and SUB DMAP parse") {
  auto cmd = parse_client_line("PLAN 42");
  REQUIRE(cmd);
  CHECK(std::get_if<PlanCmd>(&*cmd)->user == 42);

  cmd = parse_client_line("BYE 9");
  REQUIRE(cmd);
  CHECK(std::get_if<ByeCmd>(&*cmd)->user == 9);

  cmd = parse_client_line("SUB DMAP");
  REQUIRE(cmd);
  CHECK(std::get_if<SubDmapCmd>(&*cmd) != nullptr);
}

TEST_CASE("parsing tolerates CR and repeated spaces") {
  CHECK(parse_client_line("PLAN 42\r").has_value());
  CHECK(parse_client_line("  POS  1   2   3  ").has_value());
}

TEST_CASE("malformed lines are rejected") {
  CHECK_FALSE(parse_client_line("").has_value());
  CHECK_FALSE(parse_client_line("   ").has_value());
  CHECK_FALSE(parse_client_line("NOPE 1").has_value());
  CHECK_FALSE(parse_client_line("POS 1 2").has_value());        // missing y
  CHECK_FALSE(parse_client_line("POS 1 2 3 4").has_value());    // extra field
  CHECK_FALSE(parse_client_line("POS x 2 3").has_value());      // bad user
  CHECK_FALSE(parse_client_line("POS 1 2a 3").has_value());     // trailing junk
  CHECK_FALSE(parse_client_line("PLAN").has_value());
  CHECK_FALSE(parse_client_line("PLAN -3").has_value());        // negative user
  CHECK_FALSE(parse_client_line("SUB").has_value());
  CHECK_FALSE(parse_client_line("SUB OTHER").has_value());
  CHECK_FALSE(parse_client_line("plan 2").has_value());         // commands are upper-case
}

TEST_CASE("server lines are newline-terminated and round-trip") {
  const evac::GridCoord cells[] = {{2, 0}, {1, 1}, {0, 2}};
  CHECK(format_route(7, 3, cells) == "ROUTE 7 3 3 2 0 1 1 0 2\n");
  CHECK(format_route(1, 1, {}) == "ROUTE 1 1 0\n");
  CHECK(format_err(0, 400, "parse") == "ERR 0 400 parse\n");
  CHECK(format_err(12, 404, "no route") == "ERR 12 404 no route\n");
  CHECK(format_dmap(17) == "DMAP 17\n");
}

}  // TEST_SUITE
