#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "evac/grid_map.hpp"

namespace evac::wire {

// Client→server lines. Coordinates in POS are world meters.
struct PosCmd {
  std::uint64_t user = 0;
  double x = 0.0;
  double y = 0.0;
};
struct PlanCmd {
  std::uint64_t user = 0;
};
struct ByeCmd {
  std::uint64_t user = 0;
};
struct SubDmapCmd {};

using ClientCmd = std::variant<PosCmd, PlanCmd, ByeCmd, SubDmapCmd>;

/// Parses one newline-stripped client line. nullopt means malformed; the
/// server answers those with "ERR 0 400 parse".
std::optional<ClientCmd> parse_client_line(std::string_view line);

// Server→client lines, newline included.
std::string format_route(std::uint64_t user, std::uint64_t version,
                         std::span<const GridCoord> cells);
std::string format_err(std::uint64_t user, int code, std::string_view msg);
std::string format_dmap(std::uint64_t version);

}  // namespace evac::wire
