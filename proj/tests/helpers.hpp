#pragma once

#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

#include "evac/density_map.hpp"
#include "evac/grid_map.hpp"

namespace testutil {

// All-free w x h map with an exit in the top-left corner unless positions
// are given. Rows of '.' with 'E' patched in.
inline evac::GridMap open_map(int w, int h, std::vector<evac::GridCoord> exits = {{0, 0}}) {
  std::string text;
  for (int y = 0; y < h; ++y) {
    text.append(static_cast<std::size_t>(w), '.');
    text += '\n';
  }
  for (const auto& e : exits) text[static_cast<std::size_t>(e.y) * (w + 1) + e.x] = 'E';
  return evac::GridMap::parse(text);
}

inline evac::DensityMap zero_density(const evac::GridMap& map, double gamma = 5.0,
                                     int patch_radius = 3) {
  std::vector<double> rho(static_cast<std::size_t>(map.cell_count()), 0.0);
  return evac::DensityMap(map.width(), map.height(), gamma, patch_radius, std::move(rho), 0);
}

// Density field with explicit per-cell values, everything else zero.
inline evac::DensityMap density_with(const evac::GridMap& map,
                                     const std::vector<std::pair<evac::GridCoord, double>>& vals,
                                     double gamma = 5.0, int patch_radius = 3) {
  std::vector<double> rho(static_cast<std::size_t>(map.cell_count()), 0.0);
  for (const auto& [c, v] : vals) rho[static_cast<std::size_t>(map.cell_index(c))] = v;
  return evac::DensityMap(map.width(), map.height(), gamma, patch_radius, std::move(rho), 0);
}

inline std::string data_path(const std::string& name) {
#ifdef EVAC_DATA_DIR
  return std::string(EVAC_DATA_DIR) + "/" + name;
#else
  return "data/" + name;
#endif
}

inline evac::GridMap load_map(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return evac::GridMap::parse(text);
}

}  // namespace testutil
