#include "evac/grid_map.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <numeric>

namespace evac {

GridMap::GridMap(int width, int height, double cell_size, std::vector<CellKind> cells)
    : width_(width), height_(height), cell_size_(cell_size), cells_(std::move(cells)) {
  if (width_ <= 0 || height_ <= 0) throw std::invalid_argument("grid dimensions must be positive");
  if (!(cell_size_ > 0.0)) throw std::invalid_argument("cell_size must be positive");
  if (cells_.size() != static_cast<std::size_t>(width_) * height_)
    throw std::invalid_argument("cell array size does not match dimensions");
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      switch (kind(x, y)) {
        case CellKind::Exit: exits_.push_back({x, y}); break;
        case CellKind::Free: ++free_cells_; break;
        case CellKind::Wall: break;
      }
    }
  }
  if (exits_.empty()) throw std::invalid_argument("map has no exits");
}

CellKind GridMap::at(GridCoord c) const {
  if (!in_bounds(c))
    throw std::out_of_range("cell (" + std::to_string(c.x) + "," + std::to_string(c.y) +
                            ") out of bounds");
  return kind(c.x, c.y);
}

namespace {

double parse_header_value(std::string_view value, int line_no, int col) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last)
    throw ParseError("malformed header value", line_no, col);
  return out;
}

}  // namespace

GridMap GridMap::parse(std::string_view text) {
  double cell_size = 1.0;
  std::vector<CellKind> cells;
  int width = -1;
  int rows = 0;
  int line_no = 0;
  bool grid_started = false;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      if (eol == std::string_view::npos) break;
      if (grid_started)
        throw ParseError("blank line inside grid", line_no, 1);
      continue;  // leading blank lines are tolerated
    }
    if (line.front() == '@') {
      if (grid_started) throw ParseError("header line after grid", line_no, 1);
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) throw ParseError("malformed header line", line_no, 1);
      const std::string_view key = line.substr(1, eq - 1);
      const std::string_view value = line.substr(eq + 1);
      if (key == "cell_size") {
        cell_size = parse_header_value(value, line_no, static_cast<int>(eq) + 2);
        if (!(cell_size > 0.0)) throw ParseError("cell_size must be positive", line_no, 1);
      } else {
        throw ParseError("unknown header key '" + std::string(key) + "'", line_no, 1);
      }
      continue;
    }
    // Grid row.
    if (width < 0) width = static_cast<int>(line.size());
    if (static_cast<int>(line.size()) != width)
      throw ParseError("row width " + std::to_string(line.size()) + " differs from " +
                           std::to_string(width),
                       line_no, static_cast<int>(line.size()) + 1);
    grid_started = true;
    for (std::size_t i = 0; i < line.size(); ++i) {
      switch (line[i]) {
        case '.': cells.push_back(CellKind::Free); break;
        case '#': cells.push_back(CellKind::Wall); break;
        case 'E': cells.push_back(CellKind::Exit); break;
        default:
          throw ParseError(std::string("unknown glyph '") + line[i] + "'", line_no,
                           static_cast<int>(i) + 1);
      }
    }
    ++rows;
  }

  if (rows == 0) throw ParseError("empty map document", 0, 0);
  const bool has_exit = std::any_of(cells.begin(), cells.end(),
                                    [](CellKind k) { return k == CellKind::Exit; });
  if (!has_exit) throw ParseError("map has no exits", 0, 0);
  return GridMap(width, rows, cell_size, std::move(cells));
}

std::string GridMap::serialize() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(width_ + 1) * height_ + 32);
  if (cell_size_ != 1.0) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "@cell_size=%g\n", cell_size_);
    out += buf;
  }
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      switch (kind(x, y)) {
        case CellKind::Free: out += '.'; break;
        case CellKind::Wall: out += '#'; break;
        case CellKind::Exit: out += 'E'; break;
      }
    }
    out += '\n';
  }
  return out;
}

std::vector<Neighbor> GridMap::neighbors(GridCoord c) const {
  if (!in_bounds(c))
    throw std::invalid_argument("neighbors: cell (" + std::to_string(c.x) + "," +
                                std::to_string(c.y) + ") out of bounds");
  if (kind(c.x, c.y) == CellKind::Wall)
    throw std::invalid_argument("neighbors: cell (" + std::to_string(c.x) + "," +
                                std::to_string(c.y) + ") is a wall");
  std::vector<Neighbor> out;
  out.reserve(8);
  for_each_neighbor(c, [&](GridCoord n, double step) { out.push_back({n, step}); });
  return out;
}

std::optional<GridCoord> GridMap::cell_of(WorldPos p) const noexcept {
  if (!(p.x >= 0.0) || !(p.y >= 0.0) || p.x >= world_width() || p.y >= world_height())
    return std::nullopt;
  return GridCoord{static_cast<int>(std::floor(p.x / cell_size_)),
                   static_cast<int>(std::floor(p.y / cell_size_))};
}

std::vector<int> GridMap::exit_labels() const {
  // Union-find over the exits list; adjacency is 8-connected.
  std::vector<int> parent(exits_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < exits_.size(); ++i) {
    for (std::size_t j = i + 1; j < exits_.size(); ++j) {
      if (std::abs(exits_[i].x - exits_[j].x) <= 1 && std::abs(exits_[i].y - exits_[j].y) <= 1) {
        parent[find(static_cast<int>(j))] = find(static_cast<int>(i));
      }
    }
  }
  std::vector<int> labels(exits_.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < exits_.size(); ++i) {
    const int root = find(static_cast<int>(i));
    if (labels[root] < 0) labels[root] = next++;
    labels[i] = labels[root];
  }
  return labels;
}

MapDiagnostics validate_map(const GridMap& map) {
  std::vector<char> reached(static_cast<std::size_t>(map.cell_count()), 0);
  std::deque<GridCoord> frontier;
  for (GridCoord e : map.exits()) {
    reached[map.cell_index(e)] = 1;
    frontier.push_back(e);
  }
  while (!frontier.empty()) {
    const GridCoord c = frontier.front();
    frontier.pop_front();
    map.for_each_neighbor(c, [&](GridCoord n, double) {
      char& r = reached[map.cell_index(n)];
      if (!r) {
        r = 1;
        frontier.push_back(n);
      }
    });
  }
  MapDiagnostics diag;
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      if (map.kind(x, y) == CellKind::Free && !reached[y * map.width() + x]) {
        ++diag.unreachable_free_cells;
        diag.unreachable.push_back({x, y});
      }
    }
  }
  return diag;
}

}  // namespace evac
