#pragma once

#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace evac {

inline constexpr double kSqrt2 = std::numbers::sqrt2;

enum class CellKind : unsigned char { Free, Wall, Exit };

struct GridCoord {
  int x = 0;  // column
  int y = 0;  // row
  friend constexpr bool operator==(const GridCoord&, const GridCoord&) = default;
};

// Canonical (row-major) ordering: y first, then x. Used wherever iteration
// order or tie-breaking must be deterministic.
struct RowMajorLess {
  constexpr bool operator()(GridCoord a, GridCoord b) const noexcept {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  }
};

struct WorldPos {
  double x = 0.0;  // meters
  double y = 0.0;
  friend constexpr bool operator==(const WorldPos&, const WorldPos&) = default;
};

struct Neighbor {
  GridCoord pos;
  double step;  // step length in cell units: 1 or sqrt(2)
};

// Raised by GridMap::parse. Lines and columns are 1-based; document-level
// problems (empty map, no exits) report line 0, column 0.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

// Discretized floorplan: free space, walls and exit cells plus the
// world-to-grid scale. Immutable after construction; safe to share across
// any number of concurrent readers.
class GridMap {
 public:
  GridMap(int width, int height, double cell_size, std::vector<CellKind> cells);

  // Parses the ASCII map format: optional "@key=value" header lines followed
  // by rows of '.' (free), '#' (wall) and 'E' (exit). Throws ParseError.
  static GridMap parse(std::string_view text);

  // Inverse of parse for canonical documents (header emitted only when
  // cell_size differs from 1).
  std::string serialize() const;

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  double cell_size() const noexcept { return cell_size_; }
  double world_width() const noexcept { return width_ * cell_size_; }
  double world_height() const noexcept { return height_ * cell_size_; }
  int cell_count() const noexcept { return width_ * height_; }
  int free_cell_count() const noexcept { return free_cells_; }

  bool in_bounds(GridCoord c) const noexcept {
    return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
  }
  int cell_index(GridCoord c) const noexcept { return c.y * width_ + c.x; }

  // Unchecked accessor for hot paths.
  CellKind kind(int x, int y) const noexcept {
    return cells_[static_cast<std::size_t>(y) * width_ + x];
  }
  // Bounds-checked accessor.
  CellKind at(GridCoord c) const;

  bool walkable(GridCoord c) const noexcept {
    return in_bounds(c) && kind(c.x, c.y) != CellKind::Wall;
  }

  // Exit cells in reading order (top-to-bottom, left-to-right).
  std::span<const GridCoord> exits() const noexcept { return exits_; }

  // Connected-component label per exit cell (8-adjacency), parallel to
  // exits(). Adjacent exit cells form one labelled exit for reporting.
  std::vector<int> exit_labels() const;

  // 8-connected non-wall neighbors. Cardinal steps have length 1, diagonal
  // steps sqrt(2). A diagonal neighbor is excluded when both flanking
  // cardinal cells are walls. Throws std::invalid_argument for an
  // out-of-bounds or wall cell.
  std::vector<Neighbor> neighbors(GridCoord c) const;

  // Same adjacency rule without allocation or precondition checks; `fn` is
  // called as fn(GridCoord, double step).
  template <typename Fn>
  void for_each_neighbor(GridCoord c, Fn&& fn) const {
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const GridCoord n{c.x + dx, c.y + dy};
        if (!in_bounds(n) || kind(n.x, n.y) == CellKind::Wall) continue;
        if (dx != 0 && dy != 0) {
          const bool flank_a = kind(c.x + dx, c.y) == CellKind::Wall;
          const bool flank_b = kind(c.x, c.y + dy) == CellKind::Wall;
          if (flank_a && flank_b) continue;  // no corner cutting
        }
        fn(n, (dx != 0 && dy != 0) ? kSqrt2 : 1.0);
      }
    }
  }

  // Grid cell containing a world point, or nullopt outside the world
  // rectangle [0, world_width) x [0, world_height).
  std::optional<GridCoord> cell_of(WorldPos p) const noexcept;

  // World coordinates of a cell center.
  WorldPos center(GridCoord c) const noexcept {
    return {(c.x + 0.5) * cell_size_, (c.y + 0.5) * cell_size_};
  }

 private:
  int width_;
  int height_;
  double cell_size_;
  std::vector<CellKind> cells_;
  std::vector<GridCoord> exits_;
  int free_cells_ = 0;
};

struct MapDiagnostics {
  int unreachable_free_cells = 0;
  std::vector<GridCoord> unreachable;  // row-major order
};

// Flood-fills from the exits and reports every Free cell from which no exit
// can be reached. 0 unreachable cells means the map is valid for simulation.
MapDiagnostics validate_map(const GridMap& map);

}  // namespace evac
