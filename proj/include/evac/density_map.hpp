#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "evac/grid_map.hpp"
#include "evac/simd_kernels.hpp"

namespace evac {

/// Agents binned to cells. Row-major key order so that iteration (and hence
/// floating-point accumulation order in build_density) is deterministic.
using PopulationCounts = std::map<GridCoord, int, RowMajorLess>;

struct DensityParams {
  double gamma = 5.0;    // congestion coefficient
  int patch_radius = 3;  // Chebyshev cutoff, in cells
};

/// Immutable per-cell congestion field.
///
/// Each rebuild produces a fresh snapshot with a strictly larger version
/// number; readers can keep using an old snapshot while a new one is built.
class DensityMap {
public:
  DensityMap() = default;  // empty placeholder, width()==height()==0

  DensityMap(int width, int height, double gamma, int patch_radius, std::vector<double> rho,
             std::uint64_t version);

  int width() const { return width_; }
  int height() const { return height_; }
  double gamma() const { return gamma_; }
  int patch_radius() const { return patch_radius_; }
  std::uint64_t version() const { return version_; }
  bool empty() const { return rho_.empty(); }

  /// Unchecked read, row-major indexing. Hot path for the planner.
  double value(int x, int y) const { return rho_[static_cast<std::size_t>(y) * width_ + x]; }

  /// Bounds-checked read; throws std::out_of_range.
  double at(GridCoord c) const;

  std::span<const double> field() const { return rho_; }

private:
  int width_ = 0;
  int height_ = 0;
  double gamma_ = 0.0;
  int patch_radius_ = 0;
  std::uint64_t version_ = 0;
  std::vector<double> rho_;
};

/// Bins world positions into cell counts.
/// Throws std::out_of_range naming the index of the first offending position.
PopulationCounts bin_positions(std::span<const WorldPos> positions, const GridMap& map);

/// Builds the congestion field: every agent cell contributes
/// gamma*N/sqrt(2*pi) * exp(-((xi-x)^2+(yi-y)^2)/2) to each cell of its patch
/// (Chebyshev distance <= patch_radius). Cells outside every patch stay 0.
DensityMap build_density(const PopulationCounts& counts, const GridMap& map,
                         const DensityParams& params = {});

/// Same as build_density but with an explicit kernel set, so callers (mostly
/// tests) can pin the scalar or SIMD variant. Results are bit-identical
/// across kernel sets by construction.
DensityMap build_density_with(const kernels::KernelSet& ks, const PopulationCounts& counts,
                              const GridMap& map, const DensityParams& params = {});

/// Bounds-checked point query; throws std::out_of_range.
double query_density(const DensityMap& dmap, GridCoord c);

/// One agent's contribution at its own cell: gamma / sqrt(2*pi). Bitwise
/// identical to what build_density adds there, so subtracting it removes an
/// agent's self-contribution exactly.
double single_agent_peak(double gamma);

/// Debug dump for plotting: "x,y,rho" rows, full precision.
std::string render_heatmap_csv(const DensityMap& dmap);

}  // namespace evac
