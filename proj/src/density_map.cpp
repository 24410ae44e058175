#include "evac/density_map.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace evac {

namespace {

const double kSqrt2Pi = std::sqrt(2.0 * std::numbers::pi);

std::atomic<std::uint64_t> g_density_version{0};

/// Gaussian patch weights for offsets within Chebyshev distance <= radius,
/// laid out row-major as a (2r+1) x (2r+1) block centred on the agent cell.
/// Both the scalar and the SIMD accumulation paths consume this same table,
/// which is one of the two ingredients of their bit-identical results (the
/// other being the fixed mul-then-add shape of the axpy kernel).
std::vector<double> make_patch_table(int radius) {
  const int side = 2 * radius + 1;
  std::vector<double> w(static_cast<std::size_t>(side) * side);
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      const double d2 = static_cast<double>(dx * dx + dy * dy);
      w[static_cast<std::size_t>(dy + radius) * side + (dx + radius)] = std::exp(-0.5 * d2);
    }
  }
  return w;
}

}  // namespace

DensityMap::DensityMap(int width, int height, double gamma, int patch_radius,
                       std::vector<double> rho, std::uint64_t version)
    : width_(width),
      height_(height),
      gamma_(gamma),
      patch_radius_(patch_radius),
      version_(version),
      rho_(std::move(rho)) {
  if (rho_.size() != static_cast<std::size_t>(width_) * height_) {
    throw std::invalid_argument("density field size does not match dimensions");
  }
}

double DensityMap::at(GridCoord c) const {
  if (c.x < 0 || c.y < 0 || c.x >= width_ || c.y >= height_) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "density query out of bounds: (%d, %d)", c.x, c.y);
    throw std::out_of_range(buf);
  }
  return value(c.x, c.y);
}

PopulationCounts bin_positions(std::span<const WorldPos> positions, const GridMap& map) {
  PopulationCounts counts;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const auto cell = map.cell_of(positions[i]);
    if (!cell) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "position %zu out of bounds: (%g, %g)", i, positions[i].x,
                    positions[i].y);
      throw std::out_of_range(buf);
    }
    ++counts[*cell];
  }
  return counts;
}

DensityMap build_density_with(const kernels::KernelSet& ks, const PopulationCounts& counts,
                              const GridMap& map, const DensityParams& params) {
  if (!(params.gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (params.patch_radius < 0) throw std::invalid_argument("patch_radius must be >= 0");

  const int w = map.width();
  const int h = map.height();
  const int r = params.patch_radius;
  const int side = 2 * r + 1;
  const std::vector<double> weights = make_patch_table(r);

  std::vector<double> rho(static_cast<std::size_t>(w) * h, 0.0);

  // counts is keyed in row-major order, so the accumulation order into any
  // given target cell is fixed regardless of how the counts were produced.
  for (const auto& [cell, n] : counts) {
    if (!map.in_bounds(cell)) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "population cell out of bounds: (%d, %d)", cell.x, cell.y);
      throw std::invalid_argument(buf);
    }
    if (n <= 0) throw std::invalid_argument("population counts must be >= 1");

    const double amp = (params.gamma * static_cast<double>(n)) / kSqrt2Pi;
    const int y0 = std::max(0, cell.y - r);
    const int y1 = std::min(h - 1, cell.y + r);
    const int x0 = std::max(0, cell.x - r);
    const int x1 = std::min(w - 1, cell.x + r);
    const std::size_t len = static_cast<std::size_t>(x1 - x0 + 1);
    for (int y = y0; y <= y1; ++y) {
      double* dst = rho.data() + static_cast<std::size_t>(y) * w + x0;
      const double* src = weights.data() +
                          static_cast<std::size_t>(y - cell.y + r) * side + (x0 - cell.x + r);
      ks.axpy(dst, src, amp, len);
    }
  }

  const std::uint64_t version = g_density_version.fetch_add(1, std::memory_order_relaxed) + 1;
  return DensityMap(w, h, params.gamma, params.patch_radius, std::move(rho), version);
}

DensityMap build_density(const PopulationCounts& counts, const GridMap& map,
                         const DensityParams& params) {
  return build_density_with(kernels::kernels(), counts, map, params);
}

double query_density(const DensityMap& dmap, GridCoord c) { return dmap.at(c); }

double single_agent_peak(double gamma) { return gamma / kSqrt2Pi; }

std::string render_heatmap_csv(const DensityMap& dmap) {
  std::string out = "x,y,rho\n";
  out.reserve(out.size() + static_cast<std::size_t>(dmap.width()) * dmap.height() * 12);
  char buf[64];
  for (int y = 0; y < dmap.height(); ++y) {
    for (int x = 0; x < dmap.width(); ++x) {
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", x, y, dmap.value(x, y));
      out += buf;
    }
  }
  return out;
}

}  // namespace evac
