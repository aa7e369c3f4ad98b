#pragma once

#include "tvws/geo.hpp"
#include "tvws/keepout.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tvws {

struct Transmitter;

/// Boolean coverage map of one transmitter.
///
/// Row 0 is the northernmost row (ESRI ASCII order); column 0 is westernmost.
/// Cell (row, col) spans easting [x0 + col*s, x0 + (col+1)*s) and northing
/// [y0 + (nrows-row-1)*s, y0 + (nrows-row)*s).
class CoverageRaster {
public:
  CoverageRaster() = default;
  /// Throws DomainError for non-positive cell size or empty dimensions.
  CoverageRaster(std::string transmitter_id, NgPoint origin, double cell_size_m, int ncols, int nrows);

  const std::string& transmitter_id() const noexcept { return id_; }
  const NgPoint& origin() const noexcept { return origin_; }
  double cell_size_m() const noexcept { return cell_; }
  int ncols() const noexcept { return ncols_; }
  int nrows() const noexcept { return nrows_; }

  bool at(int row, int col) const { return cells_[index(row, col)] != 0; }
  void set(int row, int col, bool covered) { cells_[index(row, col)] = covered ? 1 : 0; }

  NgPoint cell_center(int row, int col) const noexcept;
  std::size_t covered_count() const noexcept;

  /// Extent as [min, max] (closed on both ends for membership purposes).
  BoundingBox extent() const noexcept;

  friend bool operator==(const CoverageRaster&, const CoverageRaster&) = default;

private:
  std::size_t index(int row, int col) const;

  std::string id_;
  NgPoint origin_;
  double cell_ = 1;
  int ncols_ = 0;
  int nrows_ = 0;
  std::vector<std::uint8_t> cells_;
};

/// Transmitter-centred disk containing the whole coverage area.
struct CoverageDisk {
  std::string transmitter_id;
  NgPoint center;
  double radius_m = 0;

  friend bool operator==(const CoverageDisk&, const CoverageDisk&) = default;
};

struct CellIndex {
  int row;
  int col;
};

/// Snaps p to the nearest cell center. Points outside the raster extent give
/// no cell. On a boundary between two cells the lower row index (the northern
/// cell) wins, then the lower column index (the western cell).
bool snap(const CoverageRaster& raster, const NgPoint& p, CellIndex& out) noexcept;

/// Value of the cell nearest to p; false outside the raster.
bool covers(const CoverageRaster& raster, const NgPoint& p) noexcept;

/// Smallest disk centred at tx.position that contains every covered cell in
/// full: the radius is the largest distance from the transmitter to a corner
/// of a covered cell. Throws DataError when no cell is covered or the raster
/// belongs to another transmitter.
CoverageDisk enclosing_disk(const CoverageRaster& raster, const Transmitter& tx);

/// Receiver sensitivity used to turn ERP into a nominal coverage radius for
/// synthetic data. With alpha = 3 and beta_th = 1 a 200 kW transmitter
/// reaches 60 km.
inline constexpr double kDefaultSensitivityWatts = 200000.0 / (60000.0 * 60000.0 * 60000.0);

/// R_tv = (p_tv / (beta_th * p_min))^(1/alpha).
double nominal_coverage_radius(double p_tv, const PropagationParams& prop,
                               double p_min = kDefaultSensitivityWatts);

/// Synthetic coverage map.
///
/// The coverage boundary at bearing theta is R_tv * (1 + irregularity * n(theta))
/// where n is a smooth random periodic function in [-1, 1] drawn from `seed`.
/// With irregularity 0 the covered cells are exactly those whose centres lie
/// within R_tv of the transmitter. The transmitter sits at a cell centre.
CoverageRaster synth_coverage(const Transmitter& tx, const PropagationParams& prop, double cell_size_m,
                              double irregularity, std::uint64_t seed,
                              double p_min = kDefaultSensitivityWatts);

/// ESRI ASCII grid: ncols, nrows, xllcorner|xllcenter, yllcorner|yllcenter,
/// cellsize, optional NODATA_value, then rows north to south. Cells holding
/// NODATA count as uncovered; other values must be 0 or 1.
CoverageRaster read_asc(std::string_view text, std::string transmitter_id);
std::string write_asc(const CoverageRaster& raster);

/// Disk cache line: "center_e center_n radius_m".
CoverageDisk read_disk(std::string_view text, std::string transmitter_id);
std::string write_disk(const CoverageDisk& disk);

} // namespace tvws
