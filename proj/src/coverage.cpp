#include "tvws/coverage.hpp"

#include "tvws/error.hpp"
#include "tvws/txdb.hpp"
#include "rng.hpp"
#include "text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>

namespace tvws {

CoverageRaster::CoverageRaster(std::string transmitter_id, NgPoint origin, double cell_size_m, int ncols,
                               int nrows)
    : id_(std::move(transmitter_id)), origin_(origin), cell_(cell_size_m), ncols_(ncols), nrows_(nrows) {
  if (!(cell_size_m > 0) || !std::isfinite(cell_size_m)) throw DomainError("raster cell size must be > 0");
  if (ncols < 1 || nrows < 1) throw DomainError("raster needs at least one row and one column");
  if (!std::isfinite(origin.easting) || !std::isfinite(origin.northing))
    throw DomainError("raster origin must be finite");
  cells_.assign(static_cast<std::size_t>(ncols) * static_cast<std::size_t>(nrows), 0);
}

std::size_t CoverageRaster::index(int row, int col) const {
  if (row < 0 || row >= nrows_ || col < 0 || col >= ncols_)
    throw DomainError("raster cell (" + std::to_string(row) + ", " + std::to_string(col) + ") out of range");
  return static_cast<std::size_t>(row) * static_cast<std::size_t>(ncols_) + static_cast<std::size_t>(col);
}

NgPoint CoverageRaster::cell_center(int row, int col) const noexcept {
  return {origin_.easting + (col + 0.5) * cell_, origin_.northing + (nrows_ - row - 0.5) * cell_};
}

std::size_t CoverageRaster::covered_count() const noexcept {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

BoundingBox CoverageRaster::extent() const noexcept {
  return {origin_, {origin_.easting + ncols_ * cell_, origin_.northing + nrows_ * cell_}};
}

namespace {

// Index of the cell containing offset f (in cells) along one axis, with
// boundaries going to the lower index. nullopt outside [0, n].
std::optional<int> snap_axis(double f, int n) noexcept {
  if (!(f >= 0) || f > n) return std::nullopt;
  int i = static_cast<int>(std::floor(f));
  if (static_cast<double>(i) == f && i > 0) --i;
  return std::min(i, n - 1);
}

} // namespace

bool snap(const CoverageRaster& raster, const NgPoint& p, CellIndex& out) noexcept {
  const double s = raster.cell_size_m();
  const double top = raster.origin().northing + raster.nrows() * s;
  const auto col = snap_axis((p.easting - raster.origin().easting) / s, raster.ncols());
  const auto row = snap_axis((top - p.northing) / s, raster.nrows());
  if (!col || !row) return false;
  out = {*row, *col};
  return true;
}

bool covers(const CoverageRaster& raster, const NgPoint& p) noexcept {
  CellIndex c{};
  return snap(raster, p, c) && raster.at(c.row, c.col);
}

CoverageDisk enclosing_disk(const CoverageRaster& raster, const Transmitter& tx) {
  if (raster.transmitter_id() != tx.id)
    throw DataError("raster of '" + raster.transmitter_id() + "' used for transmitter '" + tx.id + "'");
  const double half = raster.cell_size_m() / 2;
  double radius = -1;
  for (int r = 0; r < raster.nrows(); ++r) {
    for (int c = 0; c < raster.ncols(); ++c) {
      if (!raster.at(r, c)) continue;
      const NgPoint ctr = raster.cell_center(r, c);
      // Farthest point of an axis-aligned square from tx is one of its corners.
      const double dx = std::abs(ctr.easting - tx.position.easting) + half;
      const double dy = std::abs(ctr.northing - tx.position.northing) + half;
      radius = std::max(radius, std::hypot(dx, dy));
    }
  }
  if (radius < 0) throw DataError("coverage raster of '" + tx.id + "' has no covered cell");
  return {tx.id, tx.position, radius};
}

double nominal_coverage_radius(double p_tv, const PropagationParams& prop, double p_min) {
  prop.validate();
  if (!(p_tv > 0)) throw DomainError("TV transmitter power must be > 0");
  if (!(p_min > 0)) throw DomainError("receiver sensitivity must be > 0");
  return std::pow(p_tv / (prop.beta_th * p_min), 1.0 / prop.alpha);
}

CoverageRaster synth_coverage(const Transmitter& tx, const PropagationParams& prop, double cell_size_m,
                              double irregularity, std::uint64_t seed, double p_min) {
  if (!(cell_size_m > 0)) throw DomainError("cell size must be > 0");
  if (!(irregularity >= 0 && irregularity <= 1)) throw DomainError("irregularity must lie in [0, 1]");
  const double r_tv = nominal_coverage_radius(tx.erp_watts, prop, p_min);

  constexpr int kHarmonics = 6;
  std::array<double, kHarmonics> amp{};
  std::array<double, kHarmonics> phase{};
  detail::Rng rng(seed);
  double amp_sum = 0;
  for (int k = 0; k < kHarmonics; ++k) {
    amp[k] = rng.uniform(0.2, 1.0) / (k + 1);
    phase[k] = rng.uniform(0.0, 2 * std::numbers::pi);
    amp_sum += amp[k];
  }
  const auto boundary = [&](double theta) {
    double n = 0;
    for (int k = 0; k < kHarmonics; ++k) n += amp[k] * std::cos((k + 1) * theta + phase[k]);
    return r_tv * (1 + irregularity * n / amp_sum);
  };

  constexpr double kMaxHalfWidth = 10000;
  const double half_cells = std::ceil(r_tv * (1 + irregularity) / cell_size_m) + 1;
  if (!(half_cells <= kMaxHalfWidth))
    throw DomainError("coverage radius " + detail::format_double(r_tv) + " m needs a raster over " +
                      detail::format_double(2 * kMaxHalfWidth + 1) + " cells wide; use a larger cell size");
  const int k = static_cast<int>(half_cells);
  const int n = 2 * k + 1;
  const NgPoint origin{tx.position.easting - (k + 0.5) * cell_size_m,
                       tx.position.northing - (k + 0.5) * cell_size_m};
  CoverageRaster raster(tx.id, origin, cell_size_m, n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const NgPoint ctr = raster.cell_center(r, c);
      const double dx = ctr.easting - tx.position.easting;
      const double dy = ctr.northing - tx.position.northing;
      const double d = std::hypot(dx, dy);
      const double limit = irregularity == 0 ? r_tv : boundary(std::atan2(dy, dx));
      raster.set(r, c, d <= limit);
    }
  }
  return raster;
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

std::vector<std::string_view> tokens(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t b = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > b) out.push_back(text.substr(b, i - b));
  }
  return out;
}

} // namespace

CoverageRaster read_asc(std::string_view text, std::string transmitter_id) {
  const auto tok = tokens(text);
  const std::string where = "raster '" + transmitter_id + "': ";
  std::optional<double> ncols, nrows, x, y, cell, nodata;
  bool x_center = false, y_center = false;
  std::size_t i = 0;
  try {
    while (i + 1 < tok.size() && std::isalpha(static_cast<unsigned char>(tok[i].front()))) {
      const auto key = lower(tok[i]);
      const double v = detail::parse_double(tok[i + 1], key.c_str());
      if (key == "ncols") ncols = v;
      else if (key == "nrows") nrows = v;
      else if (key == "xllcorner") x = v;
      else if (key == "xllcenter") x = v, x_center = true;
      else if (key == "yllcorner") y = v;
      else if (key == "yllcenter") y = v, y_center = true;
      else if (key == "cellsize") cell = v;
      else if (key == "nodata_value") nodata = v;
      else throw ParseError("unknown header key '" + std::string(tok[i]) + "'");
      i += 2;
    }
    if (!ncols || !nrows || !x || !y || !cell)
      throw ParseError("header needs ncols, nrows, xllcorner, yllcorner and cellsize");
    if (*ncols != std::floor(*ncols) || *nrows != std::floor(*nrows) || *ncols < 1 || *nrows < 1 ||
        *ncols > 1e6 || *nrows > 1e6)
      throw ParseError("invalid raster dimensions");
    if (!(*cell > 0)) throw ParseError("cellsize must be > 0");
    if (x_center) *x -= *cell / 2;
    if (y_center) *y -= *cell / 2;

    CoverageRaster raster(transmitter_id, {*x, *y}, *cell, static_cast<int>(*ncols), static_cast<int>(*nrows));
    const std::size_t expected = static_cast<std::size_t>(*ncols) * static_cast<std::size_t>(*nrows);
    if (tok.size() - i != expected)
      throw ParseError("expected " + std::to_string(expected) + " cell values, found " +
                       std::to_string(tok.size() - i));
    for (int r = 0; r < raster.nrows(); ++r) {
      for (int c = 0; c < raster.ncols(); ++c) {
        const double v = detail::parse_double(tok[i++], "cell value");
        if (nodata && v == *nodata) continue;
        if (v != 0 && v != 1)
          throw ParseError("cell (" + std::to_string(r) + ", " + std::to_string(c) + ") holds " +
                           detail::format_double(v) + ", expected 0 or 1");
        raster.set(r, c, v == 1);
      }
    }
    return raster;
  } catch (const ParseError& e) {
    throw ParseError(where + e.what());
  } catch (const DomainError& e) {
    throw ParseError(where + e.what());
  }
}

std::string write_asc(const CoverageRaster& raster) {
  std::string out;
  out += "ncols " + std::to_string(raster.ncols()) + "\n";
  out += "nrows " + std::to_string(raster.nrows()) + "\n";
  out += "xllcorner " + detail::format_double(raster.origin().easting) + "\n";
  out += "yllcorner " + detail::format_double(raster.origin().northing) + "\n";
  out += "cellsize " + detail::format_double(raster.cell_size_m()) + "\n";
  out += "NODATA_value -9999\n";
  out.reserve(out.size() + 2 * static_cast<std::size_t>(raster.ncols() * raster.nrows()));
  for (int r = 0; r < raster.nrows(); ++r) {
    for (int c = 0; c < raster.ncols(); ++c) {
      if (c) out += ' ';
      out += raster.at(r, c) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

CoverageDisk read_disk(std::string_view text, std::string transmitter_id) {
  std::vector<std::string_view> fields;
  for (auto line : detail::split(text, '\n'))
    for (auto t : tokens(detail::strip_comment(line))) fields.push_back(t);
  const std::string where = "disk '" + transmitter_id + "': ";
  if (fields.size() != 3) throw ParseError(where + "expected 'center_e center_n radius_m'");
  try {
    CoverageDisk d{std::move(transmitter_id),
                   {detail::parse_double(fields[0], "easting"), detail::parse_double(fields[1], "northing")},
                   detail::parse_double(fields[2], "radius")};
    if (!(d.radius_m > 0) || !std::isfinite(d.radius_m)) throw ParseError("radius must be > 0");
    return d;
  } catch (const ParseError& e) {
    throw ParseError(where + e.what());
  }
}

std::string write_disk(const CoverageDisk& disk) {
  return detail::format_double(disk.center.easting) + " " + detail::format_double(disk.center.northing) + " " +
         detail::format_double(disk.radius_m) + "\n";
}

} // namespace tvws
