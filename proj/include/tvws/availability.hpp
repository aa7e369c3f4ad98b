#pragma once

#include "tvws/channel_plan.hpp"
#include "tvws/coverage.hpp"
#include "tvws/geo.hpp"
#include "tvws/keepout.hpp"
#include "tvws/txdb.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tvws {

using DiskMap = std::map<std::string, CoverageDisk, std::less<>>;
using RasterMap = std::map<std::string, CoverageRaster, std::less<>>;

/// Channel occupancy at one location.
///
/// vacant and occupied partition the plan's interleaved channels; rho is the
/// number of vacant ones. per_channel_blockers lists, for every channel that
/// some transmitter protects at this location (cleared channels included),
/// the ids of those transmitters in database order.
struct AvailabilityResult {
  NgPoint location;
  double p_cr_watts = 0;
  ChannelSet vacant;
  ChannelSet occupied;
  std::size_t rho = 0;
  /// Vacant channels with no occupied neighbour; see adjacent_filter().
  ChannelSet filtered_vacant;
  std::map<int, std::vector<std::string>> per_channel_blockers;
};

/// Occupancy under the disk model: channel m is occupied when some
/// transmitter carrying m lies strictly closer than its keep-out radius R'.
/// A CR exactly at R' is permitted. Throws DataError when a transmitter has
/// no disk, DomainError for invalid query parameters.
AvailabilityResult availability(const TransmitterDb& db, const DiskMap& disks, const ChannelPlan& plan,
                                const QueryParams& q);

/// Low-power occupancy from exact coverage maps: channel m is occupied when
/// the raster of some transmitter carrying m covers loc. This is the
/// zero-power limit and an upper bound on the vacant set.
AvailabilityResult availability_lowpower(const TransmitterDb& db, const RasterMap& rasters,
                                         const ChannelPlan& plan, const NgPoint& loc);

/// Vacant channels whose neighbours c-1 and c+1 are not occupied. Channels
/// outside the interleaved plan never block, except those in
/// `extra_blockers` (e.g. the excluded channels in strict mode). The
/// neighbours of 21 and 68 outside the UHF band never block.
ChannelSet adjacent_filter(const AvailabilityResult& result, const ChannelSet& extra_blockers = {});

struct ChannelRun {
  int first;
  int last;
  int length() const noexcept { return last - first + 1; }
  friend bool operator==(const ChannelRun&, const ChannelRun&) = default;
};

struct Contiguity {
  std::vector<ChannelRun> runs;
  double max_contiguous_mhz = 0;
};

/// Maximal runs of consecutive channel numbers.
Contiguity contiguity(const ChannelSet& vacant);

struct SweepPoint {
  double power_watts;
  std::size_t rho;
  std::size_t filtered_rho;
};

/// One availability() evaluation per power, in input order. Throws
/// DomainError for an empty list or a negative power.
std::vector<SweepPoint> power_sweep(const TransmitterDb& db, const DiskMap& disks, const ChannelPlan& plan,
                                    const NgPoint& loc, const std::vector<double>& powers,
                                    const PropagationParams& prop, unsigned workers = 1);

/// rho sampled at cell centres over a region; row 0 is the northern edge.
struct RhoGrid {
  NgPoint origin;
  double cell_size_m = 0;
  int ncols = 0;
  int nrows = 0;
  std::vector<int> values;

  int at(int row, int col) const { return values.at(static_cast<std::size_t>(row) * ncols + col); }
  NgPoint cell_center(int row, int col) const noexcept {
    return {origin.easting + (col + 0.5) * cell_size_m, origin.northing + (nrows - row - 0.5) * cell_size_m};
  }
};

/// rho (or the adjacent-filtered count when `filtered`) at every cell centre
/// of `region`, which is covered by ceil(width/cell) x ceil(height/cell) cells.
RhoGrid availability_grid(const TransmitterDb& db, const DiskMap& disks, const ChannelPlan& plan,
                          const BoundingBox& region, double cell_size_m, double p_cr_watts,
                          const PropagationParams& prop, bool filtered = false, unsigned workers = 1);

std::string write_rho_asc(const RhoGrid& grid);

/// Runs fn(0) .. fn(n-1) on up to `workers` threads. Each index is handled
/// exactly once. If any call throws, the exception from the lowest index is
/// rethrown after all threads have joined, as a sequential loop would.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn);

} // namespace tvws
