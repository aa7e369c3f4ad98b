#include "tvws/availability.hpp"

#include "tvws/error.hpp"
#include "text.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace tvws {

namespace {

std::vector<const CoverageDisk*> resolve(const TransmitterDb& db, const DiskMap& disks) {
  std::vector<const CoverageDisk*> out;
  out.reserve(db.size());
  for (const auto& tx : db.transmitters) {
    const auto it = disks.find(tx.id);
    if (it == disks.end()) throw DataError("no coverage disk for transmitter '" + tx.id + "'");
    out.push_back(&it->second);
  }
  return out;
}

AvailabilityResult finish(const ChannelPlan& plan, AvailabilityResult r, const ChannelSet& blocked) {
  r.occupied = blocked & plan.interleaved();
  r.vacant = plan.interleaved() - r.occupied;
  r.rho = r.vacant.size();
  r.filtered_vacant = adjacent_filter(r);
  return r;
}

AvailabilityResult evaluate(const TransmitterDb& db, const std::vector<const CoverageDisk*>& disks,
                            const ChannelPlan& plan, const QueryParams& q) {
  AvailabilityResult r;
  r.location = q.location;
  r.p_cr_watts = q.p_cr_watts;
  ChannelSet blocked;
  for (std::size_t j = 0; j < db.size(); ++j) {
    const auto& tx = db.transmitters[j];
    if (margin(q.location, tx, *disks[j], q) >= 0) continue;
    blocked |= tx.channels;
    tx.channels.for_each([&](int m) { r.per_channel_blockers[m].push_back(tx.id); });
  }
  return finish(plan, std::move(r), blocked);
}

} // namespace

AvailabilityResult availability(const TransmitterDb& db, const DiskMap& disks, const ChannelPlan& plan,
                                const QueryParams& q) {
  q.validate();
  return evaluate(db, resolve(db, disks), plan, q);
}

AvailabilityResult availability_lowpower(const TransmitterDb& db, const RasterMap& rasters,
                                         const ChannelPlan& plan, const NgPoint& loc) {
  AvailabilityResult r;
  r.location = loc;
  ChannelSet blocked;
  for (const auto& tx : db.transmitters) {
    const auto it = rasters.find(tx.id);
    if (it == rasters.end()) throw DataError("no coverage raster for transmitter '" + tx.id + "'");
    if (!covers(it->second, loc)) continue;
    blocked |= tx.channels;
    tx.channels.for_each([&](int m) { r.per_channel_blockers[m].push_back(tx.id); });
  }
  return finish(plan, std::move(r), blocked);
}

ChannelSet adjacent_filter(const AvailabilityResult& result, const ChannelSet& extra_blockers) {
  const ChannelSet blockers = result.occupied | extra_blockers;
  ChannelSet out;
  result.vacant.for_each([&](int c) {
    if (!blockers.contains(c - 1) && !blockers.contains(c + 1)) out.insert(c);
  });
  return out;
}

Contiguity contiguity(const ChannelSet& vacant) {
  Contiguity out;
  int longest = 0;
  vacant.for_each([&](int c) {
    if (!out.runs.empty() && out.runs.back().last == c - 1) out.runs.back().last = c;
    else out.runs.push_back({c, c});
    longest = std::max(longest, out.runs.back().length());
  });
  out.max_contiguous_mhz = kChannelWidthMhz * longest;
  return out;
}

std::vector<SweepPoint> power_sweep(const TransmitterDb& db, const DiskMap& disks, const ChannelPlan& plan,
                                    const NgPoint& loc, const std::vector<double>& powers,
                                    const PropagationParams& prop, unsigned workers) {
  if (powers.empty()) throw DomainError("power sweep needs at least one power");
  prop.validate();
  for (double p : powers)
    if (!(p >= 0) || !std::isfinite(p)) throw DomainError("sweep powers must be >= 0");
  const auto resolved = resolve(db, disks);
  std::vector<SweepPoint> out(powers.size());
  parallel_for(powers.size(), workers, [&](std::size_t i) {
    const auto r = evaluate(db, resolved, plan, {loc, powers[i], prop});
    out[i] = {powers[i], r.rho, r.filtered_vacant.size()};
  });
  return out;
}

RhoGrid availability_grid(const TransmitterDb& db, const DiskMap& disks, const ChannelPlan& plan,
                          const BoundingBox& region, double cell_size_m, double p_cr_watts,
                          const PropagationParams& prop, bool filtered, unsigned workers) {
  if (region.empty()) throw DomainError("grid region is empty");
  if (!(cell_size_m > 0)) throw DomainError("grid cell size must be > 0");
  const QueryParams proto{region.min, p_cr_watts, prop};
  proto.validate();
  const double cols = std::ceil(region.width() / cell_size_m);
  const double rows = std::ceil(region.height() / cell_size_m);
  if (cols * rows > 5e7) throw DomainError("grid too large; increase the cell size");

  RhoGrid grid{region.min, cell_size_m, static_cast<int>(cols), static_cast<int>(rows), {}};
  grid.values.assign(static_cast<std::size_t>(grid.ncols) * grid.nrows, 0);
  const auto resolved = resolve(db, disks);
  parallel_for(static_cast<std::size_t>(grid.nrows), workers, [&](std::size_t row) {
    for (int col = 0; col < grid.ncols; ++col) {
      QueryParams q = proto;
      q.location = grid.cell_center(static_cast<int>(row), col);
      const auto r = evaluate(db, resolved, plan, q);
      grid.values[row * grid.ncols + col] = static_cast<int>(filtered ? r.filtered_vacant.size() : r.rho);
    }
  });
  return grid;
}

std::string write_rho_asc(const RhoGrid& grid) {
  std::string out;
  out += "ncols " + std::to_string(grid.ncols) + "\n";
  out += "nrows " + std::to_string(grid.nrows) + "\n";
  out += "xllcorner " + detail::format_double(grid.origin.easting) + "\n";
  out += "yllcorner " + detail::format_double(grid.origin.northing) + "\n";
  out += "cellsize " + detail::format_double(grid.cell_size_m) + "\n";
  out += "NODATA_value -9999\n";
  for (int r = 0; r < grid.nrows; ++r) {
    for (int c = 0; c < grid.ncols; ++c) {
      if (c) out += ' ';
      out += std::to_string(grid.at(r, c));
    }
    out += '\n';
  }
  return out;
}

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::size_t>(n, 256))));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::size_t error_index = n;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (i < error_index) {
            error = std::current_exception();
            error_index = i;
          }
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

} // namespace tvws
