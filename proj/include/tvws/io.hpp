#pragma once

#include "tvws/availability.hpp"
#include "tvws/synth.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tvws {

/// Throws IoError when the file cannot be read.
std::string read_file(const std::filesystem::path& path);
/// Creates parent directories as needed. Throws IoError.
void write_file(const std::filesystem::path& path, std::string_view content);

enum class CoverageMode { raster, disk };

/// Transmitters plus whatever coverage the mode needs.
struct Dataset {
  TransmitterDb db;
  std::vector<std::string> warnings;
  RasterMap rasters;
  DiskMap disks;
};

/// Loads `txdb_path` and, from `coverage_dir`:
///  - raster mode: `<id>.asc` for every transmitter;
///  - disk mode: `<id>.disk` when present, otherwise the disk is derived from
///    `<id>.asc`. A cached disk whose centre differs from the transmitter
///    position is rejected as stale.
/// Missing files raise IoError; malformed ones ParseError/DataError.
Dataset load_dataset(const std::filesystem::path& txdb_path, const std::filesystem::path& coverage_dir,
                     CoverageMode mode);

/// Recomputes `<id>.disk` from `<id>.asc` for every transmitter of the
/// database. Returns the number of files written.
std::size_t write_disk_cache(const std::filesystem::path& txdb_path, const std::filesystem::path& coverage_dir);

/// Writes `txdb.csv`, `locations.csv`, and `coverage/<id>.asc|.disk` under dir.
void write_fixture(const std::filesystem::path& dir, const Fixture& fixture);

std::string format_locations(const std::vector<LabeledLocation>& locations);

} // namespace tvws
