#include "tvws/io.hpp"

#include "tvws/error.hpp"
#include "text.hpp"

#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace tvws {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

Dataset load_dataset(const fs::path& txdb_path, const fs::path& coverage_dir, CoverageMode mode) {
  Dataset ds;
  auto loaded = load_txdb(read_file(txdb_path), txdb_path.string());
  ds.db = std::move(loaded.db);
  ds.warnings = std::move(loaded.warnings);

  for (const auto& tx : ds.db.transmitters) {
    const auto asc = coverage_dir / (tx.id + ".asc");
    const auto disk = coverage_dir / (tx.id + ".disk");
    if (mode == CoverageMode::raster) {
      ds.rasters.emplace(tx.id, read_asc(read_file(asc), tx.id));
      continue;
    }
    if (fs::exists(disk)) {
      auto d = read_disk(read_file(disk), tx.id);
      if (!(d.center == tx.position))
        throw DataError("stale disk cache '" + disk.string() + "': centre differs from transmitter position");
      ds.disks.emplace(tx.id, std::move(d));
    } else if (fs::exists(asc)) {
      ds.disks.emplace(tx.id, enclosing_disk(read_asc(read_file(asc), tx.id), tx));
    } else {
      throw IoError("no coverage for transmitter '" + tx.id + "': neither '" + disk.string() + "' nor '" +
                    asc.string() + "' exists");
    }
  }
  return ds;
}

std::size_t write_disk_cache(const fs::path& txdb_path, const fs::path& coverage_dir) {
  const auto ds = load_dataset(txdb_path, coverage_dir, CoverageMode::raster);
  for (const auto& tx : ds.db.transmitters)
    write_file(coverage_dir / (tx.id + ".disk"), write_disk(enclosing_disk(ds.rasters.at(tx.id), tx)));
  return ds.db.size();
}

std::string format_locations(const std::vector<LabeledLocation>& locations) {
  std::string out = "label,location\n";
  for (const auto& loc : locations)
    out += detail::csv_quote(loc.label) + ",\"" + detail::format_double(loc.point.easting) + "," +
           detail::format_double(loc.point.northing) + "\"\n";
  return out;
}

void write_fixture(const fs::path& dir, const Fixture& fixture) {
  write_file(dir / "txdb.csv", serialize_txdb(fixture.db));
  if (!fixture.locations.empty()) write_file(dir / "locations.csv", format_locations(fixture.locations));
  for (const auto& tx : fixture.db.transmitters) {
    if (const auto it = fixture.rasters.find(tx.id); it != fixture.rasters.end())
      write_file(dir / "coverage" / (tx.id + ".asc"), write_asc(it->second));
    if (const auto it = fixture.disks.find(tx.id); it != fixture.disks.end())
      write_file(dir / "coverage" / (tx.id + ".disk"), write_disk(it->second));
  }
}

} // namespace tvws
