#pragma once

#include "tvws/channel_plan.hpp"
#include "tvws/geo.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tvws {

/// Published ERP range of UK main DTV transmitters. Values outside it load
/// with a warning.
inline constexpr double kMinTypicalErpWatts = 25.0;
inline constexpr double kMaxTypicalErpWatts = 200000.0;

/// One DTV station.
struct Transmitter {
  std::string id;
  NgPoint position;
  double erp_watts = 0;
  /// Carried for format fidelity; the propagation model does not use it.
  double antenna_height_m = 0;
  ChannelSet channels;

  friend bool operator==(const Transmitter&, const Transmitter&) = default;
};

struct TransmitterDb {
  std::vector<Transmitter> transmitters;
  std::string source;

  std::size_t size() const noexcept { return transmitters.size(); }
  /// nullptr when absent.
  const Transmitter* find(std::string_view id) const noexcept;
};

struct LoadedTxdb {
  TransmitterDb db;
  std::vector<std::string> warnings;
};

inline constexpr std::string_view kTxdbHeader = "id,easting,northing,erp_watts,antenna_height_m,channels";

/// Parses a power with optional unit suffix (`mW`, `W`, `kW`); bare numbers
/// are watts. Negative and non-finite values are rejected.
double parse_power(std::string_view text);

/// Loads the transmitter CSV. Errors name the line number; duplicate ids name
/// both lines. ERP outside [25 W, 200 kW] produces a warning, not an error.
LoadedTxdb load_txdb(std::string_view text, std::string source = "");

/// Inverse of load_txdb.
std::string serialize_txdb(const TransmitterDb& db);

/// Validates a single transmitter (positive ERP, non-empty channels, position
/// on the grid). Throws DataError.
void validate(const Transmitter& tx);

/// Deterministic synthetic database.
///
/// Positions are uniform in `region`; ERP is log-distributed over
/// [25 W, 200 kW] with a bias toward high power; each transmitter carries 3-6
/// interleaved channels of `plan`, chosen to avoid channels already used by
/// transmitters within kSynthReuseDistance (a stand-in for frequency planning).
/// Throws DomainError for n < 1, an empty region, or a plan with fewer than 3
/// interleaved channels.
TransmitterDb generate_synthetic(std::uint64_t seed, int n, const BoundingBox& region,
                                 const ChannelPlan& plan);

inline constexpr double kSynthReuseDistance = 150000.0;

} // namespace tvws
