#pragma once

#include "tvws/availability.hpp"
#include "tvws/channel_plan.hpp"
#include "tvws/geo.hpp"
#include "tvws/keepout.hpp"

#include <cstdint>
#include <vector>

namespace tvws {

/// A complete synthetic scenario: transmitters, their coverage rasters and
/// derived disks, plus labelled query locations.
struct Fixture {
  TransmitterDb db;
  RasterMap rasters;
  DiskMap disks;
  std::vector<LabeledLocation> locations;
};

struct SynthOptions {
  std::uint64_t seed = 7;
  int n = 81;
  BoundingBox region = BoundingBox::national_grid();
  double cell_size_m = 1000;
  /// Coverage shape noise in [0, 1]; 0 gives exact disks.
  double irregularity = 0.3;
  PropagationParams prop;
  double p_min_watts = kDefaultSensitivityWatts;
  /// Number of labelled locations written alongside the database.
  int locations = 18;
};

/// 81 transmitters over the whole 700 x 1300 km grid.
SynthOptions uk81_preset(std::uint64_t seed);

/// Database from generate_synthetic(), one synth_coverage() raster per
/// transmitter (seeded per transmitter), enclosing disks, and locations placed
/// near transmitters so that they see a mix of occupied and vacant channels.
Fixture synth_fixture(const SynthOptions& opt, const ChannelPlan& plan);

/// Hand-built scenario around SJ 838 980 (central Manchester) for power sweeps.
///
/// Under the default plan and the given propagation parameters, the location
/// sees 17 vacant channels at low power. Five 500 W relays sit just outside
/// their coverage disks, placed so that their channels become blocked once the
/// CR power exceeds 0.2, 0.4, 0.8, 1.5 and 3 W respectively: the vacant count
/// is flat up to 0.2 W, then falls to 5 channels (40 MHz) at 2 W.
Fixture manchester_fixture(const PropagationParams& prop = {});

inline constexpr NgPoint kManchester{383800, 398000};

} // namespace tvws
