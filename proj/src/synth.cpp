#include "tvws/synth.hpp"

#include "tvws/error.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace tvws {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void add_coverage(Fixture& fx, const Transmitter& tx, const PropagationParams& prop, double cell,
                  double irregularity, std::uint64_t seed, double p_min) {
  auto raster = synth_coverage(tx, prop, cell, irregularity, seed, p_min);
  fx.disks.emplace(tx.id, enclosing_disk(raster, tx));
  fx.rasters.emplace(tx.id, std::move(raster));
}

} // namespace

SynthOptions uk81_preset(std::uint64_t seed) {
  SynthOptions opt;
  opt.seed = seed;
  opt.n = 81;
  opt.region = BoundingBox::national_grid();
  opt.cell_size_m = 1000;
  opt.irregularity = 0.3;
  return opt;
}

Fixture synth_fixture(const SynthOptions& opt, const ChannelPlan& plan) {
  if (opt.locations < 0) throw DomainError("location count must be >= 0");
  Fixture fx;
  fx.db = generate_synthetic(opt.seed, opt.n, opt.region, plan);
  for (std::size_t i = 0; i < fx.db.size(); ++i)
    add_coverage(fx, fx.db.transmitters[i], opt.prop, opt.cell_size_m, opt.irregularity, mix(opt.seed, i),
                 opt.p_min_watts);

  detail::Rng rng(mix(opt.seed, 0xC0FFEE));
  const BoundingBox env = BoundingBox::national_grid();
  for (int k = 0; k < opt.locations; ++k) {
    const auto& tx = fx.db.transmitters[static_cast<std::size_t>(rng.integer(0, opt.n - 1))];
    const double radius = fx.disks.at(tx.id).radius_m;
    const double bearing = rng.uniform(0, 2 * std::numbers::pi);
    const double d = rng.uniform(0, 1.3) * radius;
    NgPoint p{std::round(tx.position.easting + d * std::cos(bearing)),
              std::round(tx.position.northing + d * std::sin(bearing))};
    p.easting = std::clamp(p.easting, std::max(env.min.easting, opt.region.min.easting),
                           std::min(env.max.easting, opt.region.max.easting) - 1);
    p.northing = std::clamp(p.northing, std::max(env.min.northing, opt.region.min.northing),
                            std::min(env.max.northing, opt.region.max.northing) - 1);
    char label[16];
    std::snprintf(label, sizeof label, "LOC%02d", k + 1);
    fx.locations.push_back({label, p});
  }
  return fx;
}

Fixture manchester_fixture(const PropagationParams& prop) {
  constexpr double kCell = 250;
  Fixture fx;
  fx.db.source = "manchester power-sweep fixture";

  const auto add = [&](const char* id, NgPoint pos, double erp, ChannelSet channels) {
    Transmitter tx{id, pos, erp, 150, channels};
    validate(tx);
    add_coverage(fx, tx, prop, kCell, 0.0, 0, kDefaultSensitivityWatts);
    fx.db.transmitters.push_back(std::move(tx));
  };

  // Transmitters whose coverage contains the location: 13 channels always occupied.
  add("WINTERHILL", {366000, 414400}, 100000, {22, 24, 26, 28, 30});
  add("PENDLE", {383800, 408000}, 10000, {41, 43, 45, 47, 49});
  add("SADDLEWORTH", {389800, 398000}, 2000, {51, 53, 55});

  // Relays outside the location's coverage; blocked above a threshold power.
  struct Relay {
    const char* id;
    double threshold_watts;
    double bearing_deg;
    ChannelSet channels;
  };
  const Relay relays[] = {
      {"RELAY_A", 0.2, 200, {42, 44}},
      {"RELAY_B", 0.4, 250, {46, 48, 50}},
      {"RELAY_C", 0.8, 300, {52, 54}},
      {"RELAY_D", 1.5, 120, {56, 57, 58, 59, 60}},
      {"RELAY_E", 3.0, 30, {21, 23}},
  };
  constexpr double kRelayErp = 500;
  for (const auto& relay : relays) {
    // The disk radius does not depend on position: the transmitter always sits
    // at a cell centre, so probe it at the location itself.
    Transmitter probe{relay.id, kManchester, kRelayErp, 150, relay.channels};
    const double r = enclosing_disk(synth_coverage(probe, prop, kCell, 0.0, 0), probe).radius_m;
    const double d = keepout_radius(relay.threshold_watts, kRelayErp, r, prop);
    const double theta = relay.bearing_deg * std::numbers::pi / 180.0;
    add(relay.id,
        {std::round(kManchester.easting + d * std::cos(theta)), std::round(kManchester.northing + d * std::sin(theta))},
        kRelayErp, relay.channels);
  }
  fx.locations.push_back({"Manchester", kManchester});
  return fx;
}

} // namespace tvws
