#include "oracle.hpp"
#include "tvws/availability.hpp"
#include "tvws/error.hpp"
#include "tvws/synth.hpp"

#include <doctest.h>

#include <atomic>
#include <random>

using namespace tvws;

namespace {

const ChannelPlan kPlan = ChannelPlan::default_plan();

struct Scene {
  TransmitterDb db;
  DiskMap disks;
  void add(std::string id, NgPoint pos, double erp, double radius, ChannelSet channels) {
    db.transmitters.push_back({id, pos, erp, 100, channels});
    disks.emplace(id, CoverageDisk{id, pos, radius});
  }
};

AvailabilityResult with_occupancy(const ChannelSet& occupied, const ChannelPlan& plan = kPlan) {
  AvailabilityResult r;
  r.occupied = occupied & plan.interleaved();
  r.vacant = plan.interleaved() - occupied;
  r.rho = r.vacant.size();
  return r;
}

} // namespace

TEST_CASE("empty database") {
  const auto r = availability({}, {}, kPlan, {{400000, 300000}, 1, {}});
  CHECK(r.vacant == kPlan.interleaved());
  CHECK(r.rho == 30);
  CHECK(r.occupied.empty());
  CHECK(r.filtered_vacant == kPlan.interleaved());
}

TEST_CASE("single transmitter") {
  Scene s;
  s.add("T", {400000, 300000}, 1000, 20000, {21});
  const auto inside = availability(s.db, s.disks, kPlan, {{410000, 300000}, 0.1, {}});
  CHECK(inside.occupied == ChannelSet{21});
  CHECK(inside.rho == 29);
  CHECK(inside.per_channel_blockers.at(21) == std::vector<std::string>{"T"});
  CHECK(!inside.filtered_vacant.contains(22));

  const auto far = availability(s.db, s.disks, kPlan, {{500000, 300000}, 0.1, {}});
  CHECK(far.rho == 30);

  // Exactly on R' at zero power counts as permitted.
  const auto edge = availability(s.db, s.disks, kPlan, {{420000, 300000}, 0, {}});
  CHECK(edge.rho == 30);
}

TEST_CASE("missing disk is a data error") {
  Scene s;
  s.add("T", {400000, 300000}, 1000, 20000, {21});
  s.disks.clear();
  CHECK_THROWS_AS(availability(s.db, s.disks, kPlan, {{0, 0}, 0, {}}), DataError);
  CHECK_THROWS_AS(availability({}, {}, kPlan, {{0, 0}, -1, {}}), DomainError);
}

TEST_CASE("matches the double-sum evaluation") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 300; ++trial) {
    ChannelSet inter;
    const int k = 1 + static_cast<int>(rng() % 12);
    while (static_cast<int>(inter.size()) < k) inter.insert(21 + static_cast<int>(rng() % 48));
    const ChannelPlan plan(inter, {});
    const auto pool = inter.numbers();

    Scene s;
    std::vector<oracle::Tx> txs;
    const int ntx = static_cast<int>(rng() % 11);
    for (int j = 0; j < ntx; ++j) {
      ChannelSet ch;
      const int nch = 1 + static_cast<int>(rng() % 4);
      for (int c = 0; c < nch; ++c) ch.insert(u(rng) < 0.8 ? pool[rng() % pool.size()] : 21 + static_cast<int>(rng() % 48));
      const NgPoint pos{100000 + 100000 * u(rng), 100000 + 100000 * u(rng)};
      const double erp = 25 + 200000 * u(rng) * u(rng);
      const double radius = 2000 + 40000 * u(rng);
      s.add("T" + std::to_string(j), pos, erp, radius, ch);
      txs.push_back({pos.easting, pos.northing, erp, radius, ch.numbers()});
    }
    const PropagationParams prop{2 + 2 * u(rng), 0.5 + 2 * u(rng)};
    const double p = u(rng) < 0.2 ? 0.0 : std::pow(10, -3 + 4 * u(rng));
    const NgPoint loc{100000 + 100000 * u(rng), 100000 + 100000 * u(rng)};

    const auto r = availability(s.db, s.disks, plan, {loc, p, prop});
    const auto expected = oracle::vacant(txs, pool, loc.easting, loc.northing, p, prop.alpha, prop.beta_th);
    CHECK(r.vacant.numbers() == expected);
    CHECK(static_cast<int>(r.rho) ==
          oracle::rho(txs, pool, loc.easting, loc.northing, p, prop.alpha, prop.beta_th));
    CHECK((r.vacant | r.occupied) == plan.interleaved());
    CHECK(r.vacant.disjoint(r.occupied));
  }
}

TEST_CASE("monotone in power and in transmitters") {
  const auto fx = synth_fixture(uk81_preset(7), kPlan);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ue(0, kMaxEasting), un(0, kMaxNorthing);
  const std::vector<double> powers{0, 0.01, 0.1, 1, 4, 100};
  for (int i = 0; i < 40; ++i) {
    const NgPoint loc{ue(rng), un(rng)};
    ChannelSet prev = ChannelSet::all();
    for (double p : powers) {
      const auto r = availability(fx.db, fx.disks, kPlan, {loc, p, {}});
      CHECK(r.vacant.subset_of(prev));
      prev = r.vacant;
    }
    TransmitterDb fewer = fx.db;
    fewer.transmitters.resize(40);
    const auto all = availability(fx.db, fx.disks, kPlan, {loc, 1, {}});
    const auto some = availability(fewer, fx.disks, kPlan, {loc, 1, {}});
    CHECK(all.vacant.subset_of(some.vacant));
  }
}

TEST_CASE("low-power raster availability") {
  const PropagationParams prop;
  Transmitter tx{"T", {350000, 450000}, 5000, 100, {41, 44, 47}};
  RasterMap rasters;
  rasters.emplace("T", synth_coverage(tx, prop, 500, 0.3, 4));
  TransmitterDb db{{tx}, ""};
  const auto in = availability_lowpower(db, rasters, kPlan, tx.position);
  CHECK(in.occupied == ChannelSet{41, 44, 47});
  CHECK(in.rho == 27);
  const auto out = availability_lowpower(db, rasters, kPlan, {600000, 1000000});
  CHECK(out.vacant == kPlan.interleaved());
  CHECK_THROWS_AS(availability_lowpower(db, {}, kPlan, tx.position), DataError);
}

TEST_CASE("disks agree with rasters away from the disk boundary") {
  SynthOptions opt;
  opt.seed = 3;
  opt.n = 25;
  opt.region = {{200000, 200000}, {400000, 400000}};
  opt.irregularity = 0;
  opt.locations = 0;
  const auto fx = synth_fixture(opt, kPlan);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(150000, 450000);
  for (int i = 0; i < 300; ++i) {
    const NgPoint loc{u(rng), u(rng)};
    const auto raster = availability_lowpower(fx.db, fx.rasters, kPlan, loc);
    const auto disk = availability(fx.db, fx.disks, kPlan, {loc, 0, {}});
    CHECK(disk.vacant.subset_of(raster.vacant));
    if (disk.vacant == raster.vacant) continue;
    // Each disagreement comes from a transmitter whose disk boundary lies
    // within one cell of the cell containing loc.
    for (const auto& tx : fx.db.transmitters) {
      const auto& r = fx.rasters.at(tx.id);
      const bool in_disk = distance(loc, tx.position) < fx.disks.at(tx.id).radius_m;
      if (!in_disk || covers(r, loc)) continue;
      CellIndex c{};
      REQUIRE(snap(r, loc, c));
      const double centre = distance(r.cell_center(c.row, c.col), tx.position);
      CHECK(std::abs(centre - fx.disks.at(tx.id).radius_m) <= opt.cell_size_m);
    }
  }
}

TEST_CASE("adjacent filter") {
  SUBCASE("example") {
    const ChannelPlan plan({21, 22, 23, 25}, {});
    AvailabilityResult r;
    r.occupied = {22};
    r.vacant = {21, 23, 25};
    CHECK(adjacent_filter(r) == ChannelSet{25});
  }
  SUBCASE("no occupancy is the identity") {
    const auto r = with_occupancy({});
    CHECK(adjacent_filter(r) == r.vacant);
  }
  SUBCASE("alternating occupancy leaves nothing") {
    ChannelSet occ;
    for (int ch = 21; ch <= 60; ch += 2) occ.insert(ch);
    const auto r = with_occupancy(occ);
    CHECK(!r.vacant.empty());
    CHECK(adjacent_filter(r).empty());
  }
  SUBCASE("cleared and excluded channels do not block") {
    const auto r = with_occupancy({});
    CHECK(adjacent_filter(r).contains(60));
    CHECK(!adjacent_filter(r, kPlan.excluded()).contains(60));
  }
  SUBCASE("soundness and idempotence") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 500; ++trial) {
      ChannelSet occ;
      for (int ch = 21; ch <= 68; ++ch)
        if (rng() % 3 == 0) occ.insert(ch);
      auto r = with_occupancy(occ);
      const auto f = adjacent_filter(r);
      CHECK(f.subset_of(r.vacant));
      f.for_each([&](int ch) {
        CHECK(!r.occupied.contains(ch - 1));
        CHECK(!r.occupied.contains(ch + 1));
      });
      auto again = r;
      again.vacant = f;
      CHECK(adjacent_filter(again) == f);
    }
  }
}

TEST_CASE("contiguity") {
  CHECK(contiguity({21, 22, 23}).runs == std::vector<ChannelRun>{{21, 23}});
  CHECK(contiguity({21, 22, 23}).max_contiguous_mhz == 24);
  CHECK(contiguity({}).runs.empty());
  CHECK(contiguity({}).max_contiguous_mhz == 0);

  const ChannelSet london{21, 22, 25, 27, 29, 41, 43, 45, 47, 49, 51, 53};
  REQUIRE(london.size() == 12);
  CHECK(bandwidth_mhz(london) == 96);
  CHECK(contiguity(london).max_contiguous_mhz == 16);

  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    ChannelSet s;
    for (int ch = 21; ch <= 68; ++ch)
      if (rng() % 2) s.insert(ch);
    const auto c = contiguity(s);
    std::size_t total = 0;
    int longest = 0;
    for (const auto& run : c.runs) {
      total += static_cast<std::size_t>(run.length());
      longest = std::max(longest, run.length());
      CHECK(!s.contains(run.first - 1));
      CHECK(!s.contains(run.last + 1));
    }
    CHECK(total == s.size());
    CHECK(c.max_contiguous_mhz == 8.0 * longest);
  }
}

TEST_CASE("power sweep") {
  const auto fx = manchester_fixture();
  const auto pts = power_sweep(fx.db, fx.disks, kPlan, kManchester, {0.01, 0.1, 0.5, 1, 2, 4}, {});
  REQUIRE(pts.size() == 6);
  for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].rho <= pts[i - 1].rho);
  CHECK(pts[0].rho == pts[1].rho);
  CHECK(pts[1].rho > pts[5].rho);
  CHECK(pts[4].rho > 0);

  const auto zero = power_sweep(fx.db, fx.disks, kPlan, kManchester, {0}, {});
  CHECK(zero.size() == 1);
  CHECK(zero[0].rho == availability(fx.db, fx.disks, kPlan, {kManchester, 0, {}}).rho);
  CHECK_THROWS_AS(power_sweep(fx.db, fx.disks, kPlan, kManchester, {}, {}), DomainError);

  const auto parallel = power_sweep(fx.db, fx.disks, kPlan, kManchester, {0.01, 0.1, 0.5, 1, 2, 4}, {}, 4);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(parallel[i].rho == pts[i].rho);
}

TEST_CASE("availability grid") {
  const auto fx = synth_fixture(uk81_preset(7), kPlan);
  const BoundingBox region{{300000, 300000}, {500000, 600000}};
  const auto grid = availability_grid(fx.db, fx.disks, kPlan, region, 10000, 0.5, {}, false, 3);
  CHECK(grid.ncols == 20);
  CHECK(grid.nrows == 30);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const int row = static_cast<int>(rng() % 30), col = static_cast<int>(rng() % 20);
    const auto r = availability(fx.db, fx.disks, kPlan, {grid.cell_center(row, col), 0.5, {}});
    CHECK(grid.at(row, col) == static_cast<int>(r.rho));
  }
  CHECK(availability_grid(fx.db, fx.disks, kPlan, region, 10000, 0.5, {}, false, 1).values == grid.values);

  const auto empty = availability_grid({}, {}, kPlan, region, 50000, 1, {});
  for (int v : empty.values) CHECK(v == 30);

  Scene s;
  s.add("T", {400000, 450000}, 1000, 60000, {21, 22, 35});
  const auto one = availability_grid(s.db, s.disks, kPlan, region, 10000, 0, {});
  for (int row = 0; row < one.nrows; ++row)
    for (int col = 0; col < one.ncols; ++col)
      CHECK(one.at(row, col) == (distance(one.cell_center(row, col), {400000, 450000}) < 60000 ? 28 : 30));
}

TEST_CASE("parallel_for") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 8, [&](std::size_t i) { ++hits[i]; });
  for (int h : hits) CHECK(h == 1);
  std::atomic<int> calls{0};
  try {
    parallel_for(100, 4, [&](std::size_t i) {
      ++calls;
      if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "17");
  }
}
