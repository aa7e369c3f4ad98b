// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include "oracle.hpp"
#include "tvws/availability.hpp"
#include "tvws/io.hpp"
#include "tvws/report.hpp"
#include "tvws/synth.hpp"
#include "tvws/tvws.h"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace tvws;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

const ChannelPlan kPlan = ChannelPlan::default_plan();

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

// 1. availability() against the literal double-sum evaluation.
Outcome double_sum_equivalence() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(0, 1);
  int mismatches = 0, boundary_cases = 0, nonempty = 0;
  for (int trial = 0; trial < 200; ++trial) {
    ChannelSet inter;
    const int k = 1 + static_cast<int>(rng() % 12);
    while (static_cast<int>(inter.size()) < k) inter.insert(21 + static_cast<int>(rng() % 48));
    const ChannelPlan plan(inter, {});
    const auto pool = inter.numbers();

    TransmitterDb db;
    DiskMap disks;
    std::vector<oracle::Tx> txs;
    const int ntx = static_cast<int>(rng() % 11);
    for (int j = 0; j < ntx; ++j) {
      ChannelSet ch;
      const int nch = 1 + static_cast<int>(rng() % 4);
      for (int c = 0; c < nch; ++c)
        ch.insert(u(rng) < 0.8 ? pool[rng() % pool.size()] : 21 + static_cast<int>(rng() % 48));
      const NgPoint pos{std::round(200000 + 80000 * u(rng)), std::round(300000 + 80000 * u(rng))};
      const double erp = std::round(25 + 199975 * u(rng) * u(rng));
      const double radius = std::round(2000 + 40000 * u(rng));
      const std::string id = "T" + std::to_string(j);
      db.transmitters.push_back({id, pos, erp, 100, ch});
      disks.emplace(id, CoverageDisk{id, pos, radius});
      txs.push_back({pos.easting, pos.northing, erp, radius, ch.numbers()});
    }
    const PropagationParams prop{2 + 2 * u(rng), 0.5 + 2 * u(rng)};
    double p = u(rng) < 0.25 ? 0.0 : std::pow(10, -3 + 4 * u(rng));
    NgPoint loc{200000 + 80000 * u(rng), 300000 + 80000 * u(rng)};
    // Every fifth instance puts the CR exactly on a disk boundary at zero power.
    if (trial % 5 == 0 && !txs.empty()) {
      p = 0;
      loc = {txs[0].e + txs[0].radius, txs[0].n};
      ++boundary_cases;
    }
    const auto r = availability(db, disks, plan, {loc, p, prop});
    const auto vacant = oracle::vacant(txs, pool, loc.easting, loc.northing, p, prop.alpha, prop.beta_th);
    const int rho = oracle::rho(txs, pool, loc.easting, loc.northing, p, prop.alpha, prop.beta_th);
    if (r.vacant.numbers() != vacant || static_cast<int>(r.rho) != rho) ++mismatches;
    nonempty += r.rho != pool.size();
  }
  const double t = seconds_since(t0);
  std::ostringstream d;
  d << "200 instances, " << mismatches << " mismatches, " << boundary_cases << " on-boundary, " << nonempty
    << " with occupancy, " << t << " s";
  return {mismatches == 0 && t < 10, d.str()};
}

// 2. Closed forms of the keep-out radius.
Outcome closed_forms() {
  const auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
  double worst = 0;
  for (double r : {1000.0, 40000.0, 123456.0}) {
    worst = std::max(worst, rel(keepout_radius(0, 5000, r, {}), r));
    for (double alpha : {1.0, 2.0, 3.0, 4.0, 5.5})
      for (double beta : {0.5, 1.0, 2.0}) worst = std::max(worst, rel(keepout_radius(500 / beta, 500, r, {alpha, beta}), 2 * r));
    worst = std::max(worst, rel(keepout_radius(1, 16, r, {4, 1}), 1.5 * r));
    worst = std::max(worst, rel(keepout_radius(2, 64, r, {4, 2}), 1.5 * r));
  }
  const bool exact_zero = keepout_radius(0, 1000, 40000, {}) == 40000;
  const bool example = rel(keepout_radius(1, 16, 40000, {4, 1}), 60000) <= 1e-12;
  std::ostringstream d;
  d << "max relative error " << worst;
  return {worst <= 1e-12 && exact_zero && example, d.str()};
}

// 3. Protection ratio at the keep-out separation, collinear geometry.
Outcome protection_ratio() {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> u(0, 1);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const double p_cr = std::pow(10, -3 + 4 * u(rng));
    const double p_tv = std::pow(10, 1.4 + 3.9 * u(rng));
    const double r_tv = 1000 + 80000 * u(rng);
    const PropagationParams prop{1.5 + 3 * u(rng), std::pow(10, -1 + 2 * u(rng))};
    // TV transmitter at the origin, edge receiver at r_tv, CR at R' on the same ray.
    const double cr_at = keepout_radius(p_cr, p_tv, r_tv, prop);
    const double r_cr = cr_at - r_tv;
    const double ratio = (p_tv / std::pow(r_tv, prop.alpha)) / (p_cr / std::pow(r_cr, prop.alpha));
    worst = std::max(worst, std::abs(ratio - prop.beta_th) / prop.beta_th);
  }
  std::ostringstream d;
  d << "100 draws, max relative error " << worst;
  return {worst <= 1e-9, d.str()};
}

// 4. Nested vacant sets for ascending powers on the uk81 fixture.
Outcome monotonicity(const Fixture& uk81) {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(0, 1);
  const std::vector<double> powers{0, 0.001, 0.01, 0.1, 0.5, 1, 2, 4, 10, 100, 1000};
  int violations = 0, changed = 0;
  for (int i = 0; i < 50; ++i) {
    // Half near a transmitter, half anywhere on the grid.
    NgPoint loc;
    if (i % 2 == 0) {
      const auto& tx = uk81.db.transmitters[rng() % uk81.db.size()];
      const double d = 1.5 * uk81.disks.at(tx.id).radius_m * u(rng);
      const double a = 2 * 3.141592653589793 * u(rng);
      loc = {std::clamp(tx.position.easting + d * std::cos(a), 0.0, kMaxEasting - 1),
             std::clamp(tx.position.northing + d * std::sin(a), 0.0, kMaxNorthing - 1)};
    } else {
      loc = {kMaxEasting * u(rng), kMaxNorthing * u(rng)};
    }
    const auto pts = power_sweep(uk81.db, uk81.disks, kPlan, loc, powers, {});
    ChannelSet prev = kPlan.interleaved();
    for (double p : powers) {
      const auto r = availability(uk81.db, uk81.disks, kPlan, {loc, p, {}});
      if (!r.vacant.subset_of(prev)) ++violations;
      prev = r.vacant;
    }
    for (std::size_t k = 1; k < pts.size(); ++k) violations += pts[k].rho > pts[k - 1].rho;
    changed += pts.front().rho != pts.back().rho;
  }
  std::ostringstream d;
  d << "50 locations x " << powers.size() << " powers, " << violations << " violations, " << changed
    << " locations lose channels across the sweep";
  return {violations == 0, d.str()};
}

// 5. Disks over-cover: vacant under disks is within vacant under rasters.
Outcome conservative_disks() {
  int violations = 0, strict = 0, checked = 0;
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(0, 1);
  for (double irr : {0.0, 0.1, 0.25, 0.4, 0.5}) {
    SynthOptions opt;
    opt.seed = 1000 + static_cast<std::uint64_t>(irr * 100);
    opt.n = 30;
    opt.region = {{250000, 250000}, {550000, 550000}};
    opt.irregularity = irr;
    opt.cell_size_m = 1000;
    opt.locations = 0;
    const auto fx = synth_fixture(opt, kPlan);
    for (int i = 0; i < 100; ++i) {
      const NgPoint loc{200000 + 400000 * u(rng), 200000 + 400000 * u(rng)};
      const auto disk = availability(fx.db, fx.disks, kPlan, {loc, 0, {}});
      const auto raster = availability_lowpower(fx.db, fx.rasters, kPlan, loc);
      ++checked;
      if (!disk.vacant.subset_of(raster.vacant)) ++violations;
      strict += disk.vacant.size() < raster.vacant.size();
    }
  }
  std::ostringstream d;
  d << checked << " location checks over irregularity 0..0.5, " << violations << " violations, " << strict
    << " where disks are strictly more conservative";
  return {violations == 0, d.str()};
}

// 6. Adjacent filter soundness and the alternating worst case.
Outcome filter_soundness() {
  std::mt19937_64 rng(66);
  int violations = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    AvailabilityResult r;
    for (int ch = 21; ch <= 68; ++ch)
      if (kPlan.interleaved().contains(ch)) (rng() % 3 == 0 ? r.occupied : r.vacant).insert(ch);
    r.rho = r.vacant.size();
    const auto f = adjacent_filter(r);
    if (!f.subset_of(r.vacant)) ++violations;
    f.for_each([&](int ch) { violations += r.occupied.contains(ch - 1) || r.occupied.contains(ch + 1); });
  }
  AvailabilityResult alt;
  for (int ch : kPlan.interleaved().numbers()) ((ch % 2) ? alt.occupied : alt.vacant).insert(ch);
  alt.rho = alt.vacant.size();
  const bool worst_case = !alt.vacant.empty() && adjacent_filter(alt).empty();
  std::ostringstream d;
  d << "2000 random occupancies, " << violations << " violations; alternating occupancy leaves "
    << adjacent_filter(alt).size() << " of " << alt.vacant.size() << " vacant channels";
  return {violations == 0 && worst_case, d.str()};
}

// 7. 12 vacant channels, longest run 2.
Outcome contiguity_arithmetic() {
  AvailabilityResult r;
  r.vacant = {21, 22, 24, 26, 28, 30, 42, 44, 46, 48, 50, 52};
  r.occupied = kPlan.interleaved() - r.vacant;
  r.rho = r.vacant.size();
  r.filtered_vacant = adjacent_filter(r);
  const auto rep = make_report("London", r, {3, 1, 0, kPlan.hash(), "disk", false});
  const auto rows = parse_report_csv(emit_csv({rep}));
  const bool ok = rows.size() == 1 && rows[0].rho == 12 && rows[0].total_mhz == 96 &&
                  rows[0].max_contiguous_mhz == 16;
  std::ostringstream d;
  d << "report shows " << rows.at(0).total_mhz << " MHz total, " << rows.at(0).max_contiguous_mhz
    << " MHz contiguous";
  return {ok, d.str()};
}

// 8. Disk construction on random rasters.
Outcome disk_construction() {
  std::mt19937_64 rng(88);
  std::uniform_real_distribution<double> u(0, 1);
  int outside = 0, loose = 0;
  double worst_slack = 0;
  for (int trial = 0; trial < 100; ++trial) {
    CoverageRaster raster;
    Transmitter tx{"T", {}, 1000, 100, {21}};
    if (trial % 2 == 0) {
      tx.position = {std::round(100000 + 500000 * u(rng)), std::round(100000 + 1000000 * u(rng))};
      tx.erp_watts = std::round(25 + 200000 * u(rng) * u(rng));
      raster = synth_coverage(tx, {}, 250 + 1750 * u(rng), 0.5 * u(rng), rng());
    } else {
      const int nc = 2 + static_cast<int>(rng() % 30), nr = 2 + static_cast<int>(rng() % 30);
      const double cell = 50 + 2000 * u(rng);
      raster = CoverageRaster("T", {300000 + 1000 * u(rng), 400000 + 1000 * u(rng)}, cell, nc, nr);
      const double density = 0.02 + 0.9 * u(rng);
      for (int r = 0; r < nr; ++r)
        for (int c = 0; c < nc; ++c)
          if (u(rng) < density) raster.set(r, c, true);
      if (raster.covered_count() == 0) raster.set(static_cast<int>(rng() % nr), static_cast<int>(rng() % nc), true);
      // Transmitter anywhere in or around the raster.
      tx.position = {raster.origin().easting + (u(rng) * 1.4 - 0.2) * nc * cell,
                     raster.origin().northing + (u(rng) * 1.4 - 0.2) * nr * cell};
    }
    const auto disk = enclosing_disk(raster, tx);
    const double c = raster.cell_size_m();
    std::vector<oracle::Cell> cells;
    for (int r = 0; r < raster.nrows(); ++r)
      for (int col = 0; col < raster.ncols(); ++col)
        if (raster.at(r, col))
          cells.push_back({raster.origin().easting + col * c, raster.origin().northing + (raster.nrows() - 1 - r) * c});
    const double corners = oracle::max_corner_distance(cells, c, tx.position.easting, tx.position.northing);
    const double minimum = oracle::sampled_radius(cells, c, tx.position.easting, tx.position.northing);
    outside += corners > disk.radius_m * (1 + 1e-12);
    loose += disk.radius_m > minimum + c;
    worst_slack = std::max(worst_slack, (disk.radius_m - minimum) / c);
  }
  std::ostringstream d;
  d << "100 rasters, " << outside << " with a corner outside, " << loose
    << " looser than one cell; worst slack " << worst_slack << " cells";
  return {outside == 0 && loose == 0, d.str()};
}

// 9. Manchester sweep shape and golden CSV.
Outcome manchester_sweep() {
  const fs::path dir = fs::path(TVWS_TEST_DATA) / "manchester";
  const auto ds = load_dataset(dir / "txdb.csv", dir / "coverage", CoverageMode::disk);
  const NgPoint loc = parse_locations(read_file(dir / "locations.csv")).at(0).point;
  const std::vector<double> powers{0.01, 0.1, 0.5, 1, 2, 4};
  const auto pts = power_sweep(ds.db, ds.disks, kPlan, loc, powers, {});

  std::vector<oracle::Tx> txs;
  for (const auto& tx : ds.db.transmitters)
    txs.push_back({tx.position.easting, tx.position.northing, tx.erp_watts, ds.disks.at(tx.id).radius_m,
                   tx.channels.numbers()});
  bool oracle_ok = true;
  for (const auto& p : pts)
    oracle_ok &= static_cast<int>(p.rho) ==
                 oracle::rho(txs, kPlan.interleaved().numbers(), loc.easting, loc.northing, p.power_watts, 3, 1);

  bool nonincreasing = true;
  for (std::size_t i = 1; i < pts.size(); ++i) nonincreasing &= pts[i].rho <= pts[i - 1].rho;
  const bool plateau = pts[0].rho == pts[1].rho;
  const bool positive = pts[4].rho > 0;
  const bool drops = pts[5].rho < pts[1].rho;

  const auto csv = emit_sweep(pts, {3, 1, 0, kPlan.hash(), "disk", false});
  const bool golden = csv == read_file(fs::path(TVWS_TEST_DATA) / "golden" / "manchester_sweep.csv");

  std::ostringstream d;
  d << "channels";
  for (const auto& p : pts) d << " " << p.power_watts << "W:" << p.rho;
  d << (oracle_ok ? "" : " [oracle mismatch]") << (golden ? "" : " [golden mismatch]");
  return {nonincreasing && plateau && positive && drops && oracle_ok && golden, d.str()};
}

// 10. Batch output independent of worker count.
Outcome batch_determinism() {
  const fs::path dir = fs::path(TVWS_TEST_SCRATCH) / "uk81";
  fs::remove_all(dir);
  tvws_synth_options so;
  tvws_synth_options_init(&so);
  so.preset = TVWS_PRESET_UK81;
  so.seed = 7;
  tvws_plan* plan = nullptr;
  tvws_dataset* ds = nullptr;
  if (tvws_plan_default(&plan) != TVWS_OK || tvws_synth(&so, plan, dir.string().c_str()) != TVWS_OK ||
      tvws_dataset_load((dir / "txdb.csv").string().c_str(), (dir / "coverage").string().c_str(), TVWS_MODE_DISK,
                        &ds) != TVWS_OK)
    return {false, std::string("setup failed: ") + tvws_last_error()};
  const std::string locations = read_file(dir / "locations.csv");

  std::string outputs[2];
  const unsigned workers[2] = {1, 4};
  bool ok = true;
  for (int i = 0; i < 2; ++i) {
    tvws_options opt;
    tvws_options_init(&opt);
    opt.workers = workers[i];
    char* out = nullptr;
    ok &= tvws_batch(ds, plan, &opt, locations.c_str(), 0.5, TVWS_FORMAT_CSV, &out) == TVWS_OK;
    outputs[i] = out ? out : "";
    tvws_string_free(out);
  }
  tvws_dataset_free(ds);
  tvws_plan_free(plan);
  const auto rows = parse_report_csv(outputs[0]);
  const bool identical = ok && outputs[0] == outputs[1];
  std::ostringstream d;
  d << rows.size() << " rows, outputs " << (identical ? "byte-identical" : "differ");
  return {identical && rows.size() == 18, d.str()};
}

} // namespace

int main() {
  const auto t0 = Clock::now();
  const Fixture uk81 = synth_fixture(uk81_preset(7), kPlan);
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, double_sum_equivalence},
      {2, closed_forms},
      {3, protection_ratio},
      {4, [&] { return monotonicity(uk81); }},
      {5, conservative_disks},
      {6, filter_soundness},
      {7, contiguity_arithmetic},
      {8, disk_construction},
      {9, manchester_sweep},
      {10, batch_determinism},
  };
  int failures = 0;
  for (const auto& [id, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (id == 10) {
      const double t = seconds_since(t0);
      o.pass = o.pass && t < 60;
      o.detail += "; acceptance run " + std::to_string(t) + " s";
    }
    failures += !o.pass;
    std::printf("criterion %2d: %s  %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
  }
  return failures;
}
