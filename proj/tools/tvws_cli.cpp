// tvws - command-line front end over the C API.

#include "tvws/tvws.h"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Failure {
  int code;
  std::string message;
};

void check(tvws_status st) {
  if (st != TVWS_OK) throw Failure{st, tvws_last_error()};
}

[[noreturn]] void usage(const std::string& message) { throw Failure{TVWS_ERR_USAGE, message}; }

struct CString {
  char* p = nullptr;
  ~CString() { tvws_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
};
using Plan = Handle<tvws_plan, tvws_plan_free>;
using Dataset = Handle<tvws_dataset, tvws_dataset_free>;
using Result = Handle<tvws_result, tvws_result_free>;

struct Config {
  std::string txdb;
  std::string coverage;
  std::string plan;
  double alpha = 3;
  std::optional<double> beta;
  std::optional<double> beta_db;
  std::string power = "0";
  std::string mode = "disk";
  bool adjacent_filter = false;
  bool strict_excluded = false;
  std::string out;
  unsigned long long seed = 7;
  unsigned workers = 1;
};

std::string env_data_dir() {
  const char* v = std::getenv("TVWS_DATA_DIR");
  return v ? v : "";
}

std::string txdb_path(const Config& cfg) {
  if (!cfg.txdb.empty()) return cfg.txdb;
  const auto root = env_data_dir();
  return (root.empty() ? fs::path("txdb.csv") : fs::path(root) / "txdb.csv").string();
}

std::string coverage_dir(const Config& cfg) {
  if (!cfg.coverage.empty()) return cfg.coverage;
  return (fs::path(txdb_path(cfg)).parent_path() / "coverage").string();
}

double beta_linear(const Config& cfg) {
  if (cfg.beta_db) return std::pow(10.0, *cfg.beta_db / 10.0);
  return cfg.beta.value_or(1.0);
}

tvws_options options(const Config& cfg) {
  tvws_options opt;
  tvws_options_init(&opt);
  opt.alpha = cfg.alpha;
  opt.beta_th = beta_linear(cfg);
  opt.mode = cfg.mode == "raster" ? TVWS_MODE_RASTER : TVWS_MODE_DISK;
  opt.strict_excluded = cfg.strict_excluded ? 1 : 0;
  opt.workers = cfg.workers;
  return opt;
}

double power(const std::string& text) {
  double w = 0;
  check(tvws_parse_power(text.c_str(), &w));
  return w;
}

double length(const std::string& text) {
  double m = 0;
  check(tvws_parse_length(text.c_str(), &m));
  return m;
}

std::pair<double, double> location(const std::string& text) {
  double e = 0, n = 0;
  check(tvws_parse_location(text.c_str(), &e, &n));
  return {e, n};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(s);
  while (std::getline(in, field, sep)) out.push_back(field);
  return out;
}

std::array<double, 4> region(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 4) usage("region must be 'min_e,min_n,max_e,max_n'");
  return {length(parts[0]), length(parts[1]), length(parts[2]), length(parts[3])};
}

void load_plan(const Config& cfg, Plan& plan) {
  if (cfg.plan.empty()) check(tvws_plan_default(&plan.p));
  else check(tvws_plan_load(cfg.plan.c_str(), &plan.p));
}

void load_dataset(const Config& cfg, Dataset& ds) {
  const auto opt = options(cfg);
  check(tvws_dataset_load(txdb_path(cfg).c_str(), coverage_dir(cfg).c_str(), opt.mode, &ds.p));
  for (size_t i = 0; i < tvws_dataset_warning_count(ds.p); ++i)
    std::cerr << "warning: " << tvws_dataset_warning(ds.p, i) << "\n";
}

void write_output(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f || !f.write(content.data(), static_cast<std::streamsize>(content.size())))
    throw Failure{TVWS_ERR_DATA, "cannot write '" + path.string() + "'"};
}

// Output to <out>/<name> when --out is set, else stdout.
void deliver(const Config& cfg, const std::string& name, const std::string& content) {
  if (cfg.out.empty()) std::cout << content;
  else write_output(fs::path(cfg.out) / name, content);
}

std::string ranges(const std::vector<int>& ch) {
  if (ch.empty()) return "-";
  std::string s;
  for (size_t i = 0; i < ch.size();) {
    size_t j = i;
    while (j + 1 < ch.size() && ch[j + 1] == ch[j] + 1) ++j;
    if (!s.empty()) s += ",";
    s += std::to_string(ch[i]);
    if (j > i) s += "-" + std::to_string(ch[j]);
    i = j + 1;
  }
  return s;
}

std::vector<int> channels(const tvws_result* r, tvws_set which) {
  std::vector<int> v(tvws_result_channels(r, which, nullptr, 0));
  tvws_result_channels(r, which, v.data(), v.size());
  return v;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

int cmd_query(const Config& cfg, const std::string& loc, const std::string& label) {
  const auto [e, n] = location(loc);
  const double p = power(cfg.power);
  Plan plan;
  Dataset ds;
  load_plan(cfg, plan);
  load_dataset(cfg, ds);
  const auto opt = options(cfg);
  Result r;
  check(tvws_query(ds.p, plan.p, &opt, e, n, p, &r.p));

  const auto vacant = channels(r.p, TVWS_SET_VACANT);
  const auto occupied = channels(r.p, TVWS_SET_OCCUPIED);
  const auto filtered = channels(r.p, TVWS_SET_FILTERED);
  CString ref;
  const bool have_ref = tvws_format_gridref(e, n, 5, &ref.p) == TVWS_OK;

  std::cout << "location:    " << (have_ref ? ref.str() + " " : "") << "(" << fmt(e) << ", " << fmt(n) << ")\n"
            << "power:       " << fmt(p) << " W\n"
            << "alpha:       " << fmt(opt.alpha) << "  beta_th: " << fmt(opt.beta_th) << "\n"
            << "rho:         " << vacant.size() << " channels, " << vacant.size() * 8 << " MHz\n"
            << "vacant:      " << ranges(vacant) << "\n"
            << "occupied:    " << ranges(occupied) << "\n"
            << "contiguous:  " << fmt(tvws_result_max_contiguous_mhz(r.p)) << " MHz\n"
            << "filtered:    " << filtered.size() << " channels, " << filtered.size() * 8 << " MHz: " << ranges(filtered)
            << "\n";
  if (cfg.adjacent_filter) {
    for (int ch : vacant) {
      if (std::find(filtered.begin(), filtered.end(), ch) != filtered.end()) continue;
      std::cout << "  " << ch << " adjacent to occupied channel\n";
    }
  }

  if (!cfg.out.empty()) {
    const std::pair<tvws_format, const char*> outputs[] = {
        {TVWS_FORMAT_CSV, ".csv"}, {TVWS_FORMAT_JSON, ".json"}, {TVWS_FORMAT_SVG, ".svg"}};
    for (const auto& [f, ext] : outputs) {
      CString s;
      check(tvws_result_emit(r.p, label.c_str(), f, &s.p));
      write_output(fs::path(cfg.out) / (label + ext), s.str());
    }
  }
  return 0;
}

tvws_format format_of(const std::string& f) { return f == "json" ? TVWS_FORMAT_JSON : TVWS_FORMAT_CSV; }

int cmd_batch(const Config& cfg, std::string locations_path, const std::string& format) {
  if (locations_path.empty()) {
    const auto root = env_data_dir();
    locations_path = (root.empty() ? fs::path("locations.csv") : fs::path(root) / "locations.csv").string();
  }
  const double p = power(cfg.power);
  std::ifstream in(locations_path, std::ios::binary);
  if (!in) throw Failure{TVWS_ERR_DATA, "cannot open '" + locations_path + "'"};
  std::ostringstream text;
  text << in.rdbuf();

  Plan plan;
  Dataset ds;
  load_plan(cfg, plan);
  load_dataset(cfg, ds);
  const auto opt = options(cfg);
  CString out;
  check(tvws_batch(ds.p, plan.p, &opt, text.str().c_str(), p, format_of(format), &out.p));
  deliver(cfg, "report." + format, out.str());
  return 0;
}

std::vector<double> sweep_powers(const std::string& list, const std::string& range) {
  std::vector<double> powers;
  if (!range.empty()) {
    const auto parts = split(range, ':');
    if (parts.size() != 3) usage("range must be 'start:stop:count'");
    const double lo = power(parts[0]), hi = power(parts[1]);
    int count = 0;
    try {
      count = std::stoi(parts[2]);
    } catch (const std::exception&) {
      usage("range count must be an integer");
    }
    if (count < 1 || hi < lo) usage("range needs start <= stop and count >= 1");
    for (int i = 0; i < count; ++i) powers.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  }
  if (!list.empty())
    for (const auto& item : split(list, ',')) powers.push_back(power(item));
  if (powers.empty()) powers = {0.01, 0.1, 0.5, 1, 2, 4};
  return powers;
}

int cmd_sweep(const Config& cfg, const std::string& loc, const std::string& list, const std::string& range,
              const std::string& format) {
  const auto [e, n] = location(loc);
  const auto powers = sweep_powers(list, range);
  Plan plan;
  Dataset ds;
  load_plan(cfg, plan);
  load_dataset(cfg, ds);
  const auto opt = options(cfg);
  std::cerr << "sweep: alpha=" << fmt(opt.alpha) << " beta_th=" << fmt(opt.beta_th) << "\n";
  CString out;
  check(tvws_sweep(ds.p, plan.p, &opt, e, n, powers.data(), powers.size(), format_of(format), &out.p));
  deliver(cfg, "sweep." + format, out.str());
  return 0;
}

int cmd_grid(const Config& cfg, const std::string& region_text, const std::string& cell) {
  const auto box = region(region_text);
  const double cell_m = length(cell);
  const double p = power(cfg.power);
  Plan plan;
  Dataset ds;
  load_plan(cfg, plan);
  load_dataset(cfg, ds);
  const auto opt = options(cfg);
  CString out;
  check(tvws_grid(ds.p, plan.p, &opt, box[0], box[1], box[2], box[3], cell_m, p, cfg.adjacent_filter ? 1 : 0,
                  &out.p));
  deliver(cfg, "rho.asc", out.str());
  return 0;
}

struct SynthArgs {
  std::string preset;
  int n = 81;
  std::string region;
  std::string cell = "1km";
  double irregularity = 0.3;
  int locations = 18;
};

int cmd_synth(const Config& cfg, const SynthArgs& a) {
  tvws_synth_options opt;
  tvws_synth_options_init(&opt);
  if (a.preset == "uk81") opt.preset = TVWS_PRESET_UK81;
  else if (a.preset == "manchester") opt.preset = TVWS_PRESET_MANCHESTER;
  opt.seed = cfg.seed;
  opt.n = a.n;
  if (!a.region.empty()) {
    const auto box = region(a.region);
    opt.min_e = box[0];
    opt.min_n = box[1];
    opt.max_e = box[2];
    opt.max_n = box[3];
  }
  opt.cell_size_m = length(a.cell);
  opt.irregularity = a.irregularity;
  opt.alpha = cfg.alpha;
  opt.beta_th = beta_linear(cfg);
  opt.locations = a.locations;

  std::string dir = cfg.out.empty() ? env_data_dir() : cfg.out;
  if (dir.empty()) usage("synth needs --out or TVWS_DATA_DIR");
  Plan plan;
  load_plan(cfg, plan);
  check(tvws_synth(&opt, plan.p, dir.c_str()));
  std::cerr << "synth: wrote fixture to " << dir << "\n";
  return 0;
}

int cmd_disks(const Config& cfg) {
  size_t n = 0;
  check(tvws_write_disk_cache(txdb_path(cfg).c_str(), coverage_dir(cfg).c_str(), &n));
  std::cerr << "disks: wrote " << n << " disk files to " << coverage_dir(cfg) << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"TV white space availability from transmitter coverage data"};
  app.set_version_flag("--version", tvws_version());
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  app.add_option("--txdb", cfg.txdb, "transmitter database CSV (default $TVWS_DATA_DIR/txdb.csv)");
  app.add_option("--coverage", cfg.coverage, "coverage directory (default <txdb dir>/coverage)");
  app.add_option("--plan", cfg.plan, "channel plan file (default built-in plan)");
  app.add_option("--alpha", cfg.alpha, "pathloss exponent")->check(CLI::Range(1.0, 1e9));
  auto* beta = app.add_option("--beta", cfg.beta, "protection ratio, linear");
  auto* beta_db = app.add_option("--beta-db", cfg.beta_db, "protection ratio in dB");
  beta->excludes(beta_db);
  app.add_option("--power", cfg.power, "CR transmit power, e.g. 100mW, 2W (bare numbers are watts)");
  app.add_option("--mode", cfg.mode, "coverage model")->check(CLI::IsMember({"disk", "raster"}));
  app.add_flag("--adjacent-filter", cfg.adjacent_filter, "report/grid the adjacent-channel filtered set");
  app.add_flag("--strict-excluded", cfg.strict_excluded, "excluded channels also block their neighbours");
  app.add_option("--out", cfg.out, "output directory");
  app.add_option("--seed", cfg.seed, "seed for synth");
  app.add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1u, 256u));

  auto* query = app.add_subcommand("query", "availability at one location");
  std::string loc, label = "query";
  query->add_option("--loc", loc, "grid reference or easting,northing")->required();
  query->add_option("--label", label, "label used in reports and output file names");

  auto* batch = app.add_subcommand("batch", "availability report for a locations file");
  std::string locations_path, format = "csv";
  batch->add_option("--locations", locations_path, "label,location file (default $TVWS_DATA_DIR/locations.csv)");
  batch->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* sweep = app.add_subcommand("sweep", "availability against CR power at one location");
  std::string sweep_loc, powers, range, sweep_format = "csv";
  sweep->add_option("--loc", sweep_loc, "grid reference or easting,northing")->required();
  sweep->add_option("--powers", powers, "comma-separated powers, e.g. 10mW,0.1,2W");
  sweep->add_option("--range", range, "start:stop:count, linearly spaced");
  sweep->add_option("--format", sweep_format)->check(CLI::IsMember({"csv", "json"}));

  auto* grid = app.add_subcommand("grid", "rho over a region as an ESRI ASCII grid");
  std::string grid_region, grid_cell = "1km";
  grid->add_option("--region", grid_region, "min_e,min_n,max_e,max_n")->required();
  grid->add_option("--cell", grid_cell, "cell size, e.g. 1km");

  auto* synth = app.add_subcommand("synth", "write a synthetic fixture");
  SynthArgs sa;
  synth->add_option("--preset", sa.preset)->check(CLI::IsMember({"uk81", "manchester"}));
  synth->add_option("--n", sa.n, "number of transmitters")->check(CLI::PositiveNumber);
  synth->add_option("--region", sa.region, "min_e,min_n,max_e,max_n");
  synth->add_option("--cell", sa.cell, "raster cell size");
  synth->add_option("--irregularity", sa.irregularity)->check(CLI::Range(0.0, 0.99));
  synth->add_option("--locations", sa.locations, "labelled locations to generate")->check(CLI::NonNegativeNumber);

  auto* disks = app.add_subcommand("disks", "recompute the <id>.disk cache from rasters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : TVWS_ERR_USAGE;
  }

  try {
    if (*query) return cmd_query(cfg, loc, label);
    if (*batch) return cmd_batch(cfg, locations_path, format);
    if (*sweep) return cmd_sweep(cfg, sweep_loc, powers, range, sweep_format);
    if (*grid) return cmd_grid(cfg, grid_region, grid_cell);
    if (*synth) return cmd_synth(cfg, sa);
    if (*disks) return cmd_disks(cfg);
  } catch (const Failure& f) {
    std::cerr << "tvws: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "tvws: internal error: " << e.what() << "\n";
    return TVWS_ERR_INTERNAL;
  }
  return TVWS_ERR_USAGE;
}
