// extern "C" surface over the engine: handles wrap the C++ value types,
// exceptions become status codes plus a thread-local message.

#include "tvws/tvws.h"

#include "tvws/availability.hpp"
#include "tvws/error.hpp"
#include "tvws/io.hpp"
#include "tvws/report.hpp"
#include "tvws/synth.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>

struct tvws_plan {
  tvws::ChannelPlan plan;
};

struct tvws_dataset {
  tvws::Dataset data;
  tvws::CoverageMode mode;
};

struct tvws_result {
  tvws::LocationReport report;
  tvws::ChannelPlan plan;
};

namespace {

thread_local std::string g_last_error;

template <class F>
tvws_status guard(tvws_status parse_status, F&& f) noexcept {
  try {
    f();
    g_last_error.clear();
    return TVWS_OK;
  } catch (const tvws::ParseError& e) {
    g_last_error = e.what();
    return parse_status;
  } catch (const tvws::DomainError& e) {
    g_last_error = e.what();
    return TVWS_ERR_USAGE;
  } catch (const tvws::DataError& e) {
    g_last_error = e.what();
    return TVWS_ERR_DATA;
  } catch (const tvws::IoError& e) {
    g_last_error = e.what();
    return TVWS_ERR_DATA;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal error: ") + e.what();
    return TVWS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "internal error: unknown exception";
    return TVWS_ERR_INTERNAL;
  }
}

template <class T>
const T& need(const T* p, const char* what) {
  if (!p) throw tvws::DomainError(std::string(what) + " must not be NULL");
  return *p;
}

const char* need(const char* p, const char* what) {
  if (!p) throw tvws::DomainError(std::string(what) + " must not be NULL");
  return p;
}

void put_string(char** out, const std::string& s) {
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (!buf) throw std::bad_alloc();
  std::memcpy(buf, s.data(), s.size() + 1);
  *out = buf;
}

tvws::PropagationParams prop_of(const tvws_options& opt) {
  tvws::PropagationParams p{opt.alpha, opt.beta_th};
  p.validate();
  return p;
}

tvws::ParamEcho echo_of(const tvws_options& opt, const tvws::ChannelPlan& plan, double power) {
  return {opt.alpha, opt.beta_th, power, plan.hash(), opt.mode == TVWS_MODE_RASTER ? "raster" : "disk",
          opt.strict_excluded != 0};
}

void check_mode(const tvws_dataset& ds, const tvws_options& opt, double power) {
  const auto want = opt.mode == TVWS_MODE_RASTER ? tvws::CoverageMode::raster : tvws::CoverageMode::disk;
  if (want != ds.mode) throw tvws::DomainError("options mode differs from the mode the dataset was loaded with");
  if (ds.mode == tvws::CoverageMode::raster && power != 0)
    throw tvws::DomainError("raster mode is the zero-power limit; use disk mode for power > 0");
}

tvws::AvailabilityResult evaluate(const tvws_dataset& ds, const tvws::ChannelPlan& plan, const tvws_options& opt,
                                  const tvws::NgPoint& p, double power) {
  auto r = ds.mode == tvws::CoverageMode::raster
               ? tvws::availability_lowpower(ds.data.db, ds.data.rasters, plan, p)
               : tvws::availability(ds.data.db, ds.data.disks, plan, {p, power, prop_of(opt)});
  if (opt.strict_excluded) r.filtered_vacant = tvws::adjacent_filter(r, plan.excluded());
  if (!r.filtered_vacant.subset_of(r.vacant) || r.rho != r.vacant.size() ||
      (r.vacant | r.occupied) != plan.interleaved() || !r.vacant.disjoint(r.occupied))
    throw tvws::InvariantError("availability result violates its invariants");
  return r;
}

} // namespace

extern "C" {

const char* tvws_version(void) { return "1.0.0"; }

const char* tvws_last_error(void) { return g_last_error.c_str(); }

void tvws_string_free(char* s) { std::free(s); }

void tvws_options_init(tvws_options* opt) {
  if (!opt) return;
  *opt = {3.0, 1.0, TVWS_MODE_DISK, 0, 1};
}

void tvws_synth_options_init(tvws_synth_options* opt) {
  if (!opt) return;
  const tvws::SynthOptions d;
  *opt = {TVWS_PRESET_NONE, d.seed, d.n, d.region.min.easting, d.region.min.northing, d.region.max.easting,
          d.region.max.northing, d.cell_size_m, d.irregularity, d.prop.alpha, d.prop.beta_th, d.locations};
}

tvws_status tvws_parse_location(const char* text, double* easting, double* northing) {
  return guard(TVWS_ERR_USAGE, [&] {
    const auto p = tvws::parse_location(need(text, "location"));
    need(easting, "easting");
    need(northing, "northing");
    *easting = p.easting;
    *northing = p.northing;
  });
}

tvws_status tvws_parse_power(const char* text, double* watts) {
  return guard(TVWS_ERR_USAGE, [&] {
    const double w = tvws::parse_power(need(text, "power"));
    need(watts, "watts");
    *watts = w;
  });
}

tvws_status tvws_parse_length(const char* text, double* meters) {
  return guard(TVWS_ERR_USAGE, [&] {
    const double m = tvws::parse_length(need(text, "length"));
    need(meters, "meters");
    *meters = m;
  });
}

tvws_status tvws_format_gridref(double easting, double northing, int digits, char** out) {
  return guard(TVWS_ERR_USAGE, [&] {
    need(out, "out");
    put_string(out, tvws::format_gridref({easting, northing}, digits));
  });
}

tvws_status tvws_plan_default(tvws_plan** out) {
  return guard(TVWS_ERR_USAGE, [&] {
    need(out, "out");
    *out = new tvws_plan{tvws::ChannelPlan::default_plan()};
  });
}

tvws_status tvws_plan_parse(const char* text, tvws_plan** out) {
  return guard(TVWS_ERR_DATA, [&] {
    need(out, "out");
    *out = new tvws_plan{tvws::load_plan(need(text, "plan text"))};
  });
}

tvws_status tvws_plan_load(const char* path, tvws_plan** out) {
  return guard(TVWS_ERR_DATA, [&] {
    need(out, "out");
    const auto text = tvws::read_file(need(path, "path"));
    try {
      *out = new tvws_plan{tvws::load_plan(text)};
    } catch (const tvws::ParseError& e) {
      throw tvws::ParseError(std::string(path) + ": " + e.what());
    }
  });
}

void tvws_plan_free(tvws_plan* plan) { delete plan; }

tvws_status tvws_plan_hash(const tvws_plan* plan, char** out) {
  return guard(TVWS_ERR_USAGE, [&] {
    need(out, "out");
    put_string(out, need(plan, "plan").plan.hash());
  });
}

size_t tvws_plan_interleaved_count(const tvws_plan* plan) { return plan ? plan->plan.interleaved().size() : 0; }

tvws_status tvws_dataset_load(const char* txdb_path, const char* coverage_dir, tvws_mode mode, tvws_dataset** out) {
  return guard(TVWS_ERR_DATA, [&] {
    need(out, "out");
    const auto m = mode == TVWS_MODE_RASTER ? tvws::CoverageMode::raster : tvws::CoverageMode::disk;
    *out = new tvws_dataset{tvws::load_dataset(need(txdb_path, "txdb path"), need(coverage_dir, "coverage dir"), m),
                            m};
  });
}

void tvws_dataset_free(tvws_dataset* ds) { delete ds; }

size_t tvws_dataset_size(const tvws_dataset* ds) { return ds ? ds->data.db.size() : 0; }

size_t tvws_dataset_warning_count(const tvws_dataset* ds) { return ds ? ds->data.warnings.size() : 0; }

const char* tvws_dataset_warning(const tvws_dataset* ds, size_t i) {
  if (!ds || i >= ds->data.warnings.size()) return nullptr;
  return ds->data.warnings[i].c_str();
}

tvws_status tvws_write_disk_cache(const char* txdb_path, const char* coverage_dir, size_t* written) {
  return guard(TVWS_ERR_DATA, [&] {
    const auto n = tvws::write_disk_cache(need(txdb_path, "txdb path"), need(coverage_dir, "coverage dir"));
    if (written) *written = n;
  });
}

tvws_status tvws_query(const tvws_dataset* ds, const tvws_plan* plan, const tvws_options* opt, double easting,
                       double northing, double power_watts, tvws_result** out) {
  return guard(TVWS_ERR_USAGE, [&] {
    need(out, "out");
    const auto& o = need(opt, "options");
    const auto& d = need(ds, "dataset");
    const auto& p = need(plan, "plan").plan;
    check_mode(d, o, power_watts);
    auto r = evaluate(d, p, o, {easting, northing}, power_watts);
    *out = new tvws_result{tvws::make_report("", std::move(r), echo_of(o, p, power_watts)), p};
  });
}

void tvws_result_free(tvws_result* r) { delete r; }

size_t tvws_result_rho(const tvws_result* r) { return r ? r->report.result.rho : 0; }

size_t tvws_result_channels(const tvws_result* r, tvws_set which, int* buf, size_t cap) {
  if (!r) return 0;
  const auto& res = r->report.result;
  const auto& set = which == TVWS_SET_OCCUPIED ? res.occupied
                    : which == TVWS_SET_FILTERED ? res.filtered_vacant
                                                 : res.vacant;
  const auto nums = set.numbers();
  for (size_t i = 0; buf && i < nums.size() && i < cap; ++i) buf[i] = nums[i];
  return nums.size();
}

double tvws_result_max_contiguous_mhz(const tvws_result* r) { return r ? r->report.contiguity.max_contiguous_mhz : 0; }

tvws_status tvws_result_blockers(const tvws_result* r, int channel, char** out) {
  return guard(TVWS_ERR_USAGE, [&] {
    need(out, "out");
    const auto& blockers = need(r, "result").report.result.per_channel_blockers;
    std::string joined;
    if (const auto it = blockers.find(tvws::Channel(channel).number()); it != blockers.end())
      for (const auto& id : it->second) joined += (joined.empty() ? "" : ";") + id;
    put_string(out, joined);
  });
}

tvws_status tvws_result_emit(const tvws_result* r, const char* label, tvws_format fmt, char** out) {
  return guard(TVWS_ERR_USAGE, [&] {
    need(out, "out");
    auto report = need(r, "result").report;
    report.label = label ? label : "";
    switch (fmt) {
      case TVWS_FORMAT_CSV: put_string(out, tvws::emit_csv({report})); break;
      case TVWS_FORMAT_JSON: put_string(out, tvws::emit_json({report})); break;
      case TVWS_FORMAT_SVG: put_string(out, tvws::emit_channel_chart(report, r->plan)); break;
      default: throw tvws::DomainError("unknown output format");
    }
  });
}

tvws_status tvws_batch(const tvws_dataset* ds, const tvws_plan* plan, const tvws_options* opt,
                       const char* locations_text, double power_watts, tvws_format fmt, char** out) {
  return guard(TVWS_ERR_USAGE, [&] {
    need(out, "out");
    const auto& o = need(opt, "options");
    const auto& d = need(ds, "dataset");
    const auto& p = need(plan, "plan").plan;
    check_mode(d, o, power_watts);
    if (fmt != TVWS_FORMAT_CSV && fmt != TVWS_FORMAT_JSON) throw tvws::DomainError("batch emits CSV or JSON");
    const auto locations = tvws::parse_locations(need(locations_text, "locations"));
    const auto echo = echo_of(o, p, power_watts);
    std::vector<std::optional<tvws::LocationReport>> slots(locations.size());
    tvws::parallel_for(locations.size(), o.workers, [&](std::size_t i) {
      slots[i] = tvws::make_report(locations[i].label, evaluate(d, p, o, locations[i].point, power_watts), echo);
    });
    std::vector<tvws::LocationReport> reports;
    reports.reserve(slots.size());
    for (auto& s : slots) reports.push_back(std::move(*s));
    put_string(out, fmt == TVWS_FORMAT_CSV ? tvws::emit_csv(reports) : tvws::emit_json(reports));
  });
}

tvws_status tvws_sweep(const tvws_dataset* ds, const tvws_plan* plan, const tvws_options* opt, double easting,
                       double northing, const double* powers, size_t count, tvws_format fmt, char** out) {
  return guard(TVWS_ERR_USAGE, [&] {
    need(out, "out");
    const auto& o = need(opt, "options");
    const auto& d = need(ds, "dataset");
    const auto& p = need(plan, "plan").plan;
    if (d.mode != tvws::CoverageMode::disk) throw tvws::DomainError("power sweeps need disk mode");
    check_mode(d, o, 0);
    if (count == 0) throw tvws::DomainError("power sweep needs at least one power");
    need(powers, "powers");
    const std::vector<double> list(powers, powers + count);
    auto points = tvws::power_sweep(d.data.db, d.data.disks, p, {easting, northing}, list, prop_of(o), o.workers);
    if (o.strict_excluded) {
      for (std::size_t i = 0; i < points.size(); ++i) {
        const auto r = evaluate(d, p, o, {easting, northing}, list[i]);
        points[i].filtered_rho = r.filtered_vacant.size();
      }
    }
    const auto echo = echo_of(o, p, 0);
    if (fmt == TVWS_FORMAT_CSV) put_string(out, tvws::emit_sweep(points, echo));
    else if (fmt == TVWS_FORMAT_JSON) put_string(out, tvws::emit_sweep_json(points, echo));
    else throw tvws::DomainError("sweep emits CSV or JSON");
  });
}

tvws_status tvws_grid(const tvws_dataset* ds, const tvws_plan* plan, const tvws_options* opt, double min_e,
                      double min_n, double max_e, double max_n, double cell_size_m, double power_watts, int filtered,
                      char** out) {
  return guard(TVWS_ERR_USAGE, [&] {
    need(out, "out");
    const auto& o = need(opt, "options");
    const auto& d = need(ds, "dataset");
    const auto& p = need(plan, "plan").plan;
    if (d.mode != tvws::CoverageMode::disk) throw tvws::DomainError("grids need disk mode");
    check_mode(d, o, power_watts);
    if (o.strict_excluded && filtered)
      throw tvws::DomainError("strict excluded-channel filtering is not supported for grids");
    const auto grid = tvws::availability_grid(d.data.db, d.data.disks, p, {{min_e, min_n}, {max_e, max_n}},
                                              cell_size_m, power_watts, prop_of(o), filtered != 0, o.workers);
    put_string(out, tvws::write_rho_asc(grid));
  });
}

tvws_status tvws_synth(const tvws_synth_options* opt, const tvws_plan* plan, const char* out_dir) {
  return guard(TVWS_ERR_USAGE, [&] {
    const auto& o = need(opt, "options");
    const auto& p = need(plan, "plan").plan;
    const tvws::PropagationParams prop{o.alpha, o.beta_th};
    prop.validate();
    tvws::Fixture fx;
    if (o.preset == TVWS_PRESET_MANCHESTER) {
      fx = tvws::manchester_fixture(prop);
    } else {
      tvws::SynthOptions s;
      if (o.preset == TVWS_PRESET_UK81) {
        s = tvws::uk81_preset(o.seed);
      } else {
        s.seed = o.seed;
        s.n = o.n;
        s.region = {{o.min_e, o.min_n}, {o.max_e, o.max_n}};
        s.cell_size_m = o.cell_size_m;
        s.irregularity = o.irregularity;
      }
      s.prop = prop;
      s.locations = o.locations;
      fx = tvws::synth_fixture(s, p);
    }
    tvws::write_fixture(need(out_dir, "output directory"), fx);
  });
}

} // extern "C"
