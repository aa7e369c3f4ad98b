#pragma once

#include "tvws/availability.hpp"
#include "tvws/channel_plan.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace tvws {

/// Parameters every emitted artifact records so a result can be reproduced.
struct ParamEcho {
  double alpha = 3.0;
  double beta_th = 1.0;
  double power_watts = 0;
  std::string plan_hash;
  /// "disk" or "raster".
  std::string mode = "disk";
  bool strict_excluded = false;

  friend bool operator==(const ParamEcho&, const ParamEcho&) = default;
};

struct LocationReport {
  std::string label;
  AvailabilityResult result;
  Contiguity contiguity;
  ParamEcho echo;
};

/// Assembles a report; contiguity is computed from result.vacant.
LocationReport make_report(std::string label, AvailabilityResult result, ParamEcho echo);

/// One row per report:
/// label,rho,rho_filtered,total_mhz,filtered_mhz,max_contiguous_mhz,vacant_channels
/// preceded by `#` metadata lines. All reports must share one ParamEcho
/// (DomainError otherwise); the list must be non-empty.
std::string emit_csv(const std::vector<LocationReport>& reports);
/// JSON array with one object per report, same field names as the CSV plus
/// channel lists, runs, blockers and the parameter echo.
std::string emit_json(const std::vector<LocationReport>& reports);

/// Standalone SVG 1.1 bar chart with one slot per channel 21-68. Vacant
/// interleaved channels are filled bars, occupied ones are outlines, cleared
/// and excluded channels are shaded differently. Byte-identical for identical
/// input. The plan is needed to classify non-interleaved channels.
std::string emit_channel_chart(const LocationReport& report, const ChannelPlan& plan);

/// power_watts,channels,mhz,filtered_channels,filtered_mhz in ascending power.
std::string emit_sweep(const std::vector<SweepPoint>& points, const ParamEcho& echo);
std::string emit_sweep_json(const std::vector<SweepPoint>& points, const ParamEcho& echo);

/// Parsed form of emit_csv() rows.
struct ReportRow {
  std::string label;
  int rho = 0;
  int rho_filtered = 0;
  double total_mhz = 0;
  double filtered_mhz = 0;
  double max_contiguous_mhz = 0;
  ChannelSet vacant;
};

std::vector<ReportRow> parse_report_csv(std::string_view text);
/// Parses emit_sweep() output back into points (metadata lines are skipped).
std::vector<SweepPoint> parse_sweep_csv(std::string_view text);
/// Reads the `# key=value` metadata of an emitted CSV.
ParamEcho parse_echo(std::string_view csv_text);

} // namespace tvws
