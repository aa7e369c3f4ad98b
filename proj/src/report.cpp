#include "tvws/report.hpp"

#include "tvws/error.hpp"
#include "text.hpp"

#include <json.hpp>

#include <algorithm>

namespace tvws {

namespace {

constexpr std::string_view kReportHeader =
    "label,rho,rho_filtered,total_mhz,filtered_mhz,max_contiguous_mhz,vacant_channels";
constexpr std::string_view kSweepHeader = "power_watts,channels,mhz,filtered_channels,filtered_mhz";

// Sweeps span many powers, so their echo leaves power out.
std::string echo_line(const ParamEcho& e, bool with_power = true) {
  return "# alpha=" + detail::format_double(e.alpha) + " beta_th=" + detail::format_double(e.beta_th) +
         (with_power ? " power_watts=" + detail::format_double(e.power_watts) : std::string()) +
         " plan_hash=" + e.plan_hash +
         " mode=" + e.mode + " strict_excluded=" + (e.strict_excluded ? "1" : "0") + "\n";
}

nlohmann::ordered_json echo_json(const ParamEcho& e, bool with_power = true) {
  nlohmann::ordered_json j{{"alpha", e.alpha}, {"beta_th", e.beta_th}};
  if (with_power) j["power_watts"] = e.power_watts;
  j["plan_hash"] = e.plan_hash;
  j["mode"] = e.mode;
  j["strict_excluded"] = e.strict_excluded;
  return j;
}

const ParamEcho& common_echo(const std::vector<LocationReport>& reports) {
  if (reports.empty()) throw DomainError("no reports to emit");
  for (const auto& r : reports)
    if (!(r.echo == reports.front().echo))
      throw DomainError("reports with different parameters cannot share one table");
  return reports.front().echo;
}

std::vector<int> to_vector(const ChannelSet& s) { return s.numbers(); }

} // namespace

LocationReport make_report(std::string label, AvailabilityResult result, ParamEcho echo) {
  LocationReport r{std::move(label), std::move(result), {}, std::move(echo)};
  r.contiguity = contiguity(r.result.vacant);
  return r;
}

std::string emit_csv(const std::vector<LocationReport>& reports) {
  const auto& echo = common_echo(reports);
  std::string out = "# tvws location report\n" + echo_line(echo);
  out += kReportHeader;
  out += '\n';
  for (const auto& r : reports) {
    const auto& res = r.result;
    out += detail::csv_quote(r.label) + ',' + std::to_string(res.rho) + ',' +
           std::to_string(res.filtered_vacant.size()) + ',' + detail::format_double(bandwidth_mhz(res.vacant)) +
           ',' + detail::format_double(bandwidth_mhz(res.filtered_vacant)) + ',' +
           detail::format_double(r.contiguity.max_contiguous_mhz) + ',' + format_channel_list(res.vacant, ";") +
           '\n';
  }
  return out;
}

std::string emit_json(const std::vector<LocationReport>& reports) {
  common_echo(reports);
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    const auto& res = r.result;
    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    for (const auto& run : r.contiguity.runs) runs.push_back({run.first, run.last});
    nlohmann::ordered_json blockers = nlohmann::ordered_json::object();
    for (const auto& [ch, ids] : res.per_channel_blockers) blockers[std::to_string(ch)] = ids;
    arr.push_back({{"label", r.label},
                   {"easting", res.location.easting},
                   {"northing", res.location.northing},
                   {"rho", res.rho},
                   {"rho_filtered", res.filtered_vacant.size()},
                   {"total_mhz", bandwidth_mhz(res.vacant)},
                   {"filtered_mhz", bandwidth_mhz(res.filtered_vacant)},
                   {"max_contiguous_mhz", r.contiguity.max_contiguous_mhz},
                   {"vacant_channels", to_vector(res.vacant)},
                   {"occupied_channels", to_vector(res.occupied)},
                   {"filtered_channels", to_vector(res.filtered_vacant)},
                   {"runs", runs},
                   {"blockers", blockers},
                   {"params", echo_json(r.echo)}});
  }
  return arr.dump(2) + "\n";
}

std::string emit_channel_chart(const LocationReport& report, const ChannelPlan& plan) {
  constexpr int kSlot = 14, kBar = 10, kLeft = 40, kTop = 40, kHeight = 160;
  constexpr int kWidth = kLeft * 2 + kSlot * kChannelCount;
  constexpr int kTotalHeight = kTop + kHeight + 60;
  const auto& res = report.result;
  const auto& e = report.echo;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(kWidth) +
         "\" height=\"" + std::to_string(kTotalHeight) + "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " +
         std::to_string(kTotalHeight) + "\">\n";
  const std::string meta = echo_line(e);
  out += "<!--" + meta.substr(1, meta.size() - 2) + " -->\n";
  std::string title = report.label;
  for (const auto& [from, to] : {std::pair{'&', "&amp;"}, std::pair{'<', "&lt;"}, std::pair{'>', "&gt;"}}) {
    std::string escaped;
    for (char c : title) escaped += c == from ? std::string(to) : std::string(1, c);
    title = escaped;
  }
  out += "<title>" + title + "</title>\n";
  out += "<text x=\"" + std::to_string(kLeft) + "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" +
         title + ": " + std::to_string(res.rho) + " vacant channels (" +
         detail::format_double(bandwidth_mhz(res.vacant)) + " MHz), " +
         std::to_string(res.filtered_vacant.size()) + " after N\xC2\xB1" "1 filter</text>\n";

  for (int ch = kFirstChannel; ch <= kLastChannel; ++ch) {
    const int x = kLeft + (ch - kFirstChannel) * kSlot + (kSlot - kBar) / 2;
    std::string cls, style;
    switch (plan.classify(Channel(ch))) {
      case ChannelClass::interleaved:
        if (res.vacant.contains(ch)) {
          const bool kept = res.filtered_vacant.contains(ch);
          cls = kept ? "vacant" : "vacant adjacent-blocked";
          style = kept ? "fill=\"#1f5fbf\"" : "fill=\"#8fb0e0\"";
        } else {
          cls = "occupied";
          style = "fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1\"";
        }
        break;
      case ChannelClass::cleared:
        cls = "cleared";
        style = "fill=\"#dddddd\"";
        break;
      case ChannelClass::excluded:
        cls = "excluded";
        style = "fill=\"#f2c4c4\"";
        break;
    }
    out += "<rect class=\"" + cls + "\" data-channel=\"" + std::to_string(ch) + "\" x=\"" + std::to_string(x) +
           "\" y=\"" + std::to_string(kTop) + "\" width=\"" + std::to_string(kBar) + "\" height=\"" +
           std::to_string(kHeight) + "\" " + style + "/>\n";
    if ((ch - kFirstChannel) % 5 == 0 || ch == kLastChannel) {
      out += "<text x=\"" + std::to_string(x + kBar / 2) + "\" y=\"" + std::to_string(kTop + kHeight + 16) +
             "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" + std::to_string(ch) +
             "</text>\n";
      out += "<text x=\"" + std::to_string(x + kBar / 2) + "\" y=\"" + std::to_string(kTop + kHeight + 30) +
             "\" font-family=\"sans-serif\" font-size=\"8\" text-anchor=\"middle\">" +
             detail::format_double(channel_to_band(ch).low_mhz) + "</text>\n";
    }
  }
  out += "<text x=\"" + std::to_string(kLeft) + "\" y=\"" + std::to_string(kTotalHeight - 10) +
         "\" font-family=\"sans-serif\" font-size=\"10\">UHF channel (lower edge, MHz)</text>\n";
  out += "</svg>\n";
  return out;
}

std::string emit_sweep(const std::vector<SweepPoint>& points, const ParamEcho& echo) {
  if (points.empty()) throw DomainError("empty power sweep");
  auto sorted = points;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const SweepPoint& a, const SweepPoint& b) { return a.power_watts < b.power_watts; });
  std::string out = "# tvws power sweep\n" + echo_line(echo, false);
  out += kSweepHeader;
  out += '\n';
  for (const auto& p : sorted) {
    out += detail::format_double(p.power_watts) + ',' + std::to_string(p.rho) + ',' +
           detail::format_double(kChannelWidthMhz * static_cast<double>(p.rho)) + ',' +
           std::to_string(p.filtered_rho) + ',' +
           detail::format_double(kChannelWidthMhz * static_cast<double>(p.filtered_rho)) + '\n';
  }
  return out;
}

std::string emit_sweep_json(const std::vector<SweepPoint>& points, const ParamEcho& echo) {
  if (points.empty()) throw DomainError("empty power sweep");
  auto sorted = points;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const SweepPoint& a, const SweepPoint& b) { return a.power_watts < b.power_watts; });
  auto rows = nlohmann::ordered_json::array();
  for (const auto& p : sorted)
    rows.push_back({{"power_watts", p.power_watts},
                    {"channels", p.rho},
                    {"mhz", kChannelWidthMhz * static_cast<double>(p.rho)},
                    {"filtered_channels", p.filtered_rho},
                    {"filtered_mhz", kChannelWidthMhz * static_cast<double>(p.filtered_rho)}});
  nlohmann::ordered_json doc{{"params", echo_json(echo, false)}, {"sweep", rows}};
  return doc.dump(2) + "\n";
}

namespace {

// Data lines of an emitted CSV after the header; checks the header.
std::vector<std::vector<std::string>> csv_body(std::string_view text, std::string_view header) {
  std::vector<std::vector<std::string>> rows;
  bool seen_header = false;
  for (auto line : detail::split(text, '\n')) {
    if (line.empty() || line.front() == '#') continue;
    if (!seen_header) {
      if (detail::trim(line) != header) throw ParseError("unexpected CSV header '" + std::string(line) + "'");
      seen_header = true;
      continue;
    }
    rows.push_back(detail::split_csv(line));
  }
  if (!seen_header) throw ParseError("CSV header missing");
  return rows;
}

} // namespace

std::vector<ReportRow> parse_report_csv(std::string_view text) {
  std::vector<ReportRow> out;
  for (const auto& f : csv_body(text, kReportHeader)) {
    if (f.size() != 7) throw ParseError("report row needs 7 fields");
    ReportRow r;
    r.label = f[0];
    r.rho = detail::parse_int(f[1], "rho");
    r.rho_filtered = detail::parse_int(f[2], "rho_filtered");
    r.total_mhz = detail::parse_double(f[3], "total_mhz");
    r.filtered_mhz = detail::parse_double(f[4], "filtered_mhz");
    r.max_contiguous_mhz = detail::parse_double(f[5], "max_contiguous_mhz");
    if (!f[6].empty())
      for (auto c : detail::split(f[6], ';')) r.vacant.insert(detail::parse_int(c, "channel"));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SweepPoint> parse_sweep_csv(std::string_view text) {
  std::vector<SweepPoint> out;
  for (const auto& f : csv_body(text, kSweepHeader)) {
    if (f.size() != 5) throw ParseError("sweep row needs 5 fields");
    out.push_back({detail::parse_double(f[0], "power_watts"),
                   static_cast<std::size_t>(detail::parse_int(f[1], "channels")),
                   static_cast<std::size_t>(detail::parse_int(f[3], "filtered_channels"))});
  }
  return out;
}

ParamEcho parse_echo(std::string_view csv_text) {
  for (auto line : detail::split(csv_text, '\n')) {
    if (!line.starts_with("# alpha=")) continue;
    ParamEcho e;
    for (auto tok : detail::split(detail::trim(line.substr(1)), ' ')) {
      const auto eq = tok.find('=');
      if (eq == std::string_view::npos) continue;
      const auto key = tok.substr(0, eq);
      const auto value = tok.substr(eq + 1);
      if (key == "alpha") e.alpha = detail::parse_double(value, "alpha");
      else if (key == "beta_th") e.beta_th = detail::parse_double(value, "beta_th");
      else if (key == "power_watts") e.power_watts = detail::parse_double(value, "power_watts");
      else if (key == "plan_hash") e.plan_hash = std::string(value);
      else if (key == "mode") e.mode = std::string(value);
      else if (key == "strict_excluded") e.strict_excluded = value == "1";
    }
    return e;
  }
  throw ParseError("no parameter echo found");
}

} // namespace tvws
