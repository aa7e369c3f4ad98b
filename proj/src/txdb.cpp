#include "tvws/txdb.hpp"

#include "tvws/error.hpp"
#include "rng.hpp"
#include "text.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

namespace tvws {

const Transmitter* TransmitterDb::find(std::string_view id) const noexcept {
  for (const auto& tx : transmitters)
    if (tx.id == id) return &tx;
  return nullptr;
}

double parse_power(std::string_view text) {
  auto s = detail::trim(text);
  double scale = 1.0;
  if (s.ends_with("mW")) {
    scale = 1e-3;
    s.remove_suffix(2);
  } else if (s.ends_with("kW") || s.ends_with("KW")) {
    scale = 1e3;
    s.remove_suffix(2);
  } else if (s.ends_with("W")) {
    s.remove_suffix(1);
  }
  const double v = detail::parse_double(detail::trim(s), "power") * scale;
  if (!std::isfinite(v) || v < 0) throw DomainError("power must be a finite value >= 0, got '" + std::string(text) + "'");
  return v;
}

void validate(const Transmitter& tx) {
  if (tx.id.empty()) throw DataError("transmitter with empty id");
  if (!(tx.erp_watts > 0) || !std::isfinite(tx.erp_watts))
    throw DataError("transmitter '" + tx.id + "': ERP must be positive");
  if (tx.channels.empty()) throw DataError("transmitter '" + tx.id + "': no channels");
  if (!in_envelope(tx.position)) throw DataError("transmitter '" + tx.id + "': position off the national grid");
  if (!std::isfinite(tx.antenna_height_m)) throw DataError("transmitter '" + tx.id + "': bad antenna height");
}

LoadedTxdb load_txdb(std::string_view text, std::string source) {
  LoadedTxdb out;
  out.db.source = std::move(source);
  std::map<std::string, int, std::less<>> first_seen;
  bool header_seen = false;
  int line_no = 0;

  for (auto raw : detail::split(text, '\n')) {
    ++line_no;
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto where = "txdb line " + std::to_string(line_no) + ": ";
    if (!header_seen) {
      std::string normalized;
      for (char c : line)
        if (c != ' ' && c != '\t') normalized += c;
      if (normalized != kTxdbHeader)
        throw ParseError(where + "expected header '" + std::string(kTxdbHeader) + "'");
      header_seen = true;
      continue;
    }
    try {
      const auto f = detail::split_csv(line);
      if (f.size() != 6) throw ParseError("expected 6 fields, got " + std::to_string(f.size()));
      Transmitter tx;
      tx.id = std::string(detail::trim(f[0]));
      tx.position = {detail::parse_double(detail::trim(f[1]), "easting"),
                     detail::parse_double(detail::trim(f[2]), "northing")};
      tx.erp_watts = parse_power(f[3]);
      tx.antenna_height_m = detail::trim(f[4]).empty() ? 0.0 : parse_length(f[4]);
      for (auto c : detail::split(f[5], ';')) {
        const int n = detail::parse_int(detail::trim(c), "channel");
        if (!Channel::valid(n)) throw ParseError("channel " + std::to_string(n) + " outside 21-68");
        if (tx.channels.contains(n)) throw ParseError("channel " + std::to_string(n) + " listed twice");
        tx.channels.insert(n);
      }
      validate(tx);
      if (auto [it, fresh] = first_seen.emplace(tx.id, line_no); !fresh)
        throw DataError("duplicate id '" + tx.id + "' (first on line " + std::to_string(it->second) + ")");
      if (tx.erp_watts < kMinTypicalErpWatts || tx.erp_watts > kMaxTypicalErpWatts)
        out.warnings.push_back(where + "ERP " + detail::format_double(tx.erp_watts) + " W of '" + tx.id +
                               "' outside the typical 25 W - 200 kW range");
      out.db.transmitters.push_back(std::move(tx));
    } catch (const DataError& e) {
      throw DataError(where + e.what());
    } catch (const Error& e) {
      throw ParseError(where + e.what());
    }
  }
  if (!header_seen) throw ParseError("txdb: missing header '" + std::string(kTxdbHeader) + "'");
  return out;
}

std::string serialize_txdb(const TransmitterDb& db) {
  std::string out;
  if (!db.source.empty()) out += "# source: " + db.source + "\n";
  out += kTxdbHeader;
  out += '\n';
  for (const auto& tx : db.transmitters) {
    out += detail::csv_quote(tx.id) + ',' + detail::format_double(tx.position.easting) + ',' +
           detail::format_double(tx.position.northing) + ',' + detail::format_double(tx.erp_watts) + ',' +
           detail::format_double(tx.antenna_height_m) + ',' + format_channel_list(tx.channels, ";") + '\n';
  }
  return out;
}

TransmitterDb generate_synthetic(std::uint64_t seed, int n, const BoundingBox& region, const ChannelPlan& plan) {
  if (n < 1) throw DomainError("synthetic database needs n >= 1");
  if (region.empty()) throw DomainError("synthetic database region is empty");
  const auto pool = plan.interleaved().numbers();
  if (pool.size() < 3) throw DomainError("synthetic database needs at least 3 interleaved channels");

  detail::Rng rng(seed);
  TransmitterDb db;
  db.source = "synthetic seed=" + std::to_string(seed) + " n=" + std::to_string(n);
  const double log_lo = std::log(kMinTypicalErpWatts);
  const double log_hi = std::log(kMaxTypicalErpWatts);

  for (int i = 0; i < n; ++i) {
    Transmitter tx;
    char id[16];
    std::snprintf(id, sizeof id, "TX%03d", i + 1);
    tx.id = id;
    tx.position = {rng.uniform(region.min.easting, region.max.easting),
                   rng.uniform(region.min.northing, region.max.northing)};
    // Rounded to whole meters and watts so the CSV form is exact.
    tx.position.easting = std::clamp(std::floor(tx.position.easting), 0.0, kMaxEasting - 1);
    tx.position.northing = std::clamp(std::floor(tx.position.northing), 0.0, kMaxNorthing - 1);
    tx.erp_watts = std::round(std::exp(log_lo + (log_hi - log_lo) * std::sqrt(rng.uniform())));
    tx.antenna_height_m = std::round(rng.uniform(30.0, 300.0));

    // Usage count of each pool channel among transmitters within reuse distance.
    std::vector<int> load(pool.size(), 0);
    for (const auto& other : db.transmitters) {
      if (distance(other.position, tx.position) >= kSynthReuseDistance) continue;
      for (std::size_t k = 0; k < pool.size(); ++k)
        if (other.channels.contains(pool[k])) ++load[k];
    }
    std::vector<double> jitter(pool.size());
    for (auto& j : jitter) j = rng.uniform();
    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return load[a] != load[b] ? load[a] < load[b] : jitter[a] < jitter[b];
    });
    const int count = std::min<int>(rng.integer(3, 6), static_cast<int>(pool.size()));
    for (int k = 0; k < count; ++k) tx.channels.insert(pool[order[k]]);
    db.transmitters.push_back(std::move(tx));
  }
  return db;
}

} // namespace tvws
