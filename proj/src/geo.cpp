#include "tvws/geo.hpp"

#include "tvws/error.hpp"
#include "text.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>

namespace tvws {

namespace {

// 5x5 letter grid without 'I'; index = row_from_top * 5 + column.
constexpr std::string_view kLetters = "ABCDEFGHJKLMNOPQRSTUVWXYZ";
constexpr double kSquare = 100000.0;
// Offset of the false origin (square SV) within the 500 km letter grid, in 100 km units.
constexpr int kOriginX = 10;
constexpr int kOriginY = 5;

int letter_index(char c) {
  const auto up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  const auto pos = kLetters.find(up);
  return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

} // namespace

bool in_envelope(const NgPoint& p) noexcept {
  return std::isfinite(p.easting) && std::isfinite(p.northing) && p.easting >= 0 &&
         p.easting < kMaxEasting && p.northing >= 0 && p.northing < kMaxNorthing;
}

void check_envelope(const NgPoint& p) {
  if (!in_envelope(p))
    throw DomainError("point (" + detail::format_double(p.easting) + ", " +
                      detail::format_double(p.northing) +
                      ") outside the national grid envelope [0,700000) x [0,1300000)");
}

double distance(const NgPoint& a, const NgPoint& b) noexcept {
  return std::hypot(a.easting - b.easting, a.northing - b.northing);
}

NgPoint parse_gridref(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  const std::string quoted = "grid reference '" + std::string(text) + "'";

  if (compact.size() < 2) throw ParseError(quoted + " too short");
  int xh = 0, yh = 0;
  for (int k = 0; k < 2; ++k) {
    const int i = letter_index(compact[k]);
    if (i < 0) throw ParseError(quoted + ": invalid square letter '" + compact[k] + "'");
    yh = yh * 5 + (4 - i / 5);
    xh = xh * 5 + i % 5;
  }
  xh -= kOriginX;
  yh -= kOriginY;

  const std::string_view digits = std::string_view(compact).substr(2);
  if (digits.size() % 2 != 0) throw ParseError(quoted + ": odd number of digits");
  if (digits.size() < 2 || digits.size() > 10)
    throw ParseError(quoted + ": expected 2 to 10 digits");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError(quoted + ": non-digit '" + c + "'");

  const auto half = digits.size() / 2;
  double unit = kSquare;
  double e = kSquare * xh;
  double n = kSquare * yh;
  for (std::size_t i = 0; i < half; ++i) {
    unit /= 10;
    e += unit * (digits[i] - '0');
    n += unit * (digits[half + i] - '0');
  }
  const NgPoint p{e, n};
  if (!in_envelope(p)) throw DomainError(quoted + " lies outside the national grid");
  return p;
}

std::string format_gridref(const NgPoint& p, int digits) {
  check_envelope(p);
  if (digits < 1 || digits > 5) throw DomainError("grid reference precision must be 1..5 digits");
  const int xh = static_cast<int>(std::floor(p.easting / kSquare)) + kOriginX;
  const int yh = static_cast<int>(std::floor(p.northing / kSquare)) + kOriginY;
  std::string out;
  out += kLetters[(4 - yh / 5) * 5 + xh / 5];
  out += kLetters[(4 - yh % 5) * 5 + xh % 5];

  const double unit = std::pow(10.0, 5 - digits);
  const auto fe = static_cast<long>(std::floor(std::fmod(p.easting, kSquare) / unit));
  const auto fn = static_cast<long>(std::floor(std::fmod(p.northing, kSquare) / unit));
  char buf[16];
  std::snprintf(buf, sizeof buf, " %0*ld %0*ld", digits, fe, digits, fn);
  return out + buf;
}

double parse_length(std::string_view text) {
  auto s = detail::trim(text);
  double scale = 1.0;
  if (s.ends_with("km")) {
    scale = 1000.0;
    s.remove_suffix(2);
  } else if (s.ends_with("m")) {
    s.remove_suffix(1);
  }
  return scale * detail::parse_double(detail::trim(s), "length");
}

NgPoint parse_location(std::string_view text) {
  const auto s = detail::trim(text);
  if (s.empty()) throw ParseError("empty location");
  if (std::isalpha(static_cast<unsigned char>(s.front()))) return parse_gridref(s);

  const auto parts = detail::split(s, ',');
  if (parts.size() != 2)
    throw ParseError("location '" + std::string(text) + "' is neither a grid reference nor 'easting,northing'");
  const NgPoint p{detail::parse_double(detail::trim(parts[0]), "easting"),
                  detail::parse_double(detail::trim(parts[1]), "northing")};
  check_envelope(p);
  return p;
}

BoundingBox parse_bbox(std::string_view text) {
  const auto parts = detail::split(text, ',');
  if (parts.size() != 4) throw ParseError("region must be 'e0,n0,e1,n1', got '" + std::string(text) + "'");
  BoundingBox b{{parse_length(parts[0]), parse_length(parts[1])},
                {parse_length(parts[2]), parse_length(parts[3])}};
  if (b.empty()) throw DomainError("region '" + std::string(text) + "' is empty");
  return b;
}

std::vector<LabeledLocation> parse_locations(std::string_view text) {
  std::vector<LabeledLocation> out;
  std::set<std::string> seen;
  int line_no = 0;
  for (auto line : detail::split(text, '\n')) {
    ++line_no;
    if (detail::trim(line).empty() || detail::trim(line).front() == '#') continue;
    const auto where = "locations line " + std::to_string(line_no) + ": ";
    std::vector<std::string> fields;
    try {
      fields = detail::split_csv(line);
    } catch (const ParseError& e) {
      throw ParseError(where + e.what());
    }
    // "label,easting,northing" is accepted as well as "label,gridref".
    if (fields.size() == 3) fields[1] += "," + fields[2];
    else if (fields.size() != 2) throw ParseError(where + "expected 'label,location'");
    const std::string label{detail::trim(fields[0])};
    if (out.empty() && label == "label") continue;
    if (label.empty()) throw ParseError(where + "empty label");
    if (!seen.insert(label).second) throw ParseError(where + "duplicate label '" + label + "'");
    try {
      out.push_back({label, parse_location(fields[1])});
    } catch (const Error& e) {
      throw ParseError(where + e.what());
    }
  }
  if (out.empty()) throw ParseError("locations file lists no locations");
  return out;
}

} // namespace tvws
