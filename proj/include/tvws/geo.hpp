#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tvws {

/// Limits of the OSGB national grid, meters. Lower bounds closed, upper open.
inline constexpr double kMaxEasting = 700000.0;
inline constexpr double kMaxNorthing = 1300000.0;

/// A point on the British National Grid, meters.
///
/// Plain value type: raster origins and derived points may fall outside the
/// grid envelope. Use in_envelope() / check_envelope() where user input must
/// lie on the grid.
struct NgPoint {
  double easting = 0;
  double northing = 0;

  friend bool operator==(const NgPoint&, const NgPoint&) = default;
};

bool in_envelope(const NgPoint& p) noexcept;
/// Throws DomainError when p is non-finite or outside the envelope.
void check_envelope(const NgPoint& p);

/// Planar Euclidean distance.
double distance(const NgPoint& a, const NgPoint& b) noexcept;

/// Axis-aligned rectangle [min, max) in grid meters.
struct BoundingBox {
  NgPoint min;
  NgPoint max;

  double width() const noexcept { return max.easting - min.easting; }
  double height() const noexcept { return max.northing - min.northing; }
  bool empty() const noexcept { return !(width() > 0 && height() > 0); }
  bool contains(const NgPoint& p) const noexcept {
    return p.easting >= min.easting && p.easting < max.easting && p.northing >= min.northing &&
           p.northing < max.northing;
  }

  /// The full national grid envelope.
  static BoundingBox national_grid() { return {{0, 0}, {kMaxEasting, kMaxNorthing}}; }
};

/// Parses "e0,n0,e1,n1" (meters, `km` suffix allowed on each value).
BoundingBox parse_bbox(std::string_view text);

/// Parses an OSGB grid reference such as "SP 513 061" into the southwest
/// corner of the referenced cell. Whitespace is ignored and letters are
/// case-insensitive; 2 to 10 digits, split evenly between easting and
/// northing. Throws ParseError for bad letters (including 'I'), odd or out of
/// range digit counts; DomainError when the square lies off the grid.
NgPoint parse_gridref(std::string_view text);

/// Formats p with `digits` digits per axis (1..5), truncating toward the
/// southwest corner: format_gridref({451300, 206100}, 3) == "SP 513 061".
std::string format_gridref(const NgPoint& p, int digits);

/// Accepts either a grid reference or a raw "easting,northing" pair in meters.
/// The result is always inside the envelope.
NgPoint parse_location(std::string_view text);

/// Parses a length with optional `m` / `km` suffix; bare numbers are meters.
double parse_length(std::string_view text);

struct LabeledLocation {
  std::string label;
  NgPoint point;
};

/// Parses a locations file: one `label,location` per line, `#` comments,
/// optional `label,location` header. Duplicate labels are a ParseError.
std::vector<LabeledLocation> parse_locations(std::string_view text);

} // namespace tvws
