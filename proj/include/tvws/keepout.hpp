#pragma once

#include "tvws/geo.hpp"

namespace tvws {

struct Transmitter;
struct CoverageDisk;

/// Pathloss model shared by the keep-out math and synthetic coverage.
struct PropagationParams {
  /// Pathloss exponent, >= 1.
  double alpha = 3.0;
  /// TV receiver protection ratio, linear (not dB), > 0.
  double beta_th = 1.0;

  /// Throws DomainError when out of range.
  void validate() const;
  friend bool operator==(const PropagationParams&, const PropagationParams&) = default;
};

/// 10^(db/10).
double db_to_linear(double db) noexcept;

struct QueryParams {
  NgPoint location;
  double p_cr_watts = 0;
  PropagationParams prop;

  void validate() const;
};

/// Minimum distance from a TV transmitter at which a cognitive radio of power
/// p_cr may reuse its channels:
///
///     R' = (1 + (beta_th * p_cr / p_tv)^(1/alpha)) * r_tv
///
/// The second term is the separation needed from the coverage edge so that
/// the TV-to-CR power ratio at the edge, (p_tv / r_tv^a) / (p_cr / d^a),
/// stays >= beta_th. Throws DomainError for p_tv <= 0, r_tv <= 0 or p_cr < 0.
double keepout_radius(double p_cr, double p_tv, double r_tv, const PropagationParams& prop);

/// Separation needed beyond the coverage edge (the second term above).
double edge_separation(double p_cr, double p_tv, double r_tv, const PropagationParams& prop);

/// distance(p, tx) - R'. Non-negative means tx's channels are usable at p;
/// zero counts as usable.
double margin(const NgPoint& p, const Transmitter& tx, const CoverageDisk& disk, const QueryParams& q);

} // namespace tvws
