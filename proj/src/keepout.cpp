#include "tvws/keepout.hpp"

#include "tvws/coverage.hpp"
#include "tvws/error.hpp"
#include "tvws/txdb.hpp"

#include <cmath>

namespace tvws {

void PropagationParams::validate() const {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw DomainError("pathloss exponent alpha must be >= 1");
  if (!(beta_th > 0.0) || !std::isfinite(beta_th)) throw DomainError("protection ratio beta_th must be > 0");
}

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

void QueryParams::validate() const {
  prop.validate();
  if (!(p_cr_watts >= 0.0) || !std::isfinite(p_cr_watts)) throw DomainError("CR power must be >= 0");
}

double edge_separation(double p_cr, double p_tv, double r_tv, const PropagationParams& prop) {
  if (!(p_tv > 0)) throw DomainError("TV transmitter power must be > 0");
  if (!(r_tv > 0)) throw DomainError("coverage radius must be > 0");
  if (!(p_cr >= 0)) throw DomainError("CR power must be >= 0");
  prop.validate();
  if (p_cr == 0) return 0.0;
  return std::pow(prop.beta_th * p_cr / p_tv, 1.0 / prop.alpha) * r_tv;
}

double keepout_radius(double p_cr, double p_tv, double r_tv, const PropagationParams& prop) {
  return r_tv + edge_separation(p_cr, p_tv, r_tv, prop);
}

double margin(const NgPoint& p, const Transmitter& tx, const CoverageDisk& disk, const QueryParams& q) {
  if (disk.transmitter_id != tx.id)
    throw DataError("disk of '" + disk.transmitter_id + "' used for transmitter '" + tx.id + "'");
  return distance(p, tx.position) - keepout_radius(q.p_cr_watts, tx.erp_watts, disk.radius_m, q.prop);
}

} // namespace tvws
