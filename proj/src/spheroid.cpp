#include "plasmoscan/spheroid.hpp"

#include <cmath>
#include <stdexcept>

#include "plasmoscan/errors.hpp"

namespace plasmoscan {

void SpheroidParticle::validate() const {
  if (!(semi_axis_short_nm > 0.0) || !(semi_axis_long_nm >= semi_axis_short_nm))
    throw ConfigError("spheroid: require semi_axis_long >= semi_axis_short > 0");
  const double n = orientation.norm();
  if (!(n > 0.0)) throw ConfigError("spheroid: orientation must be a nonzero vector");
  if (std::abs(orientation.z) > 1e-9 * n)
    throw ConfigError("spheroid: long axis must lie in the substrate plane (z = 0)");
}

std::pair<double, double> depolarization_factors(double a_nm, double b_nm) {
  if (!(b_nm > 0.0) || !(a_nm >= b_nm))
    throw std::domain_error("depolarization_factors: require a >= b > 0");
  const double ratio = b_nm / a_nm;
  const double e2 = 1.0 - ratio * ratio;  // squared eccentricity
  double l_long;
  if (e2 < 1e-8) {
    // Series in e²: L = (1-e²)(1/3 + e²/5 + e⁴/7 + ...) from atanh(e)/e.
    l_long = (1.0 - e2) * (1.0 / 3.0 + e2 / 5.0 + e2 * e2 / 7.0);
  } else {
    const double e = std::sqrt(e2);
    l_long = (1.0 - e2) / e2 * (std::atanh(e) / e - 1.0);
  }
  return {l_long, 0.5 * (1.0 - l_long)};
}

}  // namespace plasmoscan
