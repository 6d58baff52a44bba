#include "plasmoscan/beam.hpp"

#include <stdexcept>

#include "plasmoscan/errors.hpp"

namespace plasmoscan {

void BeamParams::validate(const HostMedium &host) const {
  if (!(wavelength_nm > 0.0)) throw ConfigError("beam: wavelength_nm must be > 0");
  if (!(na_focus > 0.0) || !(na_focus < host.refractive_index))
    throw ConfigError("beam: require 0 < na_focus < host refractive index");
  if (!(fill_factor > 0.0)) throw ConfigError("beam: fill_factor must be > 0");
  const double p = std::hypot(pol_x, pol_y);
  if (!(p > 0.0)) throw ConfigError("beam: polarization must be a nonzero transverse vector");
  if (!(power_norm > 0.0)) throw ConfigError("beam: power_norm must be > 0");
}

double pupil_apodization(const BeamParams &beam, const HostMedium &host, double theta) {
  const double alpha = beam.alpha_max(host);
  if (theta < 0.0 || theta > alpha)
    throw std::domain_error("pupil_apodization: theta outside [0, alpha]");
  const double s = std::sin(theta);
  const double sa = std::sin(alpha);
  const double f0 = beam.fill_factor;
  return std::exp(-(s * s) / (f0 * f0 * sa * sa)) * std::sqrt(std::cos(theta));
}

}  // namespace plasmoscan
