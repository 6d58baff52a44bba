#pragma once

#include <cmath>

#include "plasmoscan/core.hpp"
#include "plasmoscan/polarizability.hpp"

namespace plasmoscan {

/// Focused illumination: linearly polarized Gaussian beam through an
/// aplanatic objective. Wavelength is the vacuum value; propagation always
/// uses the host wavenumber k = 2π n_h / λ.
struct BeamParams {
  double wavelength_nm = 589.0;
  double na_focus = 1.4;      // hard aperture, < n_h
  double fill_factor = 0.7;   // f0 = beam waist / pupil radius
  double pol_x = 1.0;         // transverse polarization direction (unit)
  double pol_y = 0.0;
  double power_norm = 1.0;    // |E|² scales linearly with this

  void validate(const HostMedium &host) const;
  /// Focusing half-angle α = arcsin(NA / n_h).
  double alpha_max(const HostMedium &host) const {
    return std::asin(na_focus / host.refractive_index);
  }
  double pol_angle() const { return std::atan2(pol_y, pol_x); }
};

/// Pupil weight exp(-sin²θ / (f0² sin²α)) · √cosθ for 0 <= θ <= α.
/// Throws std::domain_error outside [0, α].
double pupil_apodization(const BeamParams &beam, const HostMedium &host, double theta);

}  // namespace plasmoscan
