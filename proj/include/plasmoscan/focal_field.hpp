#pragma once

#include <vector>

#include "plasmoscan/beam.hpp"
#include "plasmoscan/core.hpp"

namespace plasmoscan {

/// Quadrature policy for the diffraction integrals. The effective θ-order is
/// raised automatically with the transverse phase excursion k·ρ·sinα so that
/// samples anywhere within a few λ of focus stay below ~1e-6 relative error.
struct FocalQuadrature {
  int theta_order = 64;
  int phi_order = 128;  // used by the far-field cone integrals

  int effective_theta_order(double k, double rho_nm, double sin_alpha) const;
};

/// Vector focal field at r = (x, y, z) nm relative to the geometric focus.
///
/// Debye-Wolf integral of the apodized pupil, reduced to three θ-integrals
/// with Bessel kernels (azimuthal orders 0, 1, 2). Amplitude scale is
/// √power_norm; intensity is linear in power_norm.
CVec3 focal_field_point(const BeamParams &beam, const HostMedium &host, const Vec3 &r_nm,
                        const FocalQuadrature &quad = {});

/// Regular transverse grid at height z.
struct FocalGridSpec {
  int nx = 65;
  int ny = 65;
  double pitch_nm = 40.0;  // must satisfy pitch <= λ / (8 n_h)
  double z_nm = 0.0;

  double x_of(int ix) const { return (ix - (nx - 1) * 0.5) * pitch_nm; }
  double y_of(int iy) const { return (iy - (ny - 1) * 0.5) * pitch_nm; }
};

/// Sampled complex field plus the scalar intensity |E|² per grid point.
struct FocalField {
  BeamParams beam;
  HostMedium host;
  FocalGridSpec grid;
  std::vector<CVec3> values;       // row-major, iy*nx + ix
  std::vector<double> intensity;   // |E|²

  const CVec3 &at(int ix, int iy) const { return values[std::size_t(iy) * grid.nx + ix]; }
  /// Bilinear interpolation; throws std::range_error outside the grid.
  CVec3 sample(double x_nm, double y_nm) const;
};

/// Evaluate the field over the grid. Enforces the sampling invariant
/// pitch <= λ/(8 n_h); pixels are independent and run on `threads` threads.
FocalField focal_intensity_map(const BeamParams &beam, const HostMedium &host,
                               const FocalGridSpec &grid, const FocalQuadrature &quad = {},
                               int threads = 1);

/// ∫|E|² dx dy over the grid plane (rectangle rule; grids share truncation
/// when compared across z-planes).
double integrated_plane_power(const FocalField &field);

/// FWHM of a single-peaked profile by linear interpolation around the
/// half-maximum crossings. `baseline` is subtracted first (0 for intensity
/// profiles). Throws NumericalError if the peak touches the profile ends.
double profile_fwhm(const std::vector<double> &positions_nm, const std::vector<double> &values,
                    double baseline = 0.0);

enum class Axis { X, Y };

/// FWHM of the intensity map along the given axis through the peak pixel.
double spot_fwhm(const FocalField &field, Axis axis);

}  // namespace plasmoscan
