#pragma once

#include <memory>
#include <vector>

#include "plasmoscan/beam.hpp"
#include "plasmoscan/core.hpp"
#include "plasmoscan/focal_field.hpp"
#include "plasmoscan/polarizability.hpp"

namespace plasmoscan {

enum class Channel { Transmission, Reflection };

/// Collection cone and, for the reflection channel, the residual specular
/// reflection of the illumination that acts as the reference wave.
struct DetectionGeometry {
  Channel channel = Channel::Transmission;
  double na_collect = 1.4;
  Complex r_ref{0.0316227766016838, 0.0};  // |r_ref|² = 1e-3, phase 0

  void validate(const HostMedium &host) const;
  double beta_max(const HostMedium &host) const {
    return std::asin(na_collect / host.refractive_index);
  }
};

/// The three terms of the detected interferometric signal
/// I_d = |E_ref|² + |E_sca|² - 2|E_ref||E_sca| sinφ, integrated over the
/// collection cone and normalized. Their sum is the total signal; φ is the
/// effective scattering phase solved from the interference term.
struct SignalDecomposition {
  double ref_term = 0.0;
  double sca_term = 0.0;
  double interference_term = 0.0;
  double phase = 0.0;  // rad

  double total() const { return ref_term + sca_term + interference_term; }
};

struct DetectorSignal {
  double signal = 0.0;
  SignalDecomposition decomposition;
};

/// Dipole moment induced at `position_nm` by a sampled focal field
/// (bilinear interpolation on the grid), p = α·E in the lab frame.
CVec3 induced_dipole(const FocalField &field, const PolarizabilityTensor &alpha,
                     const Vec3 &orientation, const Vec3 &position_nm);

/// Far-field angular amplitude of the focused beam in direction (θ, φ),
/// on the Gaussian reference sphere (units: field x length). Zero outside
/// the hard aperture cone.
CVec3 beam_farfield_amplitude(const BeamParams &beam, const HostMedium &host, double theta,
                              double phi);

/// Power of the beam through the forward cone θ <= β (same units as the
/// detector integrals; absolute scale cancels in normalized signals).
double beam_cone_power(const BeamParams &beam, const HostMedium &host, double beta,
                       const FocalQuadrature &quad = {});

/// Precomputed angular grid + reference amplitudes for one detection channel.
/// Reused across raster pixels; build once, read-only afterwards. Default
/// quadrature orders resolve particle offsets to ~3.5 µm from focus; raise
/// theta_order/phi_order for larger scans.
class DetectorContext {
 public:
  DetectorContext(const BeamParams &beam, const HostMedium &host,
                  const DetectionGeometry &detection, const FocalQuadrature &quad = {});

  /// Signal for a dipole P sitting at r_p (nm, relative to focus).
  DetectorSignal evaluate(const CVec3 &dipole, const Vec3 &r_p) const;

  double k() const { return k_; }
  Channel channel() const { return channel_; }
  /// Background level with no particle (1 in transmission, ~|r_ref|² in reflection).
  double background() const { return ref_power_ / norm_power_; }
  /// Normalization power (no-particle transmitted power in transmission;
  /// full incident beam power in reflection).
  double normalization_power() const { return norm_power_; }
  /// Scattered power fraction of the incident beam collected by this cone,
  /// for a unit-normalization dipole P (divides by the full beam power).
  double collected_scattered_power(const CVec3 &dipole) const;

 private:
  double k_ = 0.0;
  Channel channel_ = Channel::Transmission;
  double ref_power_ = 0.0;   // ∫ |reference|² over the cone
  double norm_power_ = 0.0;  // signal denominator
  double beam_power_ = 0.0;  // full illumination power
  std::vector<double> nx_, ny_, nz_, w_;
  std::vector<Complex> rx_, ry_, rz_;  // reference amplitude per node
};

/// One-shot detector signal: builds the context, evaluates the induced
/// dipole from the exact focal field at the particle position.
DetectorSignal detector_signal(const BeamParams &beam, const HostMedium &host,
                               const PolarizabilityTensor &alpha, const Vec3 &orientation,
                               const Vec3 &particle_position_nm,
                               const DetectionGeometry &detection,
                               const FocalQuadrature &quad = {});

/// Raster grid of particle offsets (z fixed).
struct ScanGridSpec {
  int nx = 64;
  int ny = 64;
  double pitch_nm = 31.25;
  double z_nm = 0.0;

  double x_of(int ix) const { return (ix - (nx - 1) * 0.5) * pitch_nm; }
  double y_of(int iy) const { return (iy - (ny - 1) * 0.5) * pitch_nm; }
};

/// Normalized raster image plus per-pixel signal decomposition maps.
struct ScanImage {
  Channel channel = Channel::Transmission;
  ScanGridSpec grid;
  double background = 1.0;
  std::vector<double> pixels;  // row-major, iy*nx + ix
  std::vector<double> ref_map, sca_map, interference_map, phase_map;

  double at(int ix, int iy) const { return pixels[std::size_t(iy) * grid.nx + ix]; }
};

ScanImage raster_scan(const BeamParams &beam, const HostMedium &host,
                      const PolarizabilityTensor &alpha, const Vec3 &orientation,
                      const DetectionGeometry &detection, const ScanGridSpec &grid,
                      const FocalQuadrature &quad = {}, int threads = 1);

/// Transmission: 1 - min(pixels). Reflection: max(pixels) - background, in
/// incident-beam units. Throws NumericalError on an unnormalized background.
double image_contrast(const ScanImage &image);

/// FWHM of the particle response along an axis through the extremum pixel
/// (dip depth in transmission, peak above background in reflection).
double scan_fwhm(const ScanImage &image, Axis axis);

/// Quadrature-sum correction of an observed FWHM for the particle extent:
/// width_corrected = √(width² + extent²).
struct FiniteSizeCorrection {
  double corrected_fwhm_nm = 0.0;
  double delta_nm = 0.0;
};
FiniteSizeCorrection finite_size_correction(double fwhm_point_dipole_nm,
                                            double particle_extent_nm);

/// Photon→plasmon conversion bound for the particle at focus. The lower
/// bound is the transmission dip; p_sca/p_abs are scattered/absorbed power
/// fractions of the incident focal power; the collected forward-scattered
/// fraction closes the energy audit
///   dip = p_abs + (p_sca - p_sca_collected)   (exact when β covers the beam).
struct ConversionReport {
  double lower_bound = 0.0;
  double p_sca = 0.0;
  double p_abs = 0.0;
  double p_ext = 0.0;
  double p_sca_collected = 0.0;
};
ConversionReport conversion_efficiency(const BeamParams &beam, const HostMedium &host,
                                       const PolarizabilityTensor &alpha,
                                       const Vec3 &orientation,
                                       const DetectionGeometry &transmission,
                                       const FocalQuadrature &quad = {});

/// Weighted spectral component of a broadband source.
struct SpectralWeight {
  double wavelength_nm = 0.0;
  double weight = 0.0;
};

/// Weight-averaged monochromatic scans of one particle under a broadband
/// source (weights normalized internally).
ScanImage broadband_scan(const BeamParams &beam, const HostMedium &host,
                         const SpheroidParticle &particle, const PermittivityTable &table,
                         const std::vector<SpectralWeight> &spectrum,
                         const DetectionGeometry &detection, const ScanGridSpec &grid,
                         const FocalQuadrature &quad = {}, int threads = 1);

}  // namespace plasmoscan
