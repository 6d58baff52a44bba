#include "plasmoscan/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "plasmoscan/errors.hpp"
#include "plasmoscan/parallel.hpp"
#include "plasmoscan/quadrature.hpp"

namespace plasmoscan {

void DetectionGeometry::validate(const HostMedium &host) const {
  if (!(na_collect > 0.0) || na_collect > host.refractive_index + 1e-12)
    throw ConfigError("detection: require 0 < na_collect <= host refractive index");
  if (std::abs(r_ref) >= 0.5)
    throw ConfigError("detection: |r_ref| must be << 1 (residual reflection amplitude)");
}

CVec3 induced_dipole(const FocalField &field, const PolarizabilityTensor &alpha,
                     const Vec3 &orientation, const Vec3 &position_nm) {
  const CVec3 e = field.sample(position_nm.x, position_nm.y);
  return alpha.apply(orientation, e);
}

namespace {

// Refracted unit polarization on the reference sphere for an x-polarized
// input: a·n̂ = 0 and |a| = 1.
CVec3 refracted_polarization_x(double st, double ct, double cp, double sp) {
  return CVec3{Complex(ct * cp * cp + sp * sp, 0.0),
               Complex((ct - 1.0) * sp * cp, 0.0),
               Complex(-st * cp, 0.0)};
}

CVec3 rotate_z(const CVec3 &v, double cos_chi, double sin_chi) {
  return CVec3{cos_chi * v.x - sin_chi * v.y, sin_chi * v.x + cos_chi * v.y, v.z};
}

}  // namespace

CVec3 beam_farfield_amplitude(const BeamParams &beam, const HostMedium &host, double theta,
                              double phi) {
  const double alpha = beam.alpha_max(host);
  if (theta < 0.0 || theta > alpha) return CVec3{};
  const double chi = beam.pol_angle();
  const double phi_local = phi - chi;
  const double st = std::sin(theta), ct = std::cos(theta);
  const CVec3 a = rotate_z(
      refracted_polarization_x(st, ct, std::cos(phi_local), std::sin(phi_local)),
      std::cos(chi), std::sin(chi));
  const double apod = pupil_apodization(beam, host, theta);
  const double k = host_wavenumber(beam.wavelength_nm, host.refractive_index);
  // Stationary-phase factor linking the Debye density to the far field.
  const Complex pref = Complex(0.0, -2.0 * kPi / k) * (apod * std::sqrt(beam.power_norm));
  return a * pref;
}

double beam_cone_power(const BeamParams &beam, const HostMedium &host, double beta,
                       const FocalQuadrature &quad) {
  const double alpha = beam.alpha_max(host);
  const double upper = std::min(beta, alpha);
  if (!(upper > 0.0)) return 0.0;
  const GaussLegendreRule rule = gauss_legendre_on(quad.theta_order, 0.0, upper);
  const double k = host_wavenumber(beam.wavelength_nm, host.refractive_index);
  // |B|² integrated analytically over φ: ∫|a|² dφ = 2π since |a| = 1.
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double apod = pupil_apodization(beam, host, rule.nodes[i]);
    sum += rule.weights[i] * std::sin(rule.nodes[i]) * apod * apod;
  }
  const double pref = 2.0 * kPi / k;
  return sum * 2.0 * kPi * pref * pref * beam.power_norm;
}

DetectorContext::DetectorContext(const BeamParams &beam, const HostMedium &host,
                                 const DetectionGeometry &detection,
                                 const FocalQuadrature &quad) {
  beam.validate(host);
  detection.validate(host);
  channel_ = detection.channel;
  k_ = host_wavenumber(beam.wavelength_nm, host.refractive_index);

  const double alpha = beam.alpha_max(host);
  const double beta = detection.beta_max(host);
  beam_power_ = beam_cone_power(beam, host, alpha, quad);

  // θ segments split at the hard aperture edge so the beam cutoff never sits
  // inside a Gauss-Legendre panel.
  std::vector<std::pair<double, double>> segments;
  if (beta <= alpha) {
    segments.push_back({0.0, beta});
  } else {
    segments.push_back({0.0, alpha});
    segments.push_back({alpha, beta});
  }

  const int nphi = quad.phi_order;
  const double wphi = 2.0 * kPi / nphi;
  const bool backward = channel_ == Channel::Reflection;

  for (const auto &[lo, hi] : segments) {
    const GaussLegendreRule rule = gauss_legendre_on(quad.theta_order, lo, hi);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double theta = rule.nodes[i];
      const double st = std::sin(theta), ct = std::cos(theta);
      const double w_theta = rule.weights[i] * st * wphi;
      for (int j = 0; j < nphi; ++j) {
        const double phi = wphi * j;
        const double cp = std::cos(phi), sp = std::sin(phi);
        CVec3 ref = beam_farfield_amplitude(beam, host, theta, phi);
        double nzdir = ct;
        if (backward) {
          // Mirror of the incident beam: z-component flips, direction points
          // into the lower hemisphere.
          ref = CVec3{ref.x, ref.y, -ref.z} * detection.r_ref;
          nzdir = -ct;
        }
        nx_.push_back(st * cp);
        ny_.push_back(st * sp);
        nz_.push_back(nzdir);
        w_.push_back(w_theta);
        rx_.push_back(ref.x);
        ry_.push_back(ref.y);
        rz_.push_back(ref.z);
        ref_power_ += w_theta * ref.squared_norm();
      }
    }
  }
  norm_power_ = channel_ == Channel::Transmission ? ref_power_ : beam_power_;
  if (!(norm_power_ > 0.0))
    throw NumericalError("detector context: normalization power vanished");
}

DetectorSignal DetectorContext::evaluate(const CVec3 &dipole, const Vec3 &r_p) const {
  const double c1 = k_ * k_ / (4.0 * kPi);
  double sca = 0.0, interf = 0.0;
  const std::size_t n = w_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double nx = nx_[i], ny = ny_[i], nz = nz_[i];
    const Complex pn = dipole.x * nx + dipole.y * ny + dipole.z * nz;
    const Complex dx = (dipole.x - pn * nx) * c1;
    const Complex dy = (dipole.y - pn * ny) * c1;
    const Complex dz = (dipole.z - pn * nz) * c1;
    const double ph = -k_ * (nx * r_p.x + ny * r_p.y + nz * r_p.z);
    const Complex e = std::polar(1.0, ph);
    const Complex ex = dx * e, ey = dy * e, ez = dz * e;
    sca += w_[i] * (std::norm(ex) + std::norm(ey) + std::norm(ez));
    interf += w_[i] * 2.0 *
              (std::conj(rx_[i]) * ex + std::conj(ry_[i]) * ey + std::conj(rz_[i]) * ez).real();
  }

  DetectorSignal out;
  out.decomposition.ref_term = ref_power_ / norm_power_;
  out.decomposition.sca_term = sca / norm_power_;
  out.decomposition.interference_term = interf / norm_power_;
  out.signal = out.decomposition.total();
  const double denom = 2.0 * std::sqrt(out.decomposition.ref_term * out.decomposition.sca_term);
  if (denom > 0.0) {
    const double s = std::clamp(-out.decomposition.interference_term / denom, -1.0, 1.0);
    out.decomposition.phase = std::asin(s);
  }
  return out;
}

double DetectorContext::collected_scattered_power(const CVec3 &dipole) const {
  const double c1 = k_ * k_ / (4.0 * kPi);
  double sca = 0.0;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    const Complex pn = dipole.x * nx_[i] + dipole.y * ny_[i] + dipole.z * nz_[i];
    const Complex dx = dipole.x - pn * nx_[i];
    const Complex dy = dipole.y - pn * ny_[i];
    const Complex dz = dipole.z - pn * nz_[i];
    sca += w_[i] * (std::norm(dx) + std::norm(dy) + std::norm(dz));
  }
  return sca * c1 * c1 / beam_power_;
}

DetectorSignal detector_signal(const BeamParams &beam, const HostMedium &host,
                               const PolarizabilityTensor &alpha, const Vec3 &orientation,
                               const Vec3 &particle_position_nm,
                               const DetectionGeometry &detection,
                               const FocalQuadrature &quad) {
  const DetectorContext ctx(beam, host, detection, quad);
  const CVec3 e = focal_field_point(beam, host, particle_position_nm, quad);
  const CVec3 p = alpha.apply(orientation, e);
  return ctx.evaluate(p, particle_position_nm);
}

ScanImage raster_scan(const BeamParams &beam, const HostMedium &host,
                      const PolarizabilityTensor &alpha, const Vec3 &orientation,
                      const DetectionGeometry &detection, const ScanGridSpec &grid,
                      const FocalQuadrature &quad, int threads) {
  if (grid.nx < 1 || grid.ny < 1) throw ConfigError("scan grid: nx, ny must be >= 1");
  if (!(grid.pitch_nm > 0.0)) throw ConfigError("scan grid: pitch must be > 0");
  const DetectorContext ctx(beam, host, detection, quad);

  ScanImage image;
  image.channel = detection.channel;
  image.grid = grid;
  image.background = ctx.background();
  const std::size_t npix = std::size_t(grid.nx) * grid.ny;
  image.pixels.resize(npix);
  image.ref_map.resize(npix);
  image.sca_map.resize(npix);
  image.interference_map.resize(npix);
  image.phase_map.resize(npix);

  parallel_for(npix, threads, [&](std::size_t idx) {
    const int ix = int(idx % grid.nx);
    const int iy = int(idx / grid.nx);
    const Vec3 r_p{grid.x_of(ix), grid.y_of(iy), grid.z_nm};
    const CVec3 e = focal_field_point(beam, host, r_p, quad);
    const CVec3 p = alpha.apply(orientation, e);
    const DetectorSignal ds = ctx.evaluate(p, r_p);
    image.pixels[idx] = ds.signal;
    image.ref_map[idx] = ds.decomposition.ref_term;
    image.sca_map[idx] = ds.decomposition.sca_term;
    image.interference_map[idx] = ds.decomposition.interference_term;
    image.phase_map[idx] = ds.decomposition.phase;
  });
  return image;
}

namespace {

void check_normalized_background(const ScanImage &image) {
  const int nx = image.grid.nx, ny = image.grid.ny;
  const double corners[4] = {image.at(0, 0), image.at(nx - 1, 0), image.at(0, ny - 1),
                             image.at(nx - 1, ny - 1)};
  double worst = 0.0;
  for (double c : corners) worst = std::max(worst, std::abs(c - image.background));
  if (worst > 0.02)
    throw NumericalError("image_contrast: image background is not at the normalization level; "
                         "scan span too small or image unnormalized");
}

}  // namespace

double image_contrast(const ScanImage &image) {
  if (image.pixels.empty()) throw ConfigError("image_contrast: empty image");
  check_normalized_background(image);
  if (image.channel == Channel::Transmission) {
    return 1.0 - *std::min_element(image.pixels.begin(), image.pixels.end());
  }
  return *std::max_element(image.pixels.begin(), image.pixels.end()) - image.background;
}

double scan_fwhm(const ScanImage &image, Axis axis) {
  // Response profile through the extremum pixel: dip depth in transmission,
  // height above background in reflection.
  std::vector<double> depth(image.pixels.size());
  for (std::size_t i = 0; i < image.pixels.size(); ++i)
    depth[i] = image.channel == Channel::Transmission ? image.background - image.pixels[i]
                                                      : image.pixels[i] - image.background;
  const std::size_t ipk = std::max_element(depth.begin(), depth.end()) - depth.begin();
  const int px = int(ipk % image.grid.nx);
  const int py = int(ipk / image.grid.nx);

  std::vector<double> pos, val;
  if (axis == Axis::X) {
    for (int ix = 0; ix < image.grid.nx; ++ix) {
      pos.push_back(image.grid.x_of(ix));
      val.push_back(depth[std::size_t(py) * image.grid.nx + ix]);
    }
  } else {
    for (int iy = 0; iy < image.grid.ny; ++iy) {
      pos.push_back(image.grid.y_of(iy));
      val.push_back(depth[std::size_t(iy) * image.grid.nx + px]);
    }
  }
  return profile_fwhm(pos, val, 0.0);
}

FiniteSizeCorrection finite_size_correction(double fwhm_point_dipole_nm,
                                            double particle_extent_nm) {
  if (fwhm_point_dipole_nm < 0.0 || particle_extent_nm < 0.0)
    throw std::domain_error("finite_size_correction: widths must be >= 0");
  FiniteSizeCorrection out;
  out.corrected_fwhm_nm = std::hypot(fwhm_point_dipole_nm, particle_extent_nm);
  out.delta_nm = out.corrected_fwhm_nm - fwhm_point_dipole_nm;
  return out;
}

ConversionReport conversion_efficiency(const BeamParams &beam, const HostMedium &host,
                                       const PolarizabilityTensor &alpha,
                                       const Vec3 &orientation,
                                       const DetectionGeometry &transmission,
                                       const FocalQuadrature &quad) {
  if (transmission.channel != Channel::Transmission)
    throw ConfigError("conversion_efficiency: needs the transmission channel geometry");
  const Vec3 center{0.0, 0.0, 0.0};
  const CVec3 e = focal_field_point(beam, host, center, quad);
  const CVec3 p = alpha.apply(orientation, e);

  const DetectorContext ctx(beam, host, transmission, quad);
  const DetectorSignal ds = ctx.evaluate(p, center);

  // Interference integrated over the whole illumination aperture is the
  // extinction (optical theorem); an auxiliary full-cone context recovers it
  // numerically from the same machinery, normalized to the full beam power.
  DetectionGeometry full = transmission;
  full.na_collect = beam.na_focus;
  const DetectorContext full_ctx(beam, host, full, quad);
  const DetectorSignal full_ds = full_ctx.evaluate(p, center);
  const double p_ext = -full_ds.decomposition.interference_term;

  // Total scattered power over 4π: dipole pattern ∫|n̂×(P×n̂)|²dΩ = 8π|P|²/3.
  const double k = ctx.k();
  const double c1 = k * k / (4.0 * kPi);
  const double p_sca_total =
      c1 * c1 * (8.0 * kPi / 3.0) * p.squared_norm() / full_ctx.normalization_power();

  ConversionReport report;
  report.lower_bound = 1.0 - ds.signal;
  report.p_ext = p_ext;
  report.p_sca = p_sca_total;
  report.p_abs = p_ext - p_sca_total;
  report.p_sca_collected = ctx.collected_scattered_power(p);
  return report;
}

ScanImage broadband_scan(const BeamParams &beam, const HostMedium &host,
                         const SpheroidParticle &particle, const PermittivityTable &table,
                         const std::vector<SpectralWeight> &spectrum,
                         const DetectionGeometry &detection, const ScanGridSpec &grid,
                         const FocalQuadrature &quad, int threads) {
  if (spectrum.empty()) throw ConfigError("broadband_scan: source spectrum is empty");
  double total_weight = 0.0;
  for (const SpectralWeight &s : spectrum) {
    if (!(s.weight >= 0.0)) throw ConfigError("broadband_scan: weights must be >= 0");
    total_weight += s.weight;
  }
  if (!(total_weight > 0.0)) throw ConfigError("broadband_scan: spectrum has zero weight");

  ScanImage avg;
  bool first = true;
  for (const SpectralWeight &s : spectrum) {
    if (s.weight == 0.0) continue;
    BeamParams b = beam;
    b.wavelength_nm = s.wavelength_nm;
    const PolarizabilityTensor alpha =
        particle_polarizability(particle, host, table, s.wavelength_nm);
    const ScanImage mono =
        raster_scan(b, host, alpha, particle.orientation, detection, grid, quad, threads);
    const double w = s.weight / total_weight;
    if (first) {
      avg = mono;
      for (auto *m : {&avg.pixels, &avg.ref_map, &avg.sca_map, &avg.interference_map,
                      &avg.phase_map})
        for (double &v : *m) v *= w;
      avg.background *= w;
      first = false;
    } else {
      for (std::size_t i = 0; i < avg.pixels.size(); ++i) {
        avg.pixels[i] += w * mono.pixels[i];
        avg.ref_map[i] += w * mono.ref_map[i];
        avg.sca_map[i] += w * mono.sca_map[i];
        avg.interference_map[i] += w * mono.interference_map[i];
        avg.phase_map[i] += w * mono.phase_map[i];
      }
      avg.background += w * mono.background;
    }
  }
  return avg;
}

}  // namespace plasmoscan
