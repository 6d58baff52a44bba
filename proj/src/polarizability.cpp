#include "plasmoscan/polarizability.hpp"

#include <cmath>
#include <stdexcept>

#include "plasmoscan/errors.hpp"

namespace plasmoscan {

void HostMedium::validate() const {
  if (!(refractive_index >= 1.0))
    throw ConfigError("host: refractive_index must be >= 1 (lossless real index)");
}

CVec3 PolarizabilityTensor::apply(const Vec3 &orientation, const CVec3 &field) const {
  // α = αS·I + (αL - αS)·û ûᵀ for a prolate spheroid with long axis û.
  const Vec3 u = orientation.normalized();
  const Complex along = field.dot(u) * (alpha_long - alpha_short);
  return CVec3{field.x * alpha_short + along * u.x,
               field.y * alpha_short + along * u.y,
               field.z * alpha_short + along * u.z};
}

PolarizabilityTensor quasistatic_polarizability(const SpheroidParticle &particle,
                                                const HostMedium &host,
                                                const PermittivityTable &table,
                                                double wavelength_nm) {
  particle.validate();
  host.validate();
  const Complex eps = table.at(wavelength_nm);
  const double eps_h = host.eps();
  const auto [l_long, l_short] =
      depolarization_factors(particle.semi_axis_long_nm, particle.semi_axis_short_nm);
  const double volume = particle.volume_nm3();
  const Complex de = eps - eps_h;

  PolarizabilityTensor alpha;
  alpha.wavelength_nm = wavelength_nm;
  alpha.k = host_wavenumber(wavelength_nm, host.refractive_index);
  alpha.eps_rel = eps / eps_h;
  alpha.alpha_long = volume * de / (eps_h + l_long * de);
  alpha.alpha_short = volume * de / (eps_h + l_short * de);
  return alpha;
}

PolarizabilityTensor corrected_polarizability(const PolarizabilityTensor &alpha0,
                                              double k,
                                              const SpheroidParticle &particle) {
  if (!(k > 0.0)) throw std::domain_error("corrected_polarizability: k must be > 0");
  const Complex i_unit{0.0, 1.0};
  const double k2 = k * k;
  const double k3 = k2 * k;
  const double r_vol = std::cbrt(particle.semi_axis_long_nm * particle.semi_axis_short_nm *
                                 particle.semi_axis_short_nm);
  // Dynamic depolarization with the exact sphere coefficients: the size
  // expansion of the inverse Mie dipole polarizability is
  //   1/α = 1/α0 - (k²/(4πR))(D2 + D4 x²) - i k³/(6π),  x = kR,
  //   D2 = (3/5)(m²-2)/(m²-1),  D4 = (3/350)(m⁴-24m²+16)/(m²-1).
  // (The textbook D2 = 1 overshoots the resonance shift of metals badly.)
  const Complex m2 = alpha0.eps_rel;
  const double x2 = k2 * r_vol * r_vol;
  const Complex d2 = (3.0 / 5.0) * (m2 - 2.0) / (m2 - 1.0);
  const Complex d4 = (3.0 / 350.0) * ((m2 * m2 - 24.0 * m2 + 16.0) / (m2 - 1.0));
  const Complex dyn_coeff = d2 + d4 * x2;
  auto correct = [&](Complex a0) {
    const Complex denom = 1.0 - dyn_coeff * k2 * a0 / (4.0 * kPi * r_vol) -
                          i_unit * k3 * a0 / (6.0 * kPi);
    return a0 / denom;
  };
  PolarizabilityTensor alpha = alpha0;
  alpha.k = k;
  alpha.alpha_long = correct(alpha0.alpha_long);
  alpha.alpha_short = correct(alpha0.alpha_short);
  return alpha;
}

PolarizabilityTensor particle_polarizability(const SpheroidParticle &particle,
                                             const HostMedium &host,
                                             const PermittivityTable &table,
                                             double wavelength_nm) {
  PolarizabilityTensor alpha0 =
      quasistatic_polarizability(particle, host, table, wavelength_nm);
  return corrected_polarizability(alpha0, alpha0.k, particle);
}

CrossSections cross_sections(const PolarizabilityTensor &alpha, double k,
                             const Vec3 &orientation, const Vec3 &polarization) {
  const Vec3 pol = polarization.normalized();
  const Vec3 u = orientation.normalized();
  const double c = pol.dot(u);
  // Projection û·α·û of the diagonal tensor on the polarization axis.
  const Complex alpha_proj = alpha.alpha_long * c * c + alpha.alpha_short * (1.0 - c * c);

  CrossSections cs;
  cs.sigma_ext_nm2 = k * alpha_proj.imag();
  cs.sigma_sca_nm2 = std::pow(k, 4) * std::norm(alpha_proj) / (6.0 * kPi);
  cs.sigma_abs_nm2 = cs.sigma_ext_nm2 - cs.sigma_sca_nm2;
  if (cs.sigma_abs_nm2 < -1e-9 * std::abs(cs.sigma_ext_nm2))
    throw NumericalError("cross_sections: negative absorption beyond tolerance; "
                         "radiative correction is inconsistent");
  return cs;
}

std::vector<SpectrumPoint> plasmon_spectrum(const SpheroidParticle &particle,
                                            const HostMedium &host,
                                            const PermittivityTable &table,
                                            double lambda_min_nm, double lambda_max_nm,
                                            int points, const Vec3 &polarization) {
  if (points < 2) throw ConfigError("plasmon_spectrum: need at least 2 sample points");
  if (!(lambda_min_nm < lambda_max_nm))
    throw ConfigError("plasmon_spectrum: need lambda_min < lambda_max");
  std::vector<SpectrumPoint> spectrum;
  spectrum.reserve(points);
  for (int i = 0; i < points; ++i) {
    SpectrumPoint p;
    p.wavelength_nm =
        lambda_min_nm + (lambda_max_nm - lambda_min_nm) * i / double(points - 1);
    const PolarizabilityTensor alpha =
        particle_polarizability(particle, host, table, p.wavelength_nm);
    p.cs = cross_sections(alpha, alpha.k, particle.orientation, polarization);
    spectrum.push_back(p);
  }
  return spectrum;
}

}  // namespace plasmoscan
