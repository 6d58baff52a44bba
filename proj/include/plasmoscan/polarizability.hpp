#pragma once

#include <array>
#include <vector>

#include "plasmoscan/core.hpp"
#include "plasmoscan/permittivity.hpp"
#include "plasmoscan/spheroid.hpp"

namespace plasmoscan {

/// Lossless embedding medium (the index-matching oil).
struct HostMedium {
  double refractive_index = 1.49;

  void validate() const;
  double eps() const { return refractive_index * refractive_index; }
};

/// Diagonal polarizability of the spheroid in its principal frame, in the
/// volume convention: σ_ext = k Im α, σ_sca = k⁴|α|²/(6π), with
/// k = 2π n_h / λ. The Clausius-Mossotti sphere is α = 4πR³(ε-ε_h)/(ε+2ε_h).
struct PolarizabilityTensor {
  double wavelength_nm = 0.0;
  double k = 0.0;  // host wavenumber, rad/nm
  Complex alpha_long{0.0, 0.0};   // nm³, along the long axis
  Complex alpha_short{0.0, 0.0};  // nm³, along either short axis
  Complex eps_rel{1.0, 0.0};      // ε/ε_h; feeds the dynamic-depolarization term

  /// 3x3 lab-frame tensor column-major action p = α·E for a particle whose
  /// long axis is `orientation` (unit, in the substrate plane).
  CVec3 apply(const Vec3 &orientation, const CVec3 &field) const;
};

struct CrossSections {
  double sigma_ext_nm2 = 0.0;
  double sigma_sca_nm2 = 0.0;
  double sigma_abs_nm2 = 0.0;
};

/// Quasistatic (uncorrected) per-axis polarizability
/// α0_j = V (ε - ε_h) / (ε_h + L_j (ε - ε_h)).
PolarizabilityTensor quasistatic_polarizability(const SpheroidParticle &particle,
                                                const HostMedium &host,
                                                const PermittivityTable &table,
                                                double wavelength_nm);

/// Long-wavelength corrections on top of the quasistatic tensor:
///   α_j = α0_j / (1 - D(x) k² α0_j / (4π R_V) - i k³ α0_j / (6π)),
/// with R_V = (a b c)^(1/3) the volume-equivalent radius, x = k R_V, and
/// D(x) = D2 + D4 x² carrying the exact sphere coefficients of the Mie
/// dipole expansion (D2 = (3/5)(m²-2)/(m²-1), m² = ε/ε_h). The k³ term
/// enforces the optical theorem; k→0 recovers α0.
PolarizabilityTensor corrected_polarizability(const PolarizabilityTensor &alpha0,
                                              double k,
                                              const SpheroidParticle &particle);

/// Convenience: quasistatic + corrections in one call.
PolarizabilityTensor particle_polarizability(const SpheroidParticle &particle,
                                             const HostMedium &host,
                                             const PermittivityTable &table,
                                             double wavelength_nm);

/// Cross sections for incident polarization along the (lab) unit vector
/// `polarization`, projecting the tensor on that axis.
/// Throws NumericalError if σ_abs < -1e-9 σ_ext (broken correction).
CrossSections cross_sections(const PolarizabilityTensor &alpha, double k,
                             const Vec3 &orientation, const Vec3 &polarization);

struct SpectrumPoint {
  double wavelength_nm = 0.0;
  CrossSections cs;
};

/// Dense sweep of cross sections over [lambda_min, lambda_max] with `points`
/// samples, polarization fixed in the lab frame.
std::vector<SpectrumPoint> plasmon_spectrum(const SpheroidParticle &particle,
                                            const HostMedium &host,
                                            const PermittivityTable &table,
                                            double lambda_min_nm, double lambda_max_nm,
                                            int points, const Vec3 &polarization);

}  // namespace plasmoscan
