#pragma once

#include <string>
#include <utility>
#include <vector>

#include "plasmoscan/beam.hpp"
#include "plasmoscan/core.hpp"
#include "plasmoscan/polarizability.hpp"

// Independent brute-force references used by tests and the hidden `verify`
// subcommand. Deliberately simple and slow; shares no code with the
// implementations it checks.
namespace plasmoscan::oracles {

struct OracleReport {
  std::string quantity;
  double oracle_value = 0.0;
  double candidate_value = 0.0;
  double relative_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

OracleReport make_report(const std::string &quantity, double oracle_value,
                         double candidate_value, double tolerance);
std::string to_json_line(const OracleReport &report);

struct MieResult {
  CrossSections full;         // converged partial-wave series
  CrossSections dipole_term;  // electric-dipole (a1) contribution only
  int terms_used = 0;
};

/// Exact sphere scattering for radius R in a lossless host, series summed to
/// a 1e-10 relative term cutoff. Requires size parameter k·R < 5.
MieResult mie_sphere_cross_sections(double radius_nm, Complex eps_particle,
                                    const HostMedium &host, double wavelength_nm);

/// Scalar Debye focal intensity profile |U(ρ)|², direct Simpson quadrature of
/// ∫ fw(θ)√cosθ sinθ J0(kρ sinθ) dθ at z=0. Valid for NA <= 0.3.
std::vector<std::pair<double, double>> scalar_focus_profile(double na, double wavelength_nm,
                                                            const HostMedium &host, double f0,
                                                            double rho_max_nm, int samples);

/// FWHM of the scalar profile (linear interpolation, like the candidate path).
double scalar_focus_fwhm(double na, double wavelength_nm, const HostMedium &host, double f0);

/// Depolarization factors by adaptive quadrature of the defining elliptic
/// integral, 1e-10 target.
std::pair<double, double> depolarization_integral(double a_nm, double b_nm);

}  // namespace plasmoscan::oracles
