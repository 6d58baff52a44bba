#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "plasmoscan/errors.hpp"
#include "plasmoscan/oracles.hpp"
#include "plasmoscan/polarizability.hpp"

using namespace plasmoscan;

namespace {

const HostMedium kOil{1.49};
const Vec3 kXAxis{1.0, 0.0, 0.0};

SpheroidParticle paper_particle() { return SpheroidParticle{}; }  // 94x46 nm defaults

SpheroidParticle sphere(double radius_nm) {
  SpheroidParticle p;
  p.semi_axis_long_nm = p.semi_axis_short_nm = radius_nm;
  return p;
}

}  // namespace

TEST_CASE("quasistatic polarizability: index-matched particle vanishes") {
  // Synthetic table with eps == eps_h of the oil everywhere.
  const double eps_h = kOil.eps();
  PermittivityTable matched({{380.0, eps_h, 0.0}, {900.0, eps_h, 0.0}}, "matched");
  const PolarizabilityTensor a0 =
      quasistatic_polarizability(paper_particle(), kOil, matched, 589.0);
  CHECK(std::abs(a0.alpha_long) == doctest::Approx(0.0));
  CHECK(std::abs(a0.alpha_short) == doctest::Approx(0.0));
}

TEST_CASE("quasistatic polarizability: sphere reduces to Clausius-Mossotti") {
  const PermittivityTable &ag = silver_johnson_christy_1972();
  const double lambda = 550.0;
  const double radius = 30.0;
  const PolarizabilityTensor a0 = quasistatic_polarizability(sphere(radius), kOil, ag, lambda);
  const Complex eps = ag.at(lambda);
  const double eps_h = kOil.eps();
  const Complex cm =
      4.0 * kPi * radius * radius * radius * (eps - eps_h) / (eps + 2.0 * eps_h);
  CHECK(std::abs(a0.alpha_long - cm) < 1e-9 * std::abs(cm));
  CHECK(std::abs(a0.alpha_short - cm) < 1e-9 * std::abs(cm));
}

TEST_CASE("quasistatic polarizability: resonance near the Frohlich condition") {
  // |α0_long| should peak where Re[ε_h + L(ε-ε_h)] crosses zero.
  const PermittivityTable &ag = silver_johnson_christy_1972();
  const SpheroidParticle p = paper_particle();
  const auto [l_long, l_short] = depolarization_factors(47.0, 23.0);
  const double eps_h = kOil.eps();

  double best_lambda = 0.0, best_mag = 0.0;
  double root_lambda = 0.0, best_res = 1e300;
  for (double lambda = 420.0; lambda <= 700.0; lambda += 0.5) {
    const PolarizabilityTensor a0 = quasistatic_polarizability(p, kOil, ag, lambda);
    if (std::abs(a0.alpha_long) > best_mag) {
      best_mag = std::abs(a0.alpha_long);
      best_lambda = lambda;
    }
    const double res = std::abs((eps_h + l_long * (ag.at(lambda) - eps_h)).real());
    if (res < best_res) {
      best_res = res;
      root_lambda = lambda;
    }
  }
  CHECK(std::abs(best_lambda - root_lambda) < 10.0);
}

TEST_CASE("corrected polarizability: k->0 recovers the quasistatic value") {
  const PermittivityTable &ag = silver_johnson_christy_1972();
  const SpheroidParticle p = paper_particle();
  const PolarizabilityTensor a0 = quasistatic_polarizability(p, kOil, ag, 589.0);

  double prev_err = 1.0;
  for (double k : {1e-4, 1e-5, 1e-6}) {
    const PolarizabilityTensor a = corrected_polarizability(a0, k, p);
    const double err = std::abs(a.alpha_long - a0.alpha_long) / std::abs(a0.alpha_long);
    CHECK(err < prev_err);
    prev_err = err;
  }
  const PolarizabilityTensor tiny = corrected_polarizability(a0, 1e-9, p);
  CHECK(std::abs(tiny.alpha_long - a0.alpha_long) / std::abs(a0.alpha_long) < 1e-12);
  CHECK_THROWS_AS(corrected_polarizability(a0, 0.0, p), std::domain_error);
}

TEST_CASE("corrected polarizability: lossless particle has zero absorption") {
  PermittivityTable lossless({{380.0, -10.0, 0.0}, {900.0, -18.0, 0.0}}, "lossless");
  const SpheroidParticle p = paper_particle();
  const PolarizabilityTensor alpha = particle_polarizability(p, kOil, lossless, 600.0);
  const CrossSections cs = cross_sections(alpha, alpha.k, p.orientation, kXAxis);
  CHECK(std::abs(cs.sigma_abs_nm2) <= 1e-9 * cs.sigma_ext_nm2);
}

TEST_CASE("cross sections: zero polarizability gives zero") {
  PolarizabilityTensor alpha;
  alpha.k = 0.016;
  const CrossSections cs = cross_sections(alpha, alpha.k, kXAxis, kXAxis);
  CHECK(cs.sigma_ext_nm2 == 0.0);
  CHECK(cs.sigma_sca_nm2 == 0.0);
  CHECK(cs.sigma_abs_nm2 == 0.0);
}

TEST_CASE("cross sections: identity sigma_ext = sigma_sca + sigma_abs over the sweep") {
  const PermittivityTable &ag = silver_johnson_christy_1972();
  const SpheroidParticle p = paper_particle();
  const Vec3 axes[2] = {kXAxis, Vec3{0.0, 1.0, 0.0}};
  for (int i = 0; i < 200; ++i) {
    const double lambda = 420.0 + (700.0 - 420.0) * i / 199.0;
    const PolarizabilityTensor alpha = particle_polarizability(p, kOil, ag, lambda);
    for (const Vec3 &pol : axes) {
      const CrossSections cs = cross_sections(alpha, alpha.k, p.orientation, pol);
      CHECK(std::abs(cs.sigma_ext_nm2 - cs.sigma_sca_nm2 - cs.sigma_abs_nm2) <=
            1e-9 * std::abs(cs.sigma_ext_nm2));
      CHECK(cs.sigma_abs_nm2 >= -1e-9 * cs.sigma_ext_nm2);
      CHECK(cs.sigma_ext_nm2 > 0.0);
    }
  }
}

TEST_CASE("plasmon spectrum: paper particle peaks at the source wavelength") {
  const PermittivityTable &ag = silver_johnson_christy_1972();
  const auto spectrum = plasmon_spectrum(paper_particle(), kOil, ag, 430.0, 780.0, 351, kXAxis);

  double peak_lambda = 0.0, peak_sca = 0.0, at_589 = 0.0;
  for (const SpectrumPoint &pt : spectrum) {
    if (pt.cs.sigma_sca_nm2 > peak_sca) {
      peak_sca = pt.cs.sigma_sca_nm2;
      peak_lambda = pt.wavelength_nm;
    }
    if (std::abs(pt.wavelength_nm - 589.0) < 0.51) at_589 = pt.cs.sigma_sca_nm2;
  }
  CHECK(peak_lambda > 569.0);
  CHECK(peak_lambda < 609.0);
  CHECK(at_589 / peak_sca >= 0.95);
}

TEST_CASE("plasmon spectrum: long-axis peak is red of the short-axis peak") {
  const PermittivityTable &ag = silver_johnson_christy_1972();
  const SpheroidParticle p = paper_particle();
  const auto sweep_long = plasmon_spectrum(p, kOil, ag, 400.0, 750.0, 200, kXAxis);
  const auto sweep_short = plasmon_spectrum(p, kOil, ag, 400.0, 750.0, 200, {0.0, 1.0, 0.0});
  auto peak = [](const std::vector<SpectrumPoint> &s) {
    return std::max_element(s.begin(), s.end(), [](const auto &a, const auto &b) {
             return a.cs.sigma_sca_nm2 < b.cs.sigma_sca_nm2;
           })->wavelength_nm;
  };
  CHECK(peak(sweep_long) > peak(sweep_short));
}

TEST_CASE("plasmon spectrum: peak red-shifts with aspect ratio") {
  const PermittivityTable &ag = silver_johnson_christy_1972();
  double prev_peak = 0.0;
  for (double a : {30.0, 38.0, 47.0}) {
    SpheroidParticle p;
    p.semi_axis_long_nm = a;
    p.semi_axis_short_nm = 23.0;
    const auto sweep = plasmon_spectrum(p, kOil, ag, 400.0, 780.0, 381, kXAxis);
    const double peak =
        std::max_element(sweep.begin(), sweep.end(), [](const auto &x, const auto &y) {
          return x.cs.sigma_sca_nm2 < y.cs.sigma_sca_nm2;
        })->wavelength_nm;
    CHECK(peak > prev_peak);
    prev_peak = peak;
  }
}

TEST_CASE("plasmon spectrum: 60 nm sphere peaks below 550 nm, near the Mie dipole peak") {
  const PermittivityTable &ag = silver_johnson_christy_1972();
  const auto sweep = plasmon_spectrum(sphere(30.0), kOil, ag, 400.0, 700.0, 301, kXAxis);
  double peak_lambda = 0.0, peak_sca = 0.0;
  for (const SpectrumPoint &pt : sweep)
    if (pt.cs.sigma_sca_nm2 > peak_sca) {
      peak_sca = pt.cs.sigma_sca_nm2;
      peak_lambda = pt.wavelength_nm;
    }
  CHECK(peak_lambda < 550.0);

  double mie_peak_lambda = 0.0, mie_peak = 0.0;
  for (double lambda = 400.0; lambda <= 700.0; lambda += 1.0) {
    const auto mie = oracles::mie_sphere_cross_sections(30.0, ag.at(lambda), kOil, lambda);
    if (mie.dipole_term.sigma_sca_nm2 > mie_peak) {
      mie_peak = mie.dipole_term.sigma_sca_nm2;
      mie_peak_lambda = lambda;
    }
  }
  CHECK(mie_peak_lambda < 550.0);
  CHECK(std::abs(peak_lambda - mie_peak_lambda) < 25.0);
}

TEST_CASE("Mie pinning: corrected dipole within 15% of the Mie dipole term, 500-650 nm") {
  const PermittivityTable &ag = silver_johnson_christy_1972();
  const SpheroidParticle s = sphere(30.0);
  for (double lambda = 500.0; lambda <= 650.0; lambda += 5.0) {
    const PolarizabilityTensor alpha = particle_polarizability(s, kOil, ag, lambda);
    const CrossSections cs = cross_sections(alpha, alpha.k, s.orientation, kXAxis);
    const auto mie = oracles::mie_sphere_cross_sections(30.0, ag.at(lambda), kOil, lambda);
    CAPTURE(lambda);
    CHECK(std::abs(cs.sigma_ext_nm2 - mie.dipole_term.sigma_ext_nm2) <=
          0.15 * mie.dipole_term.sigma_ext_nm2);
  }
}
