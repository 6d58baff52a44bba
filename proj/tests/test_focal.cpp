#include <doctest.h>

#include <cmath>

#include "plasmoscan/errors.hpp"
#include "plasmoscan/focal_field.hpp"
#include "plasmoscan/oracles.hpp"

using namespace plasmoscan;

namespace {

const HostMedium kOil{1.49};

BeamParams tight_beam() {
  BeamParams b;
  b.na_focus = 1.4;
  b.fill_factor = 0.9;
  return b;
}

}  // namespace

TEST_CASE("pupil apodization: stated values") {
  BeamParams b = tight_beam();
  CHECK(pupil_apodization(b, kOil, 0.0) == doctest::Approx(1.0));

  const double alpha = b.alpha_max(kOil);
  b.fill_factor = 1e9;  // uniform fill limit
  CHECK(pupil_apodization(b, kOil, alpha) ==
        doctest::Approx(std::sqrt(std::cos(alpha))).epsilon(1e-9));

  b.fill_factor = 1.0;
  CHECK(pupil_apodization(b, kOil, alpha) ==
        doctest::Approx(std::exp(-1.0) * std::sqrt(std::cos(alpha))).epsilon(1e-12));

  CHECK_THROWS_AS(pupil_apodization(b, kOil, -0.1), std::domain_error);
  CHECK_THROWS_AS(pupil_apodization(b, kOil, alpha + 0.1), std::domain_error);
}

TEST_CASE("focal field at the focus is purely co-polarized") {
  const BeamParams b = tight_beam();
  const CVec3 e0 = focal_field_point(b, kOil, {0.0, 0.0, 0.0});
  const double mag = std::sqrt(e0.squared_norm());
  CHECK(std::abs(e0.y) <= 1e-6 * mag);
  CHECK(std::abs(e0.z) <= 1e-6 * mag);
  CHECK(std::abs(e0.x) == doctest::Approx(mag).epsilon(1e-9));

  // Same with polarization rotated to y.
  BeamParams by = b;
  by.pol_x = 0.0;
  by.pol_y = 1.0;
  const CVec3 ey = focal_field_point(by, kOil, {0.0, 0.0, 0.0});
  CHECK(std::abs(ey.x) <= 1e-6 * std::sqrt(ey.squared_norm()));
  CHECK(std::abs(ey.y) == doctest::Approx(mag).epsilon(1e-9));
}

TEST_CASE("focal field: linear in amplitude, intensity linear in power_norm") {
  BeamParams b = tight_beam();
  const CVec3 e1 = focal_field_point(b, kOil, {150.0, 80.0, 0.0});
  b.power_norm = 2.0;
  const CVec3 e2 = focal_field_point(b, kOil, {150.0, 80.0, 0.0});
  CHECK(e2.squared_norm() == doctest::Approx(2.0 * e1.squared_norm()).epsilon(1e-12));
  CHECK(std::abs(e2.x - std::sqrt(2.0) * e1.x) <= 1e-12 * std::abs(e1.x));
}

TEST_CASE("focal spot at NA=0.1 matches the scalar oracle within 2%") {
  BeamParams b;
  b.na_focus = 0.1;
  b.fill_factor = 1.0;
  FocalGridSpec grid;
  grid.nx = 401;
  grid.ny = 1;
  grid.pitch_nm = 35.0;
  const FocalField field = focal_intensity_map(b, kOil, grid);
  const double fwhm_vec = spot_fwhm(field, Axis::X);
  const double fwhm_scalar = oracles::scalar_focus_fwhm(0.1, b.wavelength_nm, kOil, 1.0);
  CHECK(std::abs(fwhm_vec - fwhm_scalar) <= 0.02 * fwhm_scalar);
}

TEST_CASE("tight focus is elliptical: wider along the polarization") {
  const BeamParams b = tight_beam();
  FocalGridSpec grid;
  grid.nx = 81;
  grid.ny = 81;
  grid.pitch_nm = 20.0;
  const FocalField field = focal_intensity_map(b, kOil, grid, {}, 2);
  const double fx = spot_fwhm(field, Axis::X);
  const double fy = spot_fwhm(field, Axis::Y);
  CHECK(fx > fy);
  CHECK(fx / fy > 1.05);
}

TEST_CASE("focal intensity map: symmetric under both axis flips") {
  const BeamParams b = tight_beam();
  FocalGridSpec grid;
  grid.nx = 41;
  grid.ny = 41;
  grid.pitch_nm = 30.0;
  const FocalField field = focal_intensity_map(b, kOil, grid, {}, 2);
  const double peak = field.intensity[field.intensity.size() / 2];
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double v = field.intensity[std::size_t(iy) * grid.nx + ix];
      const double vx = field.intensity[std::size_t(iy) * grid.nx + (grid.nx - 1 - ix)];
      const double vy = field.intensity[std::size_t(grid.ny - 1 - iy) * grid.nx + ix];
      CHECK(std::abs(v - vx) <= 1e-9 * peak);
      CHECK(std::abs(v - vy) <= 1e-9 * peak);
    }
  // Map maximum sits at the geometric focus.
  const std::size_t ipk =
      std::max_element(field.intensity.begin(), field.intensity.end()) -
      field.intensity.begin();
  CHECK(int(ipk % grid.nx) == grid.nx / 2);
  CHECK(int(ipk / grid.nx) == grid.ny / 2);
}

TEST_CASE("transverse power is conserved between z-planes") {
  const BeamParams b = tight_beam();
  FocalGridSpec focal_plane;
  focal_plane.nx = 91;
  focal_plane.ny = 91;
  focal_plane.pitch_nm = 45.0;  // 4 µm span catches the tails
  FocalGridSpec defocused = focal_plane;
  defocused.z_nm = b.wavelength_nm / 4.0;

  const double p0 = integrated_plane_power(focal_intensity_map(b, kOil, focal_plane, {}, 2));
  const double pz = integrated_plane_power(focal_intensity_map(b, kOil, defocused, {}, 2));
  CHECK(std::abs(pz - p0) <= 0.01 * p0);
}

TEST_CASE("quadrature refinement changes samples by < 1e-6 relative") {
  const BeamParams b = tight_beam();
  FocalQuadrature coarse;  // default order 64
  FocalQuadrature fine;
  fine.theta_order = 128;
  for (const Vec3 r : {Vec3{0.0, 0.0, 0.0}, Vec3{310.0, 170.0, 0.0}, Vec3{900.0, -500.0, 250.0}}) {
    const CVec3 e1 = focal_field_point(b, kOil, r, coarse);
    const CVec3 e2 = focal_field_point(b, kOil, r, fine);
    const double scale = std::sqrt(e2.squared_norm());
    CHECK(std::abs(e1.x - e2.x) <= 1e-6 * scale);
    CHECK(std::abs(e1.y - e2.y) <= 1e-6 * scale);
    CHECK(std::abs(e1.z - e2.z) <= 1e-6 * scale);
  }
}

TEST_CASE("profile_fwhm: Gaussian of sigma 100 nm gives 235.5 nm") {
  std::vector<double> pos, val;
  for (int i = -60; i <= 60; ++i) {
    const double x = i * 10.0;
    pos.push_back(x);
    val.push_back(std::exp(-x * x / (2.0 * 100.0 * 100.0)));
  }
  CHECK(std::abs(profile_fwhm(pos, val, 0.0) - 235.48) < 1.0);
}

TEST_CASE("profile_fwhm: peak on the boundary is an error") {
  std::vector<double> pos{0.0, 10.0, 20.0}, val{3.0, 2.0, 1.0};
  CHECK_THROWS_AS(profile_fwhm(pos, val, 0.0), NumericalError);
}

TEST_CASE("focal grid sampling invariant is enforced") {
  const BeamParams b = tight_beam();
  FocalGridSpec grid;
  grid.pitch_nm = 80.0;  // above λ/(8 n_h) ≈ 49.4 nm
  CHECK_THROWS_AS(focal_intensity_map(b, kOil, grid), ConfigError);
}

TEST_CASE("field sampling: outside the grid raises a range error") {
  const BeamParams b = tight_beam();
  FocalGridSpec grid;
  grid.nx = 11;
  grid.ny = 11;
  grid.pitch_nm = 40.0;
  const FocalField field = focal_intensity_map(b, kOil, grid);
  CHECK_THROWS_AS(field.sample(500.0, 0.0), std::range_error);
  CHECK_NOTHROW(field.sample(-200.0, 200.0));
}
