#include "plasmoscan/focal_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "plasmoscan/errors.hpp"
#include "plasmoscan/parallel.hpp"
#include "plasmoscan/quadrature.hpp"

namespace plasmoscan {

int FocalQuadrature::effective_theta_order(double k, double rho_nm, double sin_alpha) const {
  // Oscillation budget: the kernel J_m(kρ sinθ) sweeps ~kρ sinα radians of
  // phase across the θ range; Gauss-Legendre needs order ≳ phase/2 plus slack.
  const double phase = k * rho_nm * sin_alpha;
  const int needed = int(std::ceil(0.75 * phase)) + 24;
  return std::max(theta_order, needed);
}

namespace {

struct AzimuthalIntegrals {
  Complex i0, i1, i2;
};

// The three Richards-Wolf θ-integrals at transverse radius ρ and height z.
AzimuthalIntegrals richards_wolf_integrals(const BeamParams &beam, const HostMedium &host,
                                           double rho_nm, double z_nm,
                                           const FocalQuadrature &quad) {
  const double alpha = beam.alpha_max(host);
  const double k = host_wavenumber(beam.wavelength_nm, host.refractive_index);
  const int order = quad.effective_theta_order(k, rho_nm, std::sin(alpha));
  const GaussLegendreRule rule = gauss_legendre_on(order, 0.0, alpha);

  AzimuthalIntegrals out{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double theta = rule.nodes[i];
    const double w = rule.weights[i];
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double apod = pupil_apodization(beam, host, theta);
    const double u = k * rho_nm * s;
    const Complex axial = std::polar(1.0, k * z_nm * c);
    const Complex base = w * apod * s * axial;
    out.i0 += base * ((1.0 + c) * std::cyl_bessel_j(0, u));
    out.i1 += base * (s * std::cyl_bessel_j(1, u));
    out.i2 += base * ((1.0 - c) * std::cyl_bessel_j(2, u));
  }
  return out;
}

}  // namespace

CVec3 focal_field_point(const BeamParams &beam, const HostMedium &host, const Vec3 &r_nm,
                        const FocalQuadrature &quad) {
  beam.validate(host);
  // Work in the frame where the polarization is +x, rotate components back.
  const double chi = beam.pol_angle();
  const double cs = std::cos(chi), sn = std::sin(chi);
  const double xr = cs * r_nm.x + sn * r_nm.y;
  const double yr = -sn * r_nm.x + cs * r_nm.y;

  const double rho = std::hypot(xr, yr);
  const double phi = std::atan2(yr, xr);
  const AzimuthalIntegrals in = richards_wolf_integrals(beam, host, rho, r_nm.z, quad);

  const double amp = kPi * std::sqrt(beam.power_norm);
  const Complex ex = amp * (in.i0 + in.i2 * std::cos(2.0 * phi));
  const Complex ey = amp * (in.i2 * std::sin(2.0 * phi));
  const Complex ez = Complex(0.0, -2.0) * amp * (in.i1 * std::cos(phi));

  return CVec3{cs * ex - sn * ey, sn * ex + cs * ey, ez};
}

CVec3 FocalField::sample(double x_nm, double y_nm) const {
  const double fx = x_nm / grid.pitch_nm + (grid.nx - 1) * 0.5;
  const double fy = y_nm / grid.pitch_nm + (grid.ny - 1) * 0.5;
  if (fx < 0.0 || fy < 0.0 || fx > grid.nx - 1 || fy > grid.ny - 1) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "position (%.6g, %.6g) nm outside the sampled grid",
                  x_nm, y_nm);
    throw std::range_error(buf);
  }
  const int ix = std::min(int(fx), grid.nx - 2 >= 0 ? grid.nx - 2 : 0);
  const int iy = std::min(int(fy), grid.ny - 2 >= 0 ? grid.ny - 2 : 0);
  const double tx = fx - ix;
  const double ty = fy - iy;
  auto mix = [](const Complex &a, const Complex &b, double t) { return a + (b - a) * t; };
  CVec3 out;
  const CVec3 &c00 = at(ix, iy);
  const CVec3 &c10 = grid.nx > 1 ? at(ix + 1, iy) : c00;
  const CVec3 &c01 = grid.ny > 1 ? at(ix, iy + 1) : c00;
  const CVec3 &c11 = (grid.nx > 1 && grid.ny > 1) ? at(ix + 1, iy + 1) : c00;
  out.x = mix(mix(c00.x, c10.x, tx), mix(c01.x, c11.x, tx), ty);
  out.y = mix(mix(c00.y, c10.y, tx), mix(c01.y, c11.y, tx), ty);
  out.z = mix(mix(c00.z, c10.z, tx), mix(c01.z, c11.z, tx), ty);
  return out;
}

FocalField focal_intensity_map(const BeamParams &beam, const HostMedium &host,
                               const FocalGridSpec &grid, const FocalQuadrature &quad,
                               int threads) {
  beam.validate(host);
  if (grid.nx < 1 || grid.ny < 1) throw ConfigError("focal grid: nx, ny must be >= 1");
  const double max_pitch = beam.wavelength_nm / (8.0 * host.refractive_index);
  if (!(grid.pitch_nm > 0.0) || grid.pitch_nm > max_pitch + 1e-12) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "focal grid: pitch %.6g nm exceeds sampling limit %.6g nm",
                  grid.pitch_nm, max_pitch);
    throw ConfigError(buf);
  }

  FocalField field;
  field.beam = beam;
  field.host = host;
  field.grid = grid;
  field.values.resize(std::size_t(grid.nx) * grid.ny);
  field.intensity.resize(field.values.size());

  parallel_for(field.values.size(), threads, [&](std::size_t idx) {
    const int ix = int(idx % grid.nx);
    const int iy = int(idx / grid.nx);
    const CVec3 e =
        focal_field_point(beam, host, {grid.x_of(ix), grid.y_of(iy), grid.z_nm}, quad);
    field.values[idx] = e;
    field.intensity[idx] = e.squared_norm();
  });
  return field;
}

double integrated_plane_power(const FocalField &field) {
  double sum = 0.0;
  for (double v : field.intensity) sum += v;
  return sum * field.grid.pitch_nm * field.grid.pitch_nm;
}

double profile_fwhm(const std::vector<double> &positions_nm, const std::vector<double> &values,
                    double baseline) {
  if (positions_nm.size() != values.size() || values.size() < 3)
    throw NumericalError("profile_fwhm: need a profile with at least 3 samples");
  std::vector<double> v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v[i] = values[i] - baseline;
  const std::size_t ipk = std::max_element(v.begin(), v.end()) - v.begin();
  if (ipk == 0 || ipk + 1 == v.size())
    throw NumericalError("profile_fwhm: peak sits on the profile boundary");
  const double half = 0.5 * v[ipk];

  auto cross = [&](std::size_t from, int step) {
    std::size_t i = from;
    while (true) {
      const std::size_t j = i + step;
      if (j >= v.size())
        throw NumericalError("profile_fwhm: half-maximum crossing not bracketed");
      if (v[j] <= half) {
        const double t = (v[i] - half) / (v[i] - v[j]);
        return positions_nm[i] + t * (positions_nm[j] - positions_nm[i]);
      }
      i = j;
    }
  };
  const double right = cross(ipk, +1);
  const double left = cross(ipk, -1);
  return right - left;
}

double spot_fwhm(const FocalField &field, Axis axis) {
  const std::size_t ipk =
      std::max_element(field.intensity.begin(), field.intensity.end()) - field.intensity.begin();
  const int px = int(ipk % field.grid.nx);
  const int py = int(ipk / field.grid.nx);

  std::vector<double> pos, val;
  if (axis == Axis::X) {
    pos.reserve(field.grid.nx);
    val.reserve(field.grid.nx);
    for (int ix = 0; ix < field.grid.nx; ++ix) {
      pos.push_back(field.grid.x_of(ix));
      val.push_back(field.intensity[std::size_t(py) * field.grid.nx + ix]);
    }
  } else {
    pos.reserve(field.grid.ny);
    val.reserve(field.grid.ny);
    for (int iy = 0; iy < field.grid.ny; ++iy) {
      pos.push_back(field.grid.y_of(iy));
      val.push_back(field.intensity[std::size_t(iy) * field.grid.nx + px]);
    }
  }
  return profile_fwhm(pos, val, 0.0);
}

}  // namespace plasmoscan
