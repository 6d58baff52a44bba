#include "plasmoscan/oracles.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "plasmoscan/errors.hpp"

namespace plasmoscan::oracles {

OracleReport make_report(const std::string &quantity, double oracle_value,
                         double candidate_value, double tolerance) {
  OracleReport r;
  r.quantity = quantity;
  r.oracle_value = oracle_value;
  r.candidate_value = candidate_value;
  const double scale = std::abs(oracle_value) > 0.0 ? std::abs(oracle_value) : 1.0;
  r.relative_error = std::abs(candidate_value - oracle_value) / scale;
  r.tolerance = tolerance;
  r.pass = r.relative_error <= tolerance;
  return r;
}

std::string to_json_line(const OracleReport &r) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "{\"quantity\":\"%s\",\"oracle\":%.17g,\"candidate\":%.17g,"
                "\"relative_error\":%.17g,\"tolerance\":%.17g,\"pass\":%s}",
                r.quantity.c_str(), r.oracle_value, r.candidate_value, r.relative_error,
                r.tolerance, r.pass ? "true" : "false");
  return buf;
}

MieResult mie_sphere_cross_sections(double radius_nm, Complex eps_particle,
                                    const HostMedium &host, double wavelength_nm) {
  const double k = host_wavenumber(wavelength_nm, host.refractive_index);
  const double x = k * radius_nm;  // size parameter in the host
  if (!(x > 0.0) || x >= 5.0)
    throw NumericalError("mie oracle: size parameter out of range (0, 5)");
  const Complex m = std::sqrt(eps_particle) / host.refractive_index;
  const Complex mx = m * x;

  // Logarithmic derivative D_n(mx) by downward recurrence.
  const int nmax = int(std::ceil(x + 4.0 * std::cbrt(x) + 2.0)) + 10;
  const int nstart = nmax + 15;
  std::vector<Complex> d(nstart + 1, Complex(0.0, 0.0));
  for (int n = nstart; n >= 1; --n) {
    const Complex rn = Complex(double(n), 0.0) / mx;
    d[n - 1] = rn - 1.0 / (d[n] + rn);
  }

  // Riccati-Bessel ψ_n(x), χ_n(x) upward; ξ_n = ψ_n - iχ_n.
  double psi0 = std::sin(x), psi1 = std::sin(x) / x - std::cos(x);
  double chi0 = std::cos(x), chi1 = std::cos(x) / x + std::sin(x);

  double sum_ext = 0.0, sum_sca = 0.0;
  double dip_ext = 0.0, dip_sca = 0.0;
  double max_ab = 0.0;
  int used = 0;
  for (int n = 1; n <= nmax; ++n) {
    if (n > 1) {
      const double psi = (2.0 * n - 1.0) / x * psi1 - psi0;
      const double chi = (2.0 * n - 1.0) / x * chi1 - chi0;
      psi0 = psi1;
      psi1 = psi;
      chi0 = chi1;
      chi1 = chi;
    }
    const Complex xi(psi1, -chi1);       // ξ_n
    const Complex xi_prev(psi0, -chi0);  // ξ_{n-1}

    const Complex da = d[n] / m + Complex(double(n), 0.0) / x;
    const Complex db = d[n] * m + Complex(double(n), 0.0) / x;
    const Complex an = (da * psi1 - psi0) / (da * xi - xi_prev);
    const Complex bn = (db * psi1 - psi0) / (db * xi - xi_prev);

    const double c = 2.0 * n + 1.0;
    const double term_ext = c * (an + bn).real();
    const double term_sca = c * (std::norm(an) + std::norm(bn));
    sum_ext += term_ext;
    sum_sca += term_sca;
    if (n == 1) {
      dip_ext = 3.0 * an.real();
      dip_sca = 3.0 * std::norm(an);
    }
    used = n;
    const double ab = std::abs(an) + std::abs(bn);
    max_ab = std::max(max_ab, ab);
    // Terms decay super-exponentially past n ~ x; stop once they are
    // negligible against the largest coefficient seen (or pure roundoff).
    if (n > 2 && ab <= 1e-14 * (1.0 + max_ab)) break;
  }
  if (used == nmax)
    throw NumericalError("mie oracle: series did not converge before the term cap");

  const double pref = 2.0 * kPi / (k * k);
  MieResult result;
  result.full.sigma_ext_nm2 = pref * sum_ext;
  result.full.sigma_sca_nm2 = pref * sum_sca;
  result.full.sigma_abs_nm2 = result.full.sigma_ext_nm2 - result.full.sigma_sca_nm2;
  result.dipole_term.sigma_ext_nm2 = pref * dip_ext;
  result.dipole_term.sigma_sca_nm2 = pref * dip_sca;
  result.dipole_term.sigma_abs_nm2 =
      result.dipole_term.sigma_ext_nm2 - result.dipole_term.sigma_sca_nm2;
  result.terms_used = used;
  return result;
}

namespace {

// Composite Simpson on [a, b].
template <typename F>
double simpson(F &&f, double a, double b, int panels) {
  const int n = 2 * panels;
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace

std::vector<std::pair<double, double>> scalar_focus_profile(double na, double wavelength_nm,
                                                            const HostMedium &host, double f0,
                                                            double rho_max_nm, int samples) {
  if (na > 0.3) throw NumericalError("scalar focus oracle valid only for NA <= 0.3");
  const double alpha = std::asin(na / host.refractive_index);
  const double k = host_wavenumber(wavelength_nm, host.refractive_index);
  const double sa2 = std::sin(alpha) * std::sin(alpha);

  std::vector<std::pair<double, double>> profile;
  profile.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double rho = rho_max_nm * i / double(samples - 1);
    const double u = simpson(
        [&](double theta) {
          const double s = std::sin(theta);
          const double fw = std::exp(-s * s / (f0 * f0 * sa2)) * std::sqrt(std::cos(theta));
          return fw * s * std::cyl_bessel_j(0, k * rho * s);
        },
        0.0, alpha, 400);
    profile.emplace_back(rho, u * u);
  }
  return profile;
}

double scalar_focus_fwhm(double na, double wavelength_nm, const HostMedium &host, double f0) {
  // Scan far enough to bracket the half maximum for any fill factor.
  const double rho_max = 2.0 * wavelength_nm / na;
  const auto profile = scalar_focus_profile(na, wavelength_nm, host, f0, rho_max, 2001);
  const double half = 0.5 * profile.front().second;
  for (std::size_t i = 1; i < profile.size(); ++i) {
    if (profile[i].second <= half) {
      const double t =
          (profile[i - 1].second - half) / (profile[i - 1].second - profile[i].second);
      const double rho_half =
          profile[i - 1].first + t * (profile[i].first - profile[i - 1].first);
      return 2.0 * rho_half;
    }
  }
  throw NumericalError("scalar focus oracle: half maximum not reached within the scan");
}

std::pair<double, double> depolarization_integral(double a_nm, double b_nm) {
  if (!(b_nm > 0.0) || !(a_nm >= b_nm))
    throw std::domain_error("depolarization_integral: require a >= b > 0");
  const double a2 = a_nm * a_nm;
  const double b2 = b_nm * b_nm;
  // L_axis = (a b c / 2) ∫₀^∞ ds / ((s + axis²) √((s+a²)(s+b²)(s+c²))),
  // substituted with s = b² t / (1-t) to a finite interval.
  auto integrand = [&](double t, double axis2) {
    if (t >= 1.0) return 0.0;
    const double s = b2 * t / (1.0 - t);
    const double jac = b2 / ((1.0 - t) * (1.0 - t));
    const double denom = (s + axis2) * std::sqrt((s + a2) * (s + b2) * (s + b2));
    return jac / denom;
  };
  const double pref = a_nm * b_nm * b_nm / 2.0;

  auto integrate = [&](double axis2) {
    // Adaptive-by-refinement Simpson: double panels until stable to 1e-12.
    double prev = 0.0;
    for (int panels = 256; panels <= 1 << 20; panels *= 2) {
      const double cur = simpson([&](double t) { return integrand(t, axis2); }, 0.0,
                                 1.0 - 1e-14, panels);
      if (panels > 256 && std::abs(cur - prev) <= 1e-12 * std::abs(cur)) return cur;
      prev = cur;
    }
    return prev;
  };
  const double l_long = pref * integrate(a2);
  const double l_short = pref * integrate(b2);
  return {l_long, l_short};
}

}  // namespace plasmoscan::oracles
