#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace plasmoscan {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Real 3-vector (nm for positions, dimensionless for directions).
struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
    return {x / n, y / n, z / n};
  }
};

/// Complex field 3-vector.
struct CVec3 {
  Complex x{0.0, 0.0}, y{0.0, 0.0}, z{0.0, 0.0};

  CVec3 operator+(const CVec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
  CVec3 operator-(const CVec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
  CVec3 operator*(const Complex &s) const { return {x * s, y * s, z * s}; }
  CVec3 operator*(double s) const { return {x * s, y * s, z * s}; }

  /// Σ conj(this)·o, the Hermitian inner product.
  Complex hdot(const CVec3 &o) const {
    return std::conj(x) * o.x + std::conj(y) * o.y + std::conj(z) * o.z;
  }
  /// Σ this·o without conjugation.
  Complex dot(const CVec3 &o) const { return x * o.x + y * o.y + z * o.z; }
  Complex dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
  double squared_norm() const { return std::norm(x) + std::norm(y) + std::norm(z); }
};

inline CVec3 operator*(const Complex &s, const CVec3 &v) { return v * s; }

/// Host wavenumber k = 2π n_h / λ, rad/nm.
inline double host_wavenumber(double wavelength_nm, double host_index) {
  return 2.0 * kPi * host_index / wavelength_nm;
}

}  // namespace plasmoscan
