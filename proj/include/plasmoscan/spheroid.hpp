#pragma once

#include <string>
#include <utility>

#include "plasmoscan/core.hpp"

namespace plasmoscan {

/// Prolate (or spherical) particle: semi-axes a >= b = c, long axis in the
/// substrate plane. Axis lengths are semi-axes in nm (a 94x46 nm particle has
/// a=47, b=23).
struct SpheroidParticle {
  double semi_axis_long_nm = 47.0;   // a
  double semi_axis_short_nm = 23.0;  // b = c
  Vec3 orientation{1.0, 0.0, 0.0};   // unit vector of the long axis, z = 0
  std::string material_label = "Ag-JohnsonChristy1972";

  void validate() const;
  double volume_nm3() const {
    return 4.0 / 3.0 * kPi * semi_axis_long_nm * semi_axis_short_nm * semi_axis_short_nm;
  }
};

/// Geometric depolarization factors (L_long, L_short) of a prolate spheroid
/// with semi-axes a >= b. Closed form; L_long + 2 L_short = 1 and
/// 0 < L_long <= 1/3 <= L_short < 1/2.
std::pair<double, double> depolarization_factors(double a_nm, double b_nm);

}  // namespace plasmoscan
