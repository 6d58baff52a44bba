#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "plasmoscan/core.hpp"

namespace plasmoscan {

/// One tabulated point of a complex dielectric function.
struct PermittivityEntry {
  double wavelength_nm = 0.0;
  double eps_re = 0.0;
  double eps_im = 0.0;
};

/// Tabulated ε(λ) of the particle material, interpolated linearly in λ.
///
/// Invariants enforced on construction: wavelengths strictly increasing,
/// eps_im >= 0 everywhere, coverage of at least 400-700 nm.
class PermittivityTable {
 public:
  PermittivityTable(std::vector<PermittivityEntry> entries, std::string label);

  /// Linear interpolation of real and imaginary parts at λ (nm).
  /// Throws std::range_error (naming the valid interval) outside coverage.
  Complex at(double wavelength_nm) const;

  double min_wavelength_nm() const { return entries_.front().wavelength_nm; }
  double max_wavelength_nm() const { return entries_.back().wavelength_nm; }
  const std::string &label() const { return label_; }
  const std::vector<PermittivityEntry> &entries() const { return entries_; }

 private:
  std::vector<PermittivityEntry> entries_;
  std::string label_;
};

/// Parse the CSV resource format: header `wavelength_nm,eps_re,eps_im`, '.' decimals.
PermittivityTable load_permittivity_csv(std::istream &in, const std::string &label);
PermittivityTable load_permittivity_csv_file(const std::string &path, const std::string &label);
void write_permittivity_csv(std::ostream &out, const PermittivityTable &table);

/// Embedded silver dataset (Johnson & Christy 1972, ε = (n+ik)² at the
/// tabulated photon energies, 381-821 nm). Label "Ag-JohnsonChristy1972".
const PermittivityTable &silver_johnson_christy_1972();

/// Look a table up by label ("Ag-JohnsonChristy1972" is the only built-in).
const PermittivityTable &builtin_permittivity(const std::string &label);

}  // namespace plasmoscan
