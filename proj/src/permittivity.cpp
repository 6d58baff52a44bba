#include "plasmoscan/permittivity.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "plasmoscan/errors.hpp"

namespace plasmoscan {

PermittivityTable::PermittivityTable(std::vector<PermittivityEntry> entries, std::string label)
    : entries_(std::move(entries)), label_(std::move(label)) {
  if (entries_.size() < 2)
    throw ConfigError("permittivity table '" + label_ + "': needs at least 2 entries");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].eps_im < 0.0)
      throw ConfigError("permittivity table '" + label_ + "': eps_im < 0 at " +
                        std::to_string(entries_[i].wavelength_nm) + " nm");
    if (i > 0 && entries_[i].wavelength_nm <= entries_[i - 1].wavelength_nm)
      throw ConfigError("permittivity table '" + label_ +
                        "': wavelengths must be strictly increasing");
  }
  if (entries_.front().wavelength_nm > 400.0 || entries_.back().wavelength_nm < 700.0)
    throw ConfigError("permittivity table '" + label_ + "': must cover at least 400-700 nm");
}

Complex PermittivityTable::at(double wavelength_nm) const {
  if (wavelength_nm < min_wavelength_nm() || wavelength_nm > max_wavelength_nm()) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "wavelength %.6g nm outside table '%s' coverage [%.6g, %.6g] nm",
                  wavelength_nm, label_.c_str(), min_wavelength_nm(), max_wavelength_nm());
    throw std::range_error(buf);
  }
  auto hi = std::lower_bound(entries_.begin(), entries_.end(), wavelength_nm,
                             [](const PermittivityEntry &e, double w) { return e.wavelength_nm < w; });
  if (hi == entries_.begin()) return {hi->eps_re, hi->eps_im};
  if (hi == entries_.end()) --hi;
  auto lo = hi;
  if (hi->wavelength_nm > wavelength_nm) --lo; else ++hi;
  if (hi == entries_.end()) return {lo->eps_re, lo->eps_im};
  const double t = (wavelength_nm - lo->wavelength_nm) / (hi->wavelength_nm - lo->wavelength_nm);
  return {lo->eps_re + t * (hi->eps_re - lo->eps_re),
          lo->eps_im + t * (hi->eps_im - lo->eps_im)};
}

PermittivityTable load_permittivity_csv(std::istream &in, const std::string &label) {
  std::string line;
  if (!std::getline(in, line))
    throw ConfigError("permittivity CSV '" + label + "': empty file");
  // Tolerate a UTF-8 BOM before the header.
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "wavelength_nm,eps_re,eps_im")
    throw ConfigError("permittivity CSV '" + label +
                      "': expected header 'wavelength_nm,eps_re,eps_im', got '" + line + "'");
  std::vector<PermittivityEntry> entries;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    PermittivityEntry e;
    char extra = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf%c", &e.wavelength_nm, &e.eps_re, &e.eps_im,
                    &extra) != 3)
      throw ConfigError("permittivity CSV '" + label + "': malformed line " +
                        std::to_string(line_no) + ": '" + line + "'");
    entries.push_back(e);
  }
  return PermittivityTable(std::move(entries), label);
}

PermittivityTable load_permittivity_csv_file(const std::string &path, const std::string &label) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open permittivity CSV: " + path);
  return load_permittivity_csv(in, label);
}

void write_permittivity_csv(std::ostream &out, const PermittivityTable &table) {
  out << "wavelength_nm,eps_re,eps_im\n";
  char buf[128];
  for (const PermittivityEntry &e : table.entries()) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", e.wavelength_nm, e.eps_re, e.eps_im);
    out << buf;
  }
}

const PermittivityTable &silver_johnson_christy_1972() {
  // ε = (n+ik)² from the Johnson & Christy (1972) n,k table for Ag,
  // λ = 1239.84187 eV·nm / E. Same numbers as data/ag_johnson_christy_1972.csv.
  static const PermittivityTable table(
      {
          {381.49, -3.4720, 0.18640},  // 3.25 eV, n=0.05, k=1.864
          {397.39, -4.2824, 0.20700},  // 3.12 eV, n=0.05, k=2.070
          {413.28, -5.1731, 0.22750},  // 3.00 eV, n=0.05, k=2.275
          {430.50, -6.0598, 0.19696},  // 2.88 eV, n=0.04, k=2.462
          {450.85, -7.0580, 0.21256},  // 2.75 eV, n=0.04, k=2.657
          {471.42, -8.2287, 0.28690},  // 2.63 eV, n=0.05, k=2.869
          {495.94, -9.5641, 0.30930},  // 2.50 eV, n=0.05, k=3.093
          {520.94, -11.0465, 0.33240}, // 2.38 eV, n=0.05, k=3.324
          {548.60, -12.8558, 0.43032}, // 2.26 eV, n=0.06, k=3.586
          {582.09, -14.8817, 0.38580}, // 2.13 eV, n=0.05, k=3.858
          {616.84, -17.2355, 0.49824}, // 2.01 eV, n=0.06, k=4.152
          {659.49, -20.0948, 0.44830}, // 1.88 eV, n=0.05, k=4.483
          {704.46, -23.4046, 0.38704}, // 1.76 eV, n=0.04, k=4.838
          {756.00, -27.4777, 0.31452}, // 1.64 eV, n=0.03, k=5.242
          {821.09, -32.7969, 0.45816}, // 1.51 eV, n=0.04, k=5.727
      },
      "Ag-JohnsonChristy1972");
  return table;
}

const PermittivityTable &builtin_permittivity(const std::string &label) {
  if (label == "Ag-JohnsonChristy1972" || label == "jc1972" || label.empty())
    return silver_johnson_christy_1972();
  throw ConfigError("unknown permittivity dataset label: '" + label + "'");
}

}  // namespace plasmoscan
