#pragma once

#include <iosfwd>
#include <string>

#include "plasmoscan/config.hpp"

namespace plasmoscan {

/// Subcommand bodies; each writes its data files plus manifest.json into
/// out_dir. They throw ConfigError / NumericalError; the CLI maps those to
/// exit codes 2 / 3.
void run_spectrum(const RunConfig &config, const std::string &out_dir);
void run_focus(const RunConfig &config, const std::string &out_dir);
void run_scan(const RunConfig &config, const std::string &out_dir);
void run_scan_photon(const RunConfig &config, const std::string &out_dir);
void run_g2(const RunConfig &config, const std::string &out_dir);

/// Oracle cross-checks as JSON lines; returns true when all pass.
bool run_verify(std::ostream &out);

}  // namespace plasmoscan
