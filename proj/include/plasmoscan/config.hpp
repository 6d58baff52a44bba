#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plasmoscan/beam.hpp"
#include "plasmoscan/focal_field.hpp"
#include "plasmoscan/imaging.hpp"
#include "plasmoscan/photon.hpp"

namespace plasmoscan {

struct SpectrumSweep {
  double lambda_min_nm = 450.0;
  double lambda_max_nm = 750.0;
  int points = 200;
};

struct CountingParams {
  double dwell_ms = 40.0;
  double rate_per_s = 1.0e6;
  double loss_eta = 1.0;
  SourceModel source = SourceModel::Triggered;
  int frames = 12;
};

struct G2RunParams {
  double duration_ns = 3.0e7;
  double rate_scale = 1.0;
  double bin_width_ns = 1.0;
  double max_tau_ns = 100.0;
  double dead_time_ns = 0.0;      // detector knobs, default off
  double dark_rate_per_s = 0.0;
};

/// Complete, self-contained description of one simulation run. Serializes
/// to/from JSON; the manifest written next to every output embeds it in full.
struct RunConfig {
  int schema_version = 1;
  BeamParams beam;
  HostMedium host;
  SpheroidParticle particle;
  DetectionGeometry transmission{Channel::Transmission, 1.1};
  DetectionGeometry reflection{Channel::Reflection, 1.4};
  EmitterModel emitter;
  ScanGridSpec scan;
  FocalGridSpec focus_map;
  SpectrumSweep sweep;
  CountingParams counting;
  G2RunParams g2run;
  std::vector<SpectralWeight> source_spectrum;  // empty = monochromatic
  FocalQuadrature quadrature;
  std::uint64_t seed = 20260810;
  int threads = 1;

  void validate() const;
  const PermittivityTable &material() const;
};

/// Parse a config JSON document; error messages carry the JSON key path (and
/// the parser's line/byte position for syntax errors).
RunConfig parse_config_json(const std::string &text);
RunConfig load_config_file(const std::string &path);
std::string dump_config_json(const RunConfig &config);

/// Bundled example configurations, one per produced dataset:
/// "fig2b" (plasmon spectrum), "fig3" (monochromatic raster scans),
/// "fig4" (broadband terrylene-like scan), "g2" (photon statistics).
RunConfig preset_config(const std::string &name);
std::vector<std::string> preset_names();

/// Manifest JSON embedding the full config, tool version, dataset label and
/// seeds; equal manifests imply bit-identical CSV outputs.
std::string manifest_json(const RunConfig &config, const std::string &command);

}  // namespace plasmoscan
