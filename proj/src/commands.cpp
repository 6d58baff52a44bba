#include "plasmoscan/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>

#include <json.hpp>

#include "plasmoscan/errors.hpp"
#include "plasmoscan/io.hpp"
#include "plasmoscan/oracles.hpp"
#include "plasmoscan/rng.hpp"

namespace plasmoscan {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string prep_dir(const RunConfig &config, const std::string &out_dir,
                     const std::string &command) {
  fs::create_directories(out_dir);
  io::write_text_file(out_dir + "/manifest.json", manifest_json(config, command));
  return out_dir;
}

Vec3 in_plane_perpendicular(const Vec3 &v) {
  const Vec3 u = v.normalized();
  return Vec3{-u.y, u.x, 0.0};
}

void write_decomposition_csv(const std::string &path, const ScanImage &image) {
  std::string body = "x_nm,y_nm,ref_term,sca_term,interference_term,phase_rad\n";
  for (int iy = 0; iy < image.grid.ny; ++iy)
    for (int ix = 0; ix < image.grid.nx; ++ix) {
      const std::size_t i = std::size_t(iy) * image.grid.nx + ix;
      body += io::format_double(image.grid.x_of(ix)) + "," +
              io::format_double(image.grid.y_of(iy)) + "," +
              io::format_double(image.ref_map[i]) + "," + io::format_double(image.sca_map[i]) +
              "," + io::format_double(image.interference_map[i]) + "," +
              io::format_double(image.phase_map[i]) + "\n";
    }
  io::write_text_file(path, body);
}

}  // namespace

void run_spectrum(const RunConfig &config, const std::string &out_dir) {
  config.validate();
  const std::string dir = prep_dir(config, out_dir, "spectrum");
  const PermittivityTable &table = config.material();

  const Vec3 long_axis = config.particle.orientation.normalized();
  const Vec3 short_axis = in_plane_perpendicular(long_axis);
  const auto sweep_long =
      plasmon_spectrum(config.particle, config.host, table, config.sweep.lambda_min_nm,
                       config.sweep.lambda_max_nm, config.sweep.points, long_axis);
  const auto sweep_short =
      plasmon_spectrum(config.particle, config.host, table, config.sweep.lambda_min_nm,
                       config.sweep.lambda_max_nm, config.sweep.points, short_axis);
  io::write_spectrum_csv(dir + "/spectrum.csv", sweep_long, sweep_short);

  std::vector<double> lambdas, sca;
  for (const SpectrumPoint &p : sweep_long) {
    lambdas.push_back(p.wavelength_nm);
    sca.push_back(p.cs.sigma_sca_nm2);
  }
  const std::size_t ipk = std::max_element(sca.begin(), sca.end()) - sca.begin();

  json summary;
  summary["peak_wavelength_nm"] = lambdas[ipk];
  summary["peak_sigma_sca_nm2"] = sca[ipk];
  try {
    summary["sigma_sca_fwhm_nm"] = profile_fwhm(lambdas, sca, 0.0);
  } catch (const NumericalError &) {
    summary["sigma_sca_fwhm_nm"] = nullptr;  // peak clipped by the sweep range
  }
  const PolarizabilityTensor alpha_src = particle_polarizability(
      config.particle, config.host, table, config.beam.wavelength_nm);
  const CrossSections at_src =
      cross_sections(alpha_src, alpha_src.k, config.particle.orientation, long_axis);
  summary["sigma_sca_at_source_nm2"] = at_src.sigma_sca_nm2;
  summary["source_over_peak"] = at_src.sigma_sca_nm2 / sca[ipk];
  io::write_text_file(dir + "/spectrum_summary.json", summary.dump(2) + "\n");
}

void run_focus(const RunConfig &config, const std::string &out_dir) {
  config.validate();
  const std::string dir = prep_dir(config, out_dir, "focus");
  const FocalField field = focal_intensity_map(config.beam, config.host, config.focus_map,
                                               config.quadrature, config.threads);
  io::write_focal_intensity_csv(dir + "/focal_intensity.csv", field);
  io::write_focal_field_csv(dir + "/focal_field.csv", field);

  json summary;
  const double fx = spot_fwhm(field, Axis::X);
  const double fy = spot_fwhm(field, Axis::Y);
  summary["fwhm_x_nm"] = fx;
  summary["fwhm_y_nm"] = fy;
  summary["ellipticity"] = fx / fy;
  summary["fill_factor"] = config.beam.fill_factor;
  io::write_text_file(dir + "/focus_summary.json", summary.dump(2) + "\n");
}

namespace {

// Noiseless images for the configured source: monochromatic raster scan, or
// the weight-averaged broadband scan when a source spectrum is present.
ScanImage compute_scan(const RunConfig &config, const DetectionGeometry &det) {
  const PermittivityTable &table = config.material();
  if (!config.source_spectrum.empty())
    return broadband_scan(config.beam, config.host, config.particle, table,
                          config.source_spectrum, det, config.scan, config.quadrature,
                          config.threads);
  const PolarizabilityTensor alpha = particle_polarizability(
      config.particle, config.host, table, config.beam.wavelength_nm);
  return raster_scan(config.beam, config.host, alpha, config.particle.orientation, det,
                     config.scan, config.quadrature, config.threads);
}

json scan_channel_summary(const ScanImage &image, double particle_extent_nm) {
  json s;
  s["background"] = image.background;
  s["contrast"] = image_contrast(image);
  const double fx = scan_fwhm(image, Axis::X);
  const double fy = scan_fwhm(image, Axis::Y);
  s["fwhm_x_nm"] = fx;
  s["fwhm_y_nm"] = fy;
  const FiniteSizeCorrection cx = finite_size_correction(fx, particle_extent_nm);
  const FiniteSizeCorrection cy = finite_size_correction(fy, particle_extent_nm);
  s["fwhm_x_finite_size_nm"] = cx.corrected_fwhm_nm;
  s["fwhm_y_finite_size_nm"] = cy.corrected_fwhm_nm;
  s["finite_size_delta_x_nm"] = cx.delta_nm;
  s["finite_size_delta_y_nm"] = cy.delta_nm;
  return s;
}

}  // namespace

void run_scan(const RunConfig &config, const std::string &out_dir) {
  config.validate();
  const std::string dir = prep_dir(config, out_dir, "scan");

  const ScanImage trans = compute_scan(config, config.transmission);
  const ScanImage refl = compute_scan(config, config.reflection);
  io::write_scan_image_csv(dir + "/scan_transmission.csv", trans);
  io::write_scan_image_csv(dir + "/scan_reflection.csv", refl);
  write_decomposition_csv(dir + "/decomposition_transmission.csv", trans);
  write_decomposition_csv(dir + "/decomposition_reflection.csv", refl);

  for (const auto &[image, tag] : {std::pair<const ScanImage *, const char *>{&trans, "transmission"},
                                  {&refl, "reflection"}}) {
    for (const Axis axis : {Axis::X, Axis::Y}) {
      const auto [pos, val] = io::image_cross_section(*image, axis);
      io::write_profile_csv(dir + "/cross_section_" + tag + (axis == Axis::X ? "_x" : "_y") +
                                ".csv",
                            "position_nm", "signal", pos, val);
    }
  }

  // Particle extent along the scan direction: the short (transverse) axis.
  const double extent = 2.0 * config.particle.semi_axis_short_nm;
  json summary;
  summary["transmission"] = scan_channel_summary(trans, extent);
  summary["reflection"] = scan_channel_summary(refl, extent);

  // Conversion report: monochromatic at the beam wavelength, or the
  // weight-averaged per-line reports for a broadband source.
  std::vector<SpectralWeight> lines = config.source_spectrum;
  if (lines.empty()) lines.push_back({config.beam.wavelength_nm, 1.0});
  double total_weight = 0.0;
  for (const SpectralWeight &s : lines) total_weight += s.weight;
  ConversionReport conv;
  for (const SpectralWeight &s : lines) {
    BeamParams beam = config.beam;
    beam.wavelength_nm = s.wavelength_nm;
    const PolarizabilityTensor alpha = particle_polarizability(
        config.particle, config.host, config.material(), s.wavelength_nm);
    const ConversionReport one = conversion_efficiency(
        beam, config.host, alpha, config.particle.orientation, config.transmission,
        config.quadrature);
    const double w = s.weight / total_weight;
    conv.lower_bound += w * one.lower_bound;
    conv.p_sca += w * one.p_sca;
    conv.p_abs += w * one.p_abs;
    conv.p_ext += w * one.p_ext;
    conv.p_sca_collected += w * one.p_sca_collected;
  }
  summary["conversion"] = {{"lower_bound", conv.lower_bound},
                           {"p_sca", conv.p_sca},
                           {"p_abs", conv.p_abs},
                           {"p_ext", conv.p_ext},
                           {"p_sca_collected", conv.p_sca_collected}};
  io::write_text_file(dir + "/scan_summary.json", summary.dump(2) + "\n");
}

void run_scan_photon(const RunConfig &config, const std::string &out_dir) {
  config.validate();
  const std::string dir = prep_dir(config, out_dir, "scan-photon");

  int channel_index = 0;
  json summary;
  for (const auto &[det, tag] :
       {std::pair<const DetectionGeometry *, const char *>{&config.transmission, "transmission"},
        {&config.reflection, "reflection"}}) {
    const ScanImage expected = compute_scan(config, *det);
    std::vector<double> average(expected.pixels.size(), 0.0);
    std::vector<double> sumsq(expected.pixels.size(), 0.0);
    for (int frame = 0; frame < config.counting.frames; ++frame) {
      const std::uint64_t frame_seed =
          substream_seed(config.seed, std::uint64_t(channel_index) << 32 | std::uint64_t(frame));
      const CountImage counts =
          count_image(expected, config.counting.dwell_ms, config.counting.source,
                      config.counting.loss_eta, config.counting.rate_per_s, frame_seed,
                      config.threads);
      char name[64];
      std::snprintf(name, sizeof(name), "/counts_%s_%02d.csv", tag, frame);
      io::write_counts_csv(dir + name, counts);
      for (std::size_t i = 0; i < average.size(); ++i) {
        average[i] += double(counts.counts[i]);
        sumsq[i] += double(counts.counts[i]) * double(counts.counts[i]);
      }
    }
    for (double &v : average) v /= config.counting.frames;
    io::write_map_csv(dir + "/counts_" + tag + "_average.csv", expected.grid, "mean_counts",
                      average);
    if (config.counting.frames > 1) {
      std::vector<double> fano(average.size(), 0.0);
      const int n = config.counting.frames;
      for (std::size_t i = 0; i < average.size(); ++i) {
        const double var = (sumsq[i] - n * average[i] * average[i]) / (n - 1);
        fano[i] = average[i] > 0.0 ? var / average[i] : 0.0;
      }
      io::write_map_csv(dir + "/fano_" + tag + ".csv", expected.grid, "fano", fano);
    }

    const double n_in = config.counting.rate_per_s * config.counting.dwell_ms * 1e-3;
    summary[tag] = {{"frames", config.counting.frames},
                    {"photons_per_pixel", n_in},
                    {"expected_background_counts",
                     n_in * config.counting.loss_eta * expected.background}};
    ++channel_index;
  }
  summary["source"] =
      config.counting.source == SourceModel::Poisson ? "poisson" : "triggered";
  summary["loss_eta"] = config.counting.loss_eta;
  io::write_text_file(dir + "/photon_summary.json", summary.dump(2) + "\n");
}

void run_g2(const RunConfig &config, const std::string &out_dir) {
  config.validate();
  const std::string dir = prep_dir(config, out_dir, "g2");

  PhotonStream stream = simulate_stream(config.emitter, config.g2run.duration_ns,
                                        config.g2run.rate_scale, config.seed);
  if (config.g2run.dead_time_ns > 0.0 || config.g2run.dark_rate_per_s > 0.0)
    stream = apply_detector_effects(stream, config.g2run.dead_time_ns,
                                    config.g2run.dark_rate_per_s * 1e-9,
                                    substream_seed(config.seed, 0xDE7EC7));
  const G2Histogram hist =
      g2_estimate(stream, config.g2run.bin_width_ns, config.g2run.max_tau_ns);

  std::vector<double> theory;
  if (config.emitter.mode == EmitterMode::Cw)
    for (double tau : hist.tau_ns) theory.push_back(g2_theory(config.emitter, tau));

  io::write_stream_csv(dir + "/stream.csv", stream);
  io::write_g2_csv(dir + "/g2.csv", hist, theory);

  json summary;
  summary["events"] = stream.timestamps_ns.size();
  summary["duration_ns"] = stream.duration_ns;
  summary["mean_rate_per_ns"] = stream.mean_rate_per_ns();
  summary["g2_first_bin"] = hist.g2.empty() ? 0.0 : hist.g2.front();
  io::write_text_file(dir + "/g2_summary.json", summary.dump(2) + "\n");
}

bool run_verify(std::ostream &out) {
  using oracles::make_report;
  using oracles::OracleReport;
  bool all_pass = true;
  auto emit = [&](const OracleReport &r) {
    out << oracles::to_json_line(r) << "\n";
    all_pass = all_pass && r.pass;
  };

  const HostMedium host{1.49};
  const PermittivityTable &table = silver_johnson_christy_1972();

  // Corrected-dipole extinction of a 60 nm silver sphere against the Mie
  // dipole term.
  SpheroidParticle sphere;
  sphere.semi_axis_long_nm = sphere.semi_axis_short_nm = 30.0;
  for (double lambda : {500.0, 550.0, 600.0, 650.0}) {
    const PolarizabilityTensor alpha = particle_polarizability(sphere, host, table, lambda);
    const CrossSections cs =
        cross_sections(alpha, alpha.k, sphere.orientation, Vec3{1.0, 0.0, 0.0});
    const auto mie = oracles::mie_sphere_cross_sections(30.0, table.at(lambda), host, lambda);
    char label[64];
    std::snprintf(label, sizeof(label), "mie_dipole_sigma_ext_%.0fnm", lambda);
    emit(make_report(label, mie.dipole_term.sigma_ext_nm2, cs.sigma_ext_nm2, 0.15));
  }

  // Closed-form depolarization factors against the defining integral.
  const auto [l_long, l_short] = depolarization_factors(47.0, 23.0);
  const auto [ol, os] = oracles::depolarization_integral(47.0, 23.0);
  emit(make_report("depolarization_L_long_47x23", ol, l_long, 1e-9));
  emit(make_report("depolarization_L_short_47x23", os, l_short, 1e-9));

  // Vectorial focal spot against the scalar Debye oracle at low NA.
  BeamParams beam;
  beam.na_focus = 0.1;
  beam.fill_factor = 1.0;
  FocalGridSpec grid;
  grid.nx = 301;
  grid.ny = 1;
  grid.pitch_nm = 45.0;
  const FocalField field = focal_intensity_map(beam, host, grid, {}, 1);
  const double fwhm_vec = spot_fwhm(field, Axis::X);
  const double fwhm_scalar = oracles::scalar_focus_fwhm(0.1, beam.wavelength_nm, host, 1.0);
  emit(make_report("scalar_focus_fwhm_na0.1", fwhm_scalar, fwhm_vec, 0.02));

  return all_pass;
}

}  // namespace plasmoscan
