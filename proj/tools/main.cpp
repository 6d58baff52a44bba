// plasmoscan CLI: physical-optics simulation of focused-beam imaging of a
// single silver nanoparticle, plus single-photon counting statistics.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "plasmoscan/commands.hpp"
#include "plasmoscan/errors.hpp"
#include "plasmoscan/version.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string preset = "fig3";
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
  bool print_defaults = false;
};

void add_common(CLI::App *cmd, CommonOpts &opts) {
  cmd->add_option("--config", opts.config_path, "Config JSON file (overrides --preset)");
  cmd->add_option("--preset", opts.preset, "Bundled config: fig2b, fig3, fig4, g2");
  cmd->add_option("--out", opts.out_dir, "Output directory");
  cmd->add_option("--seed", opts.seed, "Override the RNG seed")->each([&](const std::string &) {
    opts.seed_set = true;
  });
  cmd->add_option("--threads", opts.threads, "Worker threads (default from config)");
  cmd->add_flag("--print-defaults", opts.print_defaults,
                "Print the effective config JSON and exit");
}

plasmoscan::RunConfig resolve_config(const CommonOpts &opts) {
  plasmoscan::RunConfig config = opts.config_path.empty()
                                     ? plasmoscan::preset_config(opts.preset)
                                     : plasmoscan::load_config_file(opts.config_path);
  if (opts.seed_set) config.seed = opts.seed;
  if (opts.threads > 0) config.threads = opts.threads;
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{std::string(plasmoscan::kToolName) +
               " - focused single-photon imaging of a silver nanoparticle"};
  app.set_version_flag("--version", plasmoscan::kToolVersion);
  app.require_subcommand(0, 1);

  CommonOpts spectrum_opts, focus_opts, scan_opts, photon_opts, g2_opts;
  CLI::App *spectrum =
      app.add_subcommand("spectrum", "Plasmon cross-section spectrum of the particle");
  add_common(spectrum, spectrum_opts);
  CLI::App *focus = app.add_subcommand("focus", "Focal intensity map and spot widths");
  add_common(focus, focus_opts);
  CLI::App *scan =
      app.add_subcommand("scan", "Noiseless transmission/reflection raster scans");
  add_common(scan, scan_opts);
  CLI::App *scan_photon =
      app.add_subcommand("scan-photon", "Photon-count raster images with a stochastic source");
  add_common(scan_photon, photon_opts);
  CLI::App *g2 = app.add_subcommand("g2", "Photon stream simulation and g2 histogram");
  add_common(g2, g2_opts);
  CLI::App *verify = app.add_subcommand("verify", "Run oracle cross-checks (JSON lines)");
  verify->group("");  // hidden

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }

  auto dispatch = [](CLI::App *cmd, CommonOpts &opts,
                     void (*fn)(const plasmoscan::RunConfig &, const std::string &)) -> int {
    if (!cmd->parsed()) return -1;
    try {
      const plasmoscan::RunConfig config = resolve_config(opts);
      if (opts.print_defaults) {
        std::cout << plasmoscan::dump_config_json(config);
        return 0;
      }
      fn(config, opts.out_dir);
      std::cout << "wrote " << opts.out_dir << "/manifest.json\n";
      return 0;
    } catch (const plasmoscan::ConfigError &e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    } catch (const std::range_error &e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    } catch (const std::exception &e) {
      std::cerr << "numerical error: " << e.what() << "\n";
      return 3;
    }
  };

  int rc;
  if ((rc = dispatch(spectrum, spectrum_opts, plasmoscan::run_spectrum)) >= 0) return rc;
  if ((rc = dispatch(focus, focus_opts, plasmoscan::run_focus)) >= 0) return rc;
  if ((rc = dispatch(scan, scan_opts, plasmoscan::run_scan)) >= 0) return rc;
  if ((rc = dispatch(scan_photon, photon_opts, plasmoscan::run_scan_photon)) >= 0) return rc;
  if ((rc = dispatch(g2, g2_opts, plasmoscan::run_g2)) >= 0) return rc;
  if (verify->parsed()) {
    try {
      return plasmoscan::run_verify(std::cout) ? 0 : 3;
    } catch (const std::exception &e) {
      std::cerr << "numerical error: " << e.what() << "\n";
      return 3;
    }
  }

  std::cout << app.help();
  return 0;
}
