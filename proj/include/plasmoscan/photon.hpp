#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plasmoscan/imaging.hpp"

namespace plasmoscan {

enum class EmitterMode { Cw, Triggered };

/// Two-level single-molecule source. The vibrational relaxation into the
/// emitting state is treated as instantaneous; pump_rate is the effective
/// rate into that state.
struct EmitterModel {
  double excited_lifetime_ns = 9.5;
  double pump_rate_per_ns = 0.05;
  EmitterMode mode = EmitterMode::Cw;
  double trigger_period_ns = 50.0;
  double emission_probability = 1.0;  // per trigger
  double zpl_linewidth_mhz = 17.0;    // informational only

  void validate() const;
};

struct PhotonStream {
  std::vector<double> timestamps_ns;  // strictly increasing, within [0, duration]
  double duration_ns = 0.0;
  std::string source_label;
  std::uint64_t seed = 0;

  void validate() const;
  double mean_rate_per_ns() const {
    return duration_ns > 0.0 ? timestamps_ns.size() / duration_ns : 0.0;
  }
};

/// cw two-level second-order correlation g²(τ) = 1 - exp(-(R + 1/τ₁)|τ|).
/// Triggered mode has no closed form here; use g2_estimate on a stream.
double g2_theory(const EmitterModel &model, double tau_ns);

/// Monte Carlo emission stream. cw: renewal process, inter-photon wait =
/// Exp(R) + Exp(1/τ₁). Triggered: at most one photon per period (probability
/// emission_probability, delay truncated-exponential within the period).
/// rate_scale in (0, 1] Bernoulli-thins the detected stream.
PhotonStream simulate_stream(const EmitterModel &model, double duration_ns, double rate_scale,
                             std::uint64_t seed);

/// Bernoulli loss channel applied to a stream (detection efficiency eta).
PhotonStream apply_loss(const PhotonStream &stream, double eta, std::uint64_t seed);

/// Detector imperfections, both default off: a non-paralyzable dead time
/// (events closer than dead_time_ns after an accepted one are dropped) and
/// Poissonian dark counts merged into the stream.
PhotonStream apply_detector_effects(const PhotonStream &stream, double dead_time_ns,
                                    double dark_rate_per_ns, std::uint64_t seed);

struct G2Histogram {
  std::vector<double> tau_ns;  // bin centers
  std::vector<double> g2;
  std::vector<double> sigma;   // per-bin statistical error
  double bin_width_ns = 0.0;
};

/// Full (start-stop free) normalized coincidence histogram over (0, max_tau].
G2Histogram g2_estimate(const PhotonStream &stream, double bin_width_ns, double max_tau_ns);

enum class SourceModel { Poisson, Triggered };

/// Stochastic photon-count image over an expected (normalized) scan image.
struct CountImage {
  ScanGridSpec grid;
  Channel channel = Channel::Transmission;
  double dwell_ms = 40.0;
  double loss_eta = 1.0;
  SourceModel source = SourceModel::Triggered;
  std::uint64_t seed = 0;
  std::vector<long long> counts;
  std::vector<double> expected_signal;  // copy of the generating image
};

/// Per pixel: N_in = rate·dwell source photons, each detected with
/// probability η·signal. Triggered source → Binomial counts; Poisson source
/// → Poisson counts with the same mean. Per-pixel RNG substreams keyed on
/// (seed, pixel) make results independent of the thread count.
CountImage count_image(const ScanImage &expected, double dwell_ms, SourceModel source,
                       double loss_eta, double rate_per_s, std::uint64_t seed,
                       int threads = 1);

/// Variance/mean of a sample of counts. Throws on zero mean or < 2 samples.
double fano_factor(const std::vector<double> &samples);

/// Smallest detectable contrast at a target SNR for N detected photons with
/// Fano factor F: c_min = snr·√(F/N). F = 1 is the shot-noise limit.
double min_detectable_contrast(double n_photons, double fano, double snr_target);

}  // namespace plasmoscan
