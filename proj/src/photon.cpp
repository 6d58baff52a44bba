#include "plasmoscan/photon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "plasmoscan/errors.hpp"
#include "plasmoscan/parallel.hpp"
#include "plasmoscan/rng.hpp"

namespace plasmoscan {

void EmitterModel::validate() const {
  if (!(excited_lifetime_ns > 0.0)) throw ConfigError("emitter: excited_lifetime must be > 0");
  if (!(pump_rate_per_ns >= 0.0)) throw ConfigError("emitter: pump_rate must be >= 0");
  if (emission_probability < 0.0 || emission_probability > 1.0)
    throw ConfigError("emitter: emission_probability must be in [0, 1]");
  if (mode == EmitterMode::Triggered && !(trigger_period_ns > 0.0))
    throw ConfigError("emitter: trigger_period must be > 0 in triggered mode");
}

void PhotonStream::validate() const {
  double prev = -1.0;
  for (double t : timestamps_ns) {
    if (!(t >= 0.0) || t > duration_ns)
      throw NumericalError("photon stream: timestamp outside [0, duration]");
    if (t <= prev) throw NumericalError("photon stream: timestamps not strictly increasing");
    prev = t;
  }
}

double g2_theory(const EmitterModel &model, double tau_ns) {
  model.validate();
  if (model.mode != EmitterMode::Cw)
    throw ConfigError("g2_theory: closed form exists for cw mode only; "
                      "use g2_estimate on a simulated stream for triggered sources");
  const double gamma = model.pump_rate_per_ns + 1.0 / model.excited_lifetime_ns;
  return 1.0 - std::exp(-gamma * std::abs(tau_ns));
}

PhotonStream simulate_stream(const EmitterModel &model, double duration_ns, double rate_scale,
                             std::uint64_t seed) {
  model.validate();
  if (!(duration_ns > 0.0)) throw ConfigError("simulate_stream: duration must be > 0");
  if (!(rate_scale > 0.0) || rate_scale > 1.0)
    throw ConfigError("simulate_stream: rate_scale must be in (0, 1]");

  PhotonStream stream;
  stream.duration_ns = duration_ns;
  stream.seed = seed;
  stream.source_label = model.mode == EmitterMode::Cw ? "cw-two-level" : "triggered-two-level";

  std::mt19937_64 rng = make_engine(splitmix64(seed));
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  auto detected = [&]() { return rate_scale >= 1.0 || uni(rng) < rate_scale; };

  if (model.mode == EmitterMode::Cw) {
    std::exponential_distribution<double> pump_wait(model.pump_rate_per_ns);
    std::exponential_distribution<double> decay_wait(1.0 / model.excited_lifetime_ns);
    if (!(model.pump_rate_per_ns > 0.0))
      throw ConfigError("simulate_stream: cw mode needs pump_rate > 0");
    double t = 0.0;
    while (true) {
      t += pump_wait(rng) + decay_wait(rng);
      if (t > duration_ns) break;
      if (detected()) stream.timestamps_ns.push_back(t);
    }
  } else {
    const double period = model.trigger_period_ns;
    const double tau1 = model.excited_lifetime_ns;
    // Emission delay truncated to the period keeps one photon per slot and
    // strict timestamp ordering.
    const double trunc = 1.0 - std::exp(-period / tau1);
    const long long ntrig = (long long)std::floor(duration_ns / period);
    for (long long n = 0; n < ntrig; ++n) {
      const bool emitted =
          model.emission_probability >= 1.0 || uni(rng) < model.emission_probability;
      if (!emitted) continue;
      const double delay = -tau1 * std::log1p(-uni(rng) * trunc);
      if (!detected()) continue;
      const double t = n * period + delay;
      if (t <= duration_ns) stream.timestamps_ns.push_back(t);
    }
  }
  return stream;
}

PhotonStream apply_loss(const PhotonStream &stream, double eta, std::uint64_t seed) {
  if (eta < 0.0 || eta > 1.0) throw ConfigError("apply_loss: eta must be in [0, 1]");
  PhotonStream out;
  out.duration_ns = stream.duration_ns;
  out.seed = seed;
  out.source_label = stream.source_label + "+loss";
  std::mt19937_64 rng = make_engine(splitmix64(seed ^ 0x10552ULL));
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (double t : stream.timestamps_ns)
    if (eta >= 1.0 || uni(rng) < eta) out.timestamps_ns.push_back(t);
  return out;
}

PhotonStream apply_detector_effects(const PhotonStream &stream, double dead_time_ns,
                                    double dark_rate_per_ns, std::uint64_t seed) {
  if (dead_time_ns < 0.0 || dark_rate_per_ns < 0.0)
    throw ConfigError("apply_detector_effects: dead time and dark rate must be >= 0");
  PhotonStream out;
  out.duration_ns = stream.duration_ns;
  out.seed = seed;
  out.source_label = stream.source_label + "+detector";

  std::vector<double> ts = stream.timestamps_ns;
  if (dark_rate_per_ns > 0.0) {
    std::mt19937_64 rng = make_engine(splitmix64(seed ^ 0xDA2CULL));
    std::exponential_distribution<double> wait(dark_rate_per_ns);
    for (double t = wait(rng); t <= stream.duration_ns; t += wait(rng)) ts.push_back(t);
    std::sort(ts.begin(), ts.end());
  }
  double last_accept = -1e300;
  for (double t : ts) {
    if (t - last_accept < dead_time_ns) continue;
    out.timestamps_ns.push_back(t);
    last_accept = t;
  }
  return out;
}

G2Histogram g2_estimate(const PhotonStream &stream, double bin_width_ns, double max_tau_ns) {
  if (stream.timestamps_ns.size() < 2)
    throw ConfigError("g2_estimate: stream needs at least 2 events");
  if (!(bin_width_ns > 0.0) || !(max_tau_ns > bin_width_ns))
    throw ConfigError("g2_estimate: need 0 < bin_width < max_tau");

  const std::vector<double> &ts = stream.timestamps_ns;
  const int nbins = int(std::floor(max_tau_ns / bin_width_ns));
  std::vector<long long> counts(nbins, 0);

  // Full correlation: every ordered pair with separation < max_tau.
  std::size_t j_start = 1;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = std::max(j_start, i + 1); j < ts.size(); ++j) {
      const double dt = ts[j] - ts[i];
      if (dt >= max_tau_ns) break;
      const int b = int(dt / bin_width_ns);
      if (b >= 0 && b < nbins) ++counts[b];
    }
  }

  const double total = double(ts.size());
  const double rate = total / stream.duration_ns;

  G2Histogram hist;
  hist.bin_width_ns = bin_width_ns;
  hist.tau_ns.resize(nbins);
  hist.g2.resize(nbins);
  hist.sigma.resize(nbins);
  for (int b = 0; b < nbins; ++b) {
    const double tau_c = (b + 0.5) * bin_width_ns;
    // Expected ordered-pair count for a Poisson process of the same rate,
    // with the finite-duration edge correction.
    const double norm = rate * total * bin_width_ns * (1.0 - tau_c / stream.duration_ns);
    hist.tau_ns[b] = tau_c;
    hist.g2[b] = counts[b] / norm;
    hist.sigma[b] = std::sqrt(double(std::max<long long>(counts[b], 1))) / norm;
  }
  return hist;
}

CountImage count_image(const ScanImage &expected, double dwell_ms, SourceModel source,
                       double loss_eta, double rate_per_s, std::uint64_t seed, int threads) {
  if (loss_eta < 0.0 || loss_eta > 1.0) throw ConfigError("count_image: eta must be in [0, 1]");
  if (!(dwell_ms > 0.0) || !(rate_per_s > 0.0))
    throw ConfigError("count_image: dwell and rate must be > 0");
  const double n_in_real = rate_per_s * dwell_ms * 1e-3;
  if (n_in_real > 4e15) throw ConfigError("count_image: rate x dwell overflows count budget");
  const long long n_in = (long long)std::llround(n_in_real);

  CountImage img;
  img.grid = expected.grid;
  img.channel = expected.channel;
  img.dwell_ms = dwell_ms;
  img.loss_eta = loss_eta;
  img.source = source;
  img.seed = seed;
  img.expected_signal = expected.pixels;
  img.counts.resize(expected.pixels.size());

  parallel_for(expected.pixels.size(), threads, [&](std::size_t idx) {
    std::mt19937_64 rng = make_engine(substream_seed(seed, idx));
    // Transmission-channel semantics: each source photon survives the optics
    // with probability η·signal. Signals slightly above 1 clamp to 1.
    const double p = std::clamp(loss_eta * expected.pixels[idx], 0.0, 1.0);
    if (source == SourceModel::Triggered) {
      if (p >= 1.0) {
        img.counts[idx] = n_in;
      } else if (p <= 0.0) {
        img.counts[idx] = 0;
      } else {
        std::binomial_distribution<long long> bin(n_in, p);
        img.counts[idx] = bin(rng);
      }
    } else {
      const double mean = n_in_real * p;
      if (mean <= 0.0) {
        img.counts[idx] = 0;
      } else {
        std::poisson_distribution<long long> poi(mean);
        img.counts[idx] = poi(rng);
      }
    }
  });
  return img;
}

double fano_factor(const std::vector<double> &samples) {
  if (samples.size() < 2) throw ConfigError("fano_factor: need at least 2 samples");
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= double(samples.size());
  if (mean == 0.0) throw std::domain_error("fano_factor: zero mean");
  double var = 0.0;
  for (double s : samples) var += (s - mean) * (s - mean);
  var /= double(samples.size() - 1);
  return var / mean;
}

double min_detectable_contrast(double n_photons, double fano, double snr_target) {
  if (fano < 0.0) throw std::domain_error("min_detectable_contrast: Fano factor must be >= 0");
  if (!(n_photons > 0.0)) throw std::domain_error("min_detectable_contrast: N must be > 0");
  if (!(snr_target >= 0.0)) throw std::domain_error("min_detectable_contrast: snr must be >= 0");
  return snr_target * std::sqrt(fano / n_photons);
}

}  // namespace plasmoscan
