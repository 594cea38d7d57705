#include "fdlp/spectrogram.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <numbers>
#include <string>
#include <thread>

#include "fdlp/dsp_core.hpp"
#include "fdlp/error.hpp"

namespace fdlp {
namespace {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

constexpr double kWeightFloor = 1e-12;
// Normalization floor for the summed squared window, relative to its peak.
constexpr double kOlaFloor = 1e-3;

Index samples_for(double seconds, double rate) {
  return static_cast<Index>(std::llround(seconds * rate));
}

}  // namespace

void validate(const SpectrogramConfig& cfg) {
  if (cfg.n_bands < 1) throw ArgumentError("spectrogram: n_bands must be >= 1");
  if (cfg.lp_order < 0) throw ArgumentError("spectrogram: lp_order must be >= 0");
  if (!(cfg.window_s > 0.0)) throw ArgumentError("spectrogram: window_s must be > 0");
  if (!(cfg.hop_s > 0.0) || cfg.hop_s > cfg.window_s) {
    throw ArgumentError("spectrogram: hop_s must be in (0, window_s]");
  }
  if (!(cfg.frame_rate_hz > 0.0)) throw ArgumentError("spectrogram: frame_rate_hz must be > 0");
  if (!(cfg.sample_rate_hz > 0.0)) throw ArgumentError("spectrogram: sample_rate_hz must be > 0");
}

std::vector<BandWindow> mel_band_windows(const SpectrogramConfig& cfg, Index n_bins) {
  const Index n_bands = cfg.n_bands;
  if (n_bands < 1) throw ArgumentError("mel_band_windows: n_bands must be >= 1");
  if (n_bins < 2 * n_bands) {
    throw ArgumentError("mel_band_windows: " + std::to_string(n_bins) + " bins cannot hold " +
                        std::to_string(n_bands) + " bands (need >= 2 per band)");
  }
  const double nyquist = cfg.sample_rate_hz / 2.0;
  const double mel_top = hz_to_mel(nyquist);
  const double spacing = mel_top / static_cast<double>(n_bands + 1);
  VectorXd bin_mel(n_bins);
  for (Index k = 0; k < n_bins; ++k) {
    bin_mel[k] = hz_to_mel(nyquist * static_cast<double>(k) / static_cast<double>(n_bins - 1));
  }

  std::vector<BandWindow> bands;
  bands.reserve(n_bands);
  for (Index b = 0; b < n_bands; ++b) {
    const double lower = spacing * static_cast<double>(b);
    const double center = spacing * static_cast<double>(b + 1);
    const double upper = spacing * static_cast<double>(b + 2);
    const bool flat_low = b == 0;
    const bool flat_high = b == n_bands - 1;

    VectorXd weights = VectorXd::Zero(n_bins);
    for (Index k = 0; k < n_bins; ++k) {
      const double mu = bin_mel[k];
      if (mu <= center) {
        if (flat_low) {
          weights[k] = 1.0;
        } else if (mu >= lower) {
          const double s = std::sin(0.5 * std::numbers::pi * (mu - lower) / spacing);
          weights[k] = s * s;
        }
      } else {
        if (flat_high) {
          weights[k] = 1.0;
        } else if (mu <= upper) {
          const double c = std::cos(0.5 * std::numbers::pi * (mu - center) / spacing);
          weights[k] = c * c;
        }
      }
    }
    Index first = 0;
    while (first < n_bins && weights[first] <= kWeightFloor) ++first;
    Index last = n_bins - 1;
    while (last > first && weights[last] <= kWeightFloor) --last;
    if (first >= n_bins) throw ArgumentError("mel_band_windows: band " + std::to_string(b) + " has no bins");

    BandWindow band;
    band.first_bin = first;
    band.weights = weights.segment(first, last - first + 1);
    band.center_hz = mel_to_hz(center);
    bands.push_back(std::move(band));
  }
  return bands;
}

Index frame_count(Index n_samples, Index frame_length, Index hop) {
  Index count = std::max<Index>(1, n_samples / hop);
  if (n_samples > frame_length) {
    count = std::max(count, (n_samples - frame_length + hop - 1) / hop + 1);
  }
  return count;
}

FrameSet frame_signal(const Signal& x, const SpectrogramConfig& cfg) {
  validate(cfg);
  if (x.size() == 0) throw LengthError("frame_signal: empty signal");
  FrameSet out;
  out.frame_length = samples_for(cfg.window_s, x.sample_rate);
  out.hop = samples_for(cfg.hop_s, x.sample_rate);
  if (out.frame_length < 2 || out.hop < 1) throw ArgumentError("frame_signal: window or hop shorter than one sample");
  out.window = hanning(out.frame_length, WindowMode::Periodic);

  const Index count = frame_count(x.size(), out.frame_length, out.hop);
  out.frames.reserve(count);
  out.starts.reserve(count);
  for (Index f = 0; f < count; ++f) {
    const Index start = f * out.hop;
    VectorXd frame = VectorXd::Zero(out.frame_length);
    const Index available = std::clamp<Index>(x.size() - start, 0, out.frame_length);
    frame.head(available) = x.samples.segment(start, available).cwiseProduct(out.window.head(available));
    out.frames.push_back(std::move(frame));
    out.starts.push_back(start);
  }
  return out;
}

LpModel band_complex_fdlp(const VectorXcd& frame_spectrum, const BandWindow& band, Index order,
                          double frame_duration_s) {
  const Index support = band.support();
  if (support < 1 || band.first_bin < 0 || band.first_bin + support > frame_spectrum.size()) {
    throw ArgumentError("band_complex_fdlp: band window does not fit the frame spectrum");
  }
  if (order < 0) throw ArgumentError("band_complex_fdlp: negative order");
  const VectorXcd coeffs = frame_spectrum.segment(band.first_bin, support).cwiseProduct(band.weights.cast<Complex>());

  const Index fitted = std::min(order, support - 1);
  const auto r = autocorrelate<Complex>(coeffs, fitted);
  if (r.zero_energy()) throw DegenerateSignalError("band_complex_fdlp: band carries no energy");
  const auto trace = levinson_recursion(r, fitted, FailurePolicy::Truncate);

  LpModel m;
  m.coeffs = trace.coeffs;
  m.gain = std::sqrt(trace.final_error());
  m.domain = ModelDomain::ComplexFdlp;
  m.source_len = frame_spectrum.size();
  m.duration_s = frame_duration_s;
  m.order_clamped = fitted < order || trace.truncated;
  return m;
}

Index output_frame_count(Index n_samples, double sample_rate, double frame_rate) {
  const double frames = static_cast<double>(n_samples) / sample_rate * frame_rate;
  return std::max<Index>(1, static_cast<Index>(std::ceil(frames - 1e-9)));
}

FeatureMatrix fdlp_spectrogram(const Signal& x, const SpectrogramConfig& cfg) {
  validate(cfg);
  if (x.size() == 0) throw LengthError("fdlp_spectrogram: empty signal");
  if (std::abs(x.sample_rate - cfg.sample_rate_hz) > 1e-6) {
    throw ArgumentError("fdlp_spectrogram: signal sample rate " + std::to_string(x.sample_rate) +
                        " does not match config " + std::to_string(cfg.sample_rate_hz));
  }

  const FrameSet framed = frame_signal(x, cfg);
  const Index length = framed.frame_length;
  if (cfg.lp_order * cfg.n_bands >= length) {
    throw ArgumentError("fdlp_spectrogram: lp_order " + std::to_string(cfg.lp_order) +
                        " must be below window samples / n_bands = " + std::to_string(length / cfg.n_bands));
  }
  const double frame_duration = static_cast<double>(length) / x.sample_rate;

  // A padded tail frame is fit only over the samples it actually holds:
  // an envelope that is exactly zero over part of the span makes the
  // normal equations nearly singular.
  const Index n = x.size();
  const Index min_fit = std::min(length, 4 * cfg.n_bands);
  std::vector<Index> fit_len(framed.frames.size());
  std::vector<VectorXcd> spectra;
  spectra.reserve(framed.frames.size());
  std::map<Index, std::vector<BandWindow>> band_sets;
  for (std::size_t f = 0; f < framed.frames.size(); ++f) {
    fit_len[f] = std::clamp(n - framed.starts[f], min_fit, length);
    spectra.push_back(idft(VectorXd(framed.frames[f].head(fit_len[f]))));
    if (!band_sets.count(fit_len[f])) band_sets[fit_len[f]] = mel_band_windows(cfg, fit_len[f] / 2 + 1);
  }
  const auto& bands = band_sets.at(fit_len[0]);
  const Index n_bands = static_cast<Index>(bands.size());

  const Index span = framed.starts.back() + length;
  const VectorXd window_sq = framed.window.cwiseAbs2();
  VectorXd weight_sum = VectorXd::Zero(span);
  for (Index start : framed.starts) weight_sum.segment(start, length) += window_sq;
  const double floor = kOlaFloor * weight_sum.maxCoeff();
  const VectorXd norm = weight_sum.cwiseMax(floor);

  const Index n_out = output_frame_count(n, x.sample_rate, cfg.frame_rate_hz);
  std::vector<Index> edges(n_out + 1);
  for (Index i = 0; i <= n_out; ++i) {
    const double pos = static_cast<double>(i) * x.sample_rate / cfg.frame_rate_hz;
    edges[i] = std::min<Index>(n, static_cast<Index>(std::floor(pos + 1e-9)));
  }

  FeatureMatrix out;
  out.data.resize(n_out, n_bands);
  out.frame_rate_hz = cfg.frame_rate_hz;
  out.sample_rate_hz = x.sample_rate;
  out.duration_s = x.duration();
  out.band_centers_hz.resize(n_bands);
  for (Index b = 0; b < n_bands; ++b) out.band_centers_hz[b] = bands[b].center_hz;

  // One job per band; frames inside a band are reduced in order, so the
  // result does not depend on how jobs are scheduled.
  auto run_band = [&](Index b) {
    VectorXd acc = VectorXd::Zero(span);
    for (std::size_t f = 0; f < spectra.size(); ++f) {
      LpModel model;
      try {
        model = band_complex_fdlp(spectra[f], band_sets.at(fit_len[f])[b], cfg.lp_order,
                                  frame_duration * static_cast<double>(fit_len[f]) / static_cast<double>(length));
      } catch (const DegenerateSignalError& e) {
        throw DegenerateSignalError(std::string(e.what()) + " (analysis frame " + std::to_string(f) +
                                    ", band " + std::to_string(b) + ")");
      }
      const Index m = fit_len[f];
      const VectorXd env = lp_power_response(model, m) / static_cast<double>(m);
      const Index start = framed.starts[f];
      if (cfg.log_after_overlap_add) {
        acc.segment(start, m) += env;
      } else {
        const VectorXd local_norm = window_sq.head(m).cwiseMax(floor);
        acc.segment(start, m).array() += window_sq.head(m).array() * (env.array() / local_norm.array()).log();
      }
    }
    VectorXd value = acc.head(n).cwiseQuotient(norm.head(n));
    if (cfg.log_after_overlap_add) value = value.array().log();

    for (Index i = 0; i < n_out; ++i) {
      const Index lo = edges[i];
      const Index hi = std::max(edges[i + 1], lo + 1);
      const double cell = value.segment(lo, std::min(hi, n) - lo).mean();
      if (!std::isfinite(cell)) {
        throw NumericError("fdlp_spectrogram: non-finite feature at frame " + std::to_string(i) + ", band " +
                           std::to_string(b));
      }
      out.data(i, b) = cell;
    }
  };

  unsigned workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(n_bands));
  std::vector<std::exception_ptr> failures(n_bands);
  if (workers <= 1) {
    for (Index b = 0; b < n_bands; ++b) run_band(b);
  } else {
    std::atomic<Index> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (Index b = next++; b < n_bands; b = next++) {
          try {
            run_band(b);
          } catch (...) {
            failures[b] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& failure : failures) {
      if (failure) std::rethrow_exception(failure);
    }
  }
  return out;
}

}  // namespace fdlp
