#pragma once

#include <cstdint>
#include <string>

#include "fdlp/types.hpp"

namespace fdlp {

/// Seeded speech-shaped test signal: pink-like noise (1/f power spectrum,
/// band-limited to 60 Hz - 0.45 fs) under a positive syllable-rate envelope.
/// Identical seeds give identical samples.
Signal speech_like_signal(double duration_s, double sample_rate, std::uint64_t seed);

struct TimingStats {
  Index order = 0;
  double mean_ms = 0.0;
  double std_ms = 0.0;
};

struct BenchReport {
  Index n_signals = 0;
  double duration_s = 0.0;
  TimingStats conventional;
  TimingStats complex;
  double reduction_pct = 0.0;  // 100 * (1 - complex.mean / conventional.mean)
  std::string host;
};

struct BenchOptions {
  Index n_signals = 5000;
  double duration_s = 1.5;
  Index conv_order = 300;
  Index cplx_order = 150;
  std::uint64_t seed = 1;
  double sample_rate = 16000.0;
  Index warmup = 5;
};

/// Paired single-threaded timing of conventional vs complex FDLP fits on
/// the same signals. Signal generation and warmup fits are not timed.
BenchReport run_benchmark(const BenchOptions& opts);

std::string to_json(const BenchReport& report);

std::string host_descriptor();

}  // namespace fdlp
