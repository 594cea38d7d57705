#pragma once

// Sub-band FDLP spectrogram.
//
// Each Hann-windowed long frame is taken to the (one-sided) inverse-DFT
// domain, split into mel-spaced cosine-tapered sub-bands, and each band is
// modelled with complex FDLP. The band's all-pole time response estimates
// its power envelope over the frame. Envelopes are overlap-added across
// frames in linear power, normalized by the summed squared analysis window,
// converted to log power and averaged down to the output frame rate.

#include <string>
#include <vector>

#include <Eigen/Core>

#include "fdlp/linear_prediction.hpp"
#include "fdlp/types.hpp"

namespace fdlp {

struct SpectrogramConfig {
  Index n_bands = 50;
  Index lp_order = 80;
  double window_s = 1.5;
  double hop_s = 0.75;
  double frame_rate_hz = 100.0;
  double sample_rate_hz = 16000.0;
  /// Worker threads for the per-band map; 0 picks hardware concurrency.
  unsigned threads = 0;
  /// Overlap-add power envelopes, then take the log (default). When false
  /// each frame's envelope is logged first and the logs are averaged.
  bool log_after_overlap_add = true;
};

void validate(const SpectrogramConfig& cfg);

struct BandWindow {
  Index first_bin = 0;
  VectorXd weights;  // weights for bins first_bin .. first_bin + size - 1
  double center_hz = 0.0;

  Index support() const { return weights.size(); }
};

/// Mel-spaced raised-cosine windows over n_bins one-sided bins spanning
/// 0 .. sample_rate/2. Neighbouring bands overlap by half; the outer halves
/// of the first and last bands are flat, so the weights sum to one on
/// every bin.
std::vector<BandWindow> mel_band_windows(const SpectrogramConfig& cfg, Index n_bins);

struct FrameSet {
  std::vector<VectorXd> frames;  // windowed, zero-padded at the tail
  std::vector<Index> starts;     // first sample of each frame
  Index frame_length = 0;
  Index hop = 0;
  VectorXd window;
};

/// Frame count: max(1, floor(dur/hop), ceil((dur - window)/hop) + 1).
Index frame_count(Index n_samples, Index frame_length, Index hop);

FrameSet frame_signal(const Signal& x, const SpectrogramConfig& cfg);

/// Complex FDLP of one band of a frame. `frame_spectrum` is the full-length
/// unitary inverse DFT of the windowed frame. A band narrower than order+1
/// bins gets its order clamped to support-1 and `order_clamped` set.
LpModel band_complex_fdlp(const VectorXcd& frame_spectrum, const BandWindow& band, Index order,
                          double frame_duration_s);

struct FeatureMatrix {
  Eigen::MatrixXd data;  // frames x bands, natural-log power
  double frame_rate_hz = 100.0;
  double sample_rate_hz = 16000.0;
  VectorXd band_centers_hz;
  std::string file_id;
  double duration_s = 0.0;

  Index frames() const { return data.rows(); }
  Index bands() const { return data.cols(); }
};

/// ceil(duration * frame_rate) output frames.
Index output_frame_count(Index n_samples, double sample_rate, double frame_rate);

FeatureMatrix fdlp_spectrogram(const Signal& x, const SpectrogramConfig& cfg = {});

}  // namespace fdlp
