#pragma once

// Complex cepstrum of an all-pole model and the modulation spectrum read
// off its magnitudes.
//
// With A(z) = 1 - sum alpha_k z^-k, log H(z) = log G - log A(z) =
// sum_n c[n] z^-n, and for a minimum-phase A the coefficients follow
//   c[0] = log G,  c[n] = alpha_n + (1/n) sum_{k=1}^{n-1} k c[k] alpha_{n-k}.
// Cepstral bin f of a model spanning D seconds sits at f / D Hz.

#include "fdlp/linear_prediction.hpp"
#include "fdlp/types.hpp"

namespace fdlp {

struct Cepstrum {
  VectorXcd c;
  ModelDomain source_domain = ModelDomain::Raw;
  double duration_s = 0.0;
};

struct ModulationSpectrum {
  VectorXd magnitudes;
  VectorXd freqs_hz;
};

Cepstrum cepstral_recursion(const LpModel& m, Index n_coeffs);

/// Literal evaluation: log H sampled on `grid` points with continuous phase,
/// then an inverse DFT. Returns the causal half (grid / 2 coefficients).
/// Test oracle, not the production path.
Cepstrum cepstrum_oracle_fft(const LpModel& m, Index grid);

/// ceil(30 * duration_s) + 1: covers modulations up to 30 Hz.
Index default_cepstral_count(double duration_s);

ModulationSpectrum modulation_spectrum(const LpModel& m, Index n_coeffs);
ModulationSpectrum modulation_spectrum(const LpModel& m);

/// Two-transform baseline: response, log, forward DFT magnitude. Uses the
/// first half of the response for conventional models. Scaled so each bin
/// is comparable with |c[f]| from the cepstral path.
ModulationSpectrum modulation_spectrum_direct(const LpModel& m, Index n_points);

/// Index of the largest strict local maximum among bins [1, size-1), or -1.
Index dominant_peak(const VectorXd& magnitudes);
/// True when bin i is at least as large as both neighbours.
bool is_local_max(const VectorXd& magnitudes, Index i);
/// Nearest bin to a frequency on the spectrum's axis.
Index nearest_bin(const ModulationSpectrum& spec, double freq_hz);

}  // namespace fdlp
