#pragma once

// Conventional FDLP (LP of the DCT, fits the even-symmetrized squared
// Hilbert envelope over 2T) and complex FDLP (LP of the inverse DFT, fits
// the signal power over T).

#include "fdlp/linear_prediction.hpp"
#include "fdlp/types.hpp"

namespace fdlp {

LpModel conventional_fdlp(const Signal& x, Index order);
LpModel complex_fdlp(const Signal& x, Index order);

/// Biased autocorrelation of idft(x) for lags 0..max_lag, computed from x^2
/// without forming the full linear correlation of the complex sequence.
AutocorrSequence<Complex> complex_fdlp_autocorrelation(const VectorXd& x, Index max_lag);

/// Grid size that aligns the response with the source samples: 2N for
/// conventional models (symmetric span), N otherwise.
Index default_envelope_points(const LpModel& m);

/// Model response with a physical time axis. Values are in signal power
/// units: conventional envelopes estimate the squared Hilbert envelope,
/// complex envelopes estimate x^2. half=true keeps the first half of a
/// conventional response (the original, non-mirrored span).
Envelope envelope(const LpModel& m, Index n_points, bool half);
Envelope envelope(const LpModel& m, bool half = false);

// Fit diagnostics.

/// |analytic(x)|^2, the first half of the even-symmetrized target.
VectorXd conventional_fit_target(const Signal& x);
/// 0.5 |analytic(x)|^2, the smooth limit of x^2.
VectorXd complex_fit_target(const Signal& x);
/// ||values - target||_2 / ||target||_2
double relative_fit_error(const VectorXd& values, const VectorXd& target);

}  // namespace fdlp
