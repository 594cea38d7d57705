#pragma once

// Transform and synthesis primitives shared by every FDLP operation.
//
// Both DFT directions use the unitary 1/sqrt(N) normalization, so
// idft(dft(x)) == x and Parseval holds without extra factors.

#include <vector>

#include "fdlp/types.hpp"

namespace fdlp {

enum class SequenceDomain { Time, Frequency, Dct };

struct ComplexSequence {
  VectorXcd values;
  SequenceDomain domain = SequenceDomain::Time;
};

VectorXcd dft(const VectorXcd& x);
VectorXcd idft(const VectorXcd& x);
VectorXcd dft(const VectorXd& x);
VectorXcd idft(const VectorXd& x);

/// Tagged variants: dft maps Time -> Frequency, idft maps Frequency -> Time.
ComplexSequence dft(const ComplexSequence& x);
ComplexSequence idft(const ComplexSequence& x);

/// Orthonormal DCT-II.
VectorXd dct2(const VectorXd& x);
inline VectorXd dct2(const Signal& x) { return dct2(x.samples); }

/// One-sided-spectrum analytic signal: DFT, zero the negative half, double
/// the positive half (DC and Nyquist untouched), IDFT. Real part == input.
VectorXcd analytic_signal(const VectorXd& x);
inline VectorXcd analytic_signal(const Signal& x) { return analytic_signal(x.samples); }

/// |analytic_signal(x)| on the signal's sample grid.
Envelope hilbert_envelope(const Signal& x);

enum class WindowMode { Periodic, Symmetric };

/// Raised-cosine (Hann) window. Periodic mode is COLA at 50% hop.
VectorXd hanning(Index n, WindowMode mode = WindowMode::Periodic);

struct AmComponent {
  double mod_freq_hz = 0.0;
  double depth = 0.0;
  double phase_deg = 0.0;
};

/// x(t) = (1 - sum_i depth_i cos(2 pi f_i t + phi_i)) sin(2 pi f_c t)
struct AmSignalSpec {
  double carrier_hz = 1000.0;
  std::vector<AmComponent> components;
  double duration_s = 1.0;
  double sample_rate = 8000.0;
};

/// Throws ValidationError when the spec cannot yield a positive envelope.
void validate(const AmSignalSpec& spec);

Signal synth_am(const AmSignalSpec& spec);

/// Deterministic factor (1 - sum depth_i cos(...)) evaluated at time t.
double am_envelope_factor(const AmSignalSpec& spec, double t);

/// max_k | |idft(x)[k]| - |dft(x)[k]| |
double verify_fourier_magnitude_identity(const VectorXcd& x);
double verify_fourier_magnitude_identity(const Signal& x);

/// max_k | |idft(x)[k]| - |dft(x)[(N-k) mod N]| |. This index-reversed form
/// is the identity that holds for arbitrary complex sequences.
double verify_reversed_magnitude_identity(const VectorXcd& x);

}  // namespace fdlp
