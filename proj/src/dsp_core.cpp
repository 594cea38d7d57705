#include "fdlp/dsp_core.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fdlp/error.hpp"
#include "fft.hpp"

namespace fdlp {
namespace {

void require_nonempty(Index n, const char* op) {
  if (n == 0) throw LengthError(std::string(op) + ": empty input");
}

}  // namespace

VectorXcd dft(const VectorXcd& x) {
  require_nonempty(x.size(), "dft");
  return detail::fft(x) / std::sqrt(static_cast<double>(x.size()));
}

VectorXcd idft(const VectorXcd& x) {
  require_nonempty(x.size(), "idft");
  return detail::ifft(x) / std::sqrt(static_cast<double>(x.size()));
}

VectorXcd dft(const VectorXd& x) {
  require_nonempty(x.size(), "dft");
  return detail::fft_real(x) / std::sqrt(static_cast<double>(x.size()));
}

VectorXcd idft(const VectorXd& x) {
  require_nonempty(x.size(), "idft");
  // For real x the inverse transform is the conjugate of the forward one.
  return (detail::fft_real(x) / std::sqrt(static_cast<double>(x.size()))).conjugate();
}

ComplexSequence dft(const ComplexSequence& x) {
  return {dft(x.values), SequenceDomain::Frequency};
}

ComplexSequence idft(const ComplexSequence& x) {
  return {idft(x.values), SequenceDomain::Time};
}

VectorXd dct2(const VectorXd& x) {
  const Index n = x.size();
  require_nonempty(n, "dct2");
  // Makhoul reordering: even samples ascending, odd samples descending.
  VectorXd v(n);
  for (Index i = 0; 2 * i < n; ++i) v[i] = x[2 * i];
  for (Index i = 0; 2 * i + 1 < n; ++i) v[n - 1 - i] = x[2 * i + 1];
  const VectorXcd spectrum = detail::fft_real(v);

  VectorXd out(n);
  const double dn = static_cast<double>(n);
  const double scale0 = std::sqrt(1.0 / dn);
  const double scale = std::sqrt(2.0 / dn);
  for (Index k = 0; k < n; ++k) {
    const Complex twiddle = std::polar(1.0, -std::numbers::pi * static_cast<double>(k) / (2.0 * dn));
    out[k] = (twiddle * spectrum[k]).real() * (k == 0 ? scale0 : scale);
  }
  return out;
}

VectorXcd analytic_signal(const VectorXd& x) {
  const Index n = x.size();
  require_nonempty(n, "analytic_signal");
  VectorXcd spectrum = detail::fft_real(x);
  const Index half = n / 2;
  for (Index k = 1; k < n; ++k) {
    if (k < (n + 1) / 2) {
      spectrum[k] *= 2.0;
    } else if (!(n % 2 == 0 && k == half)) {
      spectrum[k] = 0.0;
    }
  }
  return detail::ifft(spectrum) / static_cast<double>(n);
}

Envelope hilbert_envelope(const Signal& x) {
  Envelope env;
  env.values = analytic_signal(x.samples).cwiseAbs();
  env.time_axis = VectorXd::LinSpaced(x.size(), 0.0, static_cast<double>(x.size() - 1)) / x.sample_rate;
  env.symmetric = false;
  return env;
}

VectorXd hanning(Index n, WindowMode mode) {
  if (n < 2) throw ArgumentError("hanning: window length must be >= 2, got " + std::to_string(n));
  const double period = static_cast<double>(mode == WindowMode::Periodic ? n : n - 1);
  VectorXd w(n);
  for (Index i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / period);
  }
  if (mode == WindowMode::Symmetric) {
    w[0] = 0.0;
    w[n - 1] = 0.0;
  }
  return w;
}

void validate(const AmSignalSpec& spec) {
  if (!(spec.sample_rate > 0.0)) throw ValidationError("synth_am: sample_rate must be > 0");
  if (!(spec.duration_s > 0.0)) throw ValidationError("synth_am: duration_s must be > 0");
  if (!(spec.carrier_hz > 0.0) || spec.carrier_hz >= spec.sample_rate / 2.0) {
    throw ValidationError("synth_am: carrier must lie in (0, sample_rate/2)");
  }
  double depth_sum = 0.0;
  for (const auto& c : spec.components) {
    if (c.depth < 0.0) throw ValidationError("synth_am: modulation depth must be >= 0");
    if (!(c.mod_freq_hz > 0.0) || c.mod_freq_hz >= spec.carrier_hz) {
      throw ValidationError("synth_am: modulation frequency must lie in (0, carrier)");
    }
    depth_sum += c.depth;
  }
  if (depth_sum >= 1.0) {
    throw ValidationError("synth_am: sum of modulation depths must be < 1, got " + std::to_string(depth_sum));
  }
}

double am_envelope_factor(const AmSignalSpec& spec, double t) {
  double factor = 1.0;
  for (const auto& c : spec.components) {
    const double phase = c.phase_deg * std::numbers::pi / 180.0;
    factor -= c.depth * std::cos(2.0 * std::numbers::pi * c.mod_freq_hz * t + phase);
  }
  return factor;
}

Signal synth_am(const AmSignalSpec& spec) {
  validate(spec);
  const auto n = static_cast<Index>(std::llround(spec.duration_s * spec.sample_rate));
  Signal out;
  out.sample_rate = spec.sample_rate;
  out.samples.resize(n);
  for (Index i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / spec.sample_rate;
    out.samples[i] = am_envelope_factor(spec, t) * std::sin(2.0 * std::numbers::pi * spec.carrier_hz * t);
  }
  return out;
}

double verify_fourier_magnitude_identity(const VectorXcd& x) {
  const VectorXcd inverse = idft(x);
  const VectorXcd forward = dft(x);
  return (inverse.cwiseAbs() - forward.cwiseAbs()).cwiseAbs().maxCoeff();
}

double verify_fourier_magnitude_identity(const Signal& x) {
  return verify_fourier_magnitude_identity(VectorXcd(x.samples.cast<Complex>()));
}

double verify_reversed_magnitude_identity(const VectorXcd& x) {
  const VectorXcd inverse = idft(x);
  const VectorXcd forward = dft(x);
  const Index n = x.size();
  double worst = 0.0;
  for (Index k = 0; k < n; ++k) {
    worst = std::max(worst, std::abs(std::abs(inverse[k]) - std::abs(forward[(n - k) % n])));
  }
  return worst;
}

}  // namespace fdlp
