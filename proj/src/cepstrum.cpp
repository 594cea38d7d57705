#include "fdlp/cepstrum.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fdlp/error.hpp"
#include "fft.hpp"

namespace fdlp {
namespace {

using WideComplex = std::complex<long double>;

WideComplex widen(Complex z) { return {z.real(), z.imag()}; }

}  // namespace

Cepstrum cepstral_recursion(const LpModel& m, Index n_coeffs) {
  if (n_coeffs < 1) throw ArgumentError("cepstral_recursion: need at least one coefficient");
  if (!(m.gain > 0.0)) throw DegenerateSignalError("cepstral_recursion: model gain must be > 0");

  const Index p = m.order();
  Cepstrum out;
  out.source_domain = m.domain;
  out.duration_s = m.duration_s;
  out.c = VectorXcd::Zero(n_coeffs);
  // Extended precision: high-order models have large alpha with heavy
  // cancellation between terms.
  std::vector<WideComplex> alpha(p), c(n_coeffs);
  for (Index k = 0; k < p; ++k) alpha[k] = widen(m.coeffs[k]);
  c[0] = std::log(static_cast<long double>(m.gain));
  for (Index n = 1; n < n_coeffs; ++n) {
    WideComplex acc = 0.0L;
    for (Index k = std::max<Index>(1, n - p); k < n; ++k) {
      acc += static_cast<long double>(k) * c[k] * alpha[n - k - 1];
    }
    c[n] = acc / static_cast<long double>(n) + (n <= p ? alpha[n - 1] : WideComplex(0.0L));
  }
  out.c = VectorXcd(n_coeffs);
  for (Index n = 0; n < n_coeffs; ++n) out.c[n] = Complex(static_cast<double>(c[n].real()), static_cast<double>(c[n].imag()));
  return out;
}

Cepstrum cepstrum_oracle_fft(const LpModel& m, Index grid) {
  if (grid < 8 * (m.order() + 1)) {
    throw ArgumentError("cepstrum_oracle_fft: grid " + std::to_string(grid) + " below 8 * (order + 1)");
  }
  if (!(m.gain > 0.0)) throw DegenerateSignalError("cepstrum_oracle_fft: model gain must be > 0");
  // Also rejects poles on the unit circle.
  (void)lp_power_response(m, grid);

  // A(e^{j tau}) by long-double Horner rather than an FFT: near its zeros A
  // is small and the FFT's absolute rounding would dominate log |A|.
  std::vector<WideComplex> a(grid);
  for (Index k = 0; k < grid; ++k) {
    const long double tau = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) / grid;
    const WideComplex w(std::cos(tau), -std::sin(tau));
    WideComplex acc = 0.0L;
    for (Index i = m.order(); i >= 1; --i) acc = (acc - widen(m.coeffs[i - 1])) * w;
    a[k] = acc + 1.0L;
  }
  std::vector<long double> phase(grid);
  phase[0] = std::arg(a[0]);
  for (Index k = 1; k < grid; ++k) {
    const long double step = std::arg(a[k] / a[k - 1]);
    if (std::abs(step) > 0.75L * std::numbers::pi_v<long double>) {
      throw ResolutionError("cepstrum_oracle_fft: phase of A jumps " + std::to_string(static_cast<double>(step)) +
                            " rad between grid points " + std::to_string(k - 1) + " and " +
                            std::to_string(k) + "; use a denser grid");
    }
    phase[k] = phase[k - 1] + step;
  }
  const double winding = static_cast<double>(phase[grid - 1] + std::arg(a[0] / a[grid - 1]) - phase[0]);
  if (std::abs(winding) > std::numbers::pi) {
    throw NumericError("cepstrum_oracle_fft: inverse filter is not minimum phase (winding " +
                       std::to_string(winding / (2.0 * std::numbers::pi)) + ")");
  }
  // log A has zero mean on the unit circle for a monic minimum-phase A; pick
  // the branch that satisfies it.
  long double mean_phase = 0.0L;
  for (long double ph : phase) mean_phase += ph;
  mean_phase /= static_cast<long double>(grid);
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  const long double branch = two_pi * std::round(mean_phase / two_pi);

  VectorXcd log_h(grid);
  const long double log_gain = std::log(static_cast<long double>(m.gain));
  for (Index k = 0; k < grid; ++k) {
    log_h[k] = Complex(static_cast<double>(log_gain - std::log(std::abs(a[k]))), static_cast<double>(branch - phase[k]));
  }
  const VectorXcd full = detail::ifft(log_h) / static_cast<double>(grid);

  Cepstrum out;
  out.source_domain = m.domain;
  out.duration_s = m.duration_s;
  out.c = full.head(grid / 2);
  return out;
}

Index default_cepstral_count(double duration_s) {
  return static_cast<Index>(std::ceil(30.0 * duration_s - 1e-9)) + 1;
}

ModulationSpectrum modulation_spectrum(const LpModel& m, Index n_coeffs) {
  if (!(m.duration_s > 0.0)) throw ArgumentError("modulation_spectrum: model has no duration");
  const Cepstrum cep = cepstral_recursion(m, n_coeffs);
  ModulationSpectrum out;
  out.magnitudes = cep.c.cwiseAbs();
  out.freqs_hz = VectorXd::LinSpaced(n_coeffs, 0.0, static_cast<double>(n_coeffs - 1)) / m.duration_s;
  return out;
}

ModulationSpectrum modulation_spectrum(const LpModel& m) {
  return modulation_spectrum(m, default_cepstral_count(m.duration_s));
}

ModulationSpectrum modulation_spectrum_direct(const LpModel& m, Index n_points) {
  if (!(m.duration_s > 0.0)) throw ArgumentError("modulation_spectrum_direct: model has no duration");
  const bool conventional = m.domain == ModelDomain::ConventionalFdlp;
  const VectorXd response = lp_power_response(m, n_points);
  const Index len = conventional ? n_points / 2 : n_points;
  const double span = conventional ? m.duration_s / 2.0 : m.duration_s;

  const VectorXd log_power = response.head(len).array().log();
  const VectorXcd spectrum = detail::fft_real(log_power) / static_cast<double>(len);
  const Index bins = len / 2 + 1;
  ModulationSpectrum out;
  out.magnitudes = spectrum.head(bins).cwiseAbs();
  out.magnitudes[0] *= 0.5;  // log power = 2 Re log H; non-DC bins already match |c|
  out.freqs_hz = VectorXd::LinSpaced(bins, 0.0, static_cast<double>(bins - 1)) / span;
  return out;
}

bool is_local_max(const VectorXd& magnitudes, Index i) {
  if (i <= 0 || i >= magnitudes.size() - 1) return false;
  return magnitudes[i] >= magnitudes[i - 1] && magnitudes[i] >= magnitudes[i + 1];
}

Index dominant_peak(const VectorXd& magnitudes) {
  Index best = -1;
  for (Index i = 1; i + 1 < magnitudes.size(); ++i) {
    if (is_local_max(magnitudes, i) && (best < 0 || magnitudes[i] > magnitudes[best])) best = i;
  }
  return best;
}

Index nearest_bin(const ModulationSpectrum& spec, double freq_hz) {
  Index best = 0;
  for (Index i = 1; i < spec.freqs_hz.size(); ++i) {
    if (std::abs(spec.freqs_hz[i] - freq_hz) < std::abs(spec.freqs_hz[best] - freq_hz)) best = i;
  }
  return best;
}

}  // namespace fdlp
