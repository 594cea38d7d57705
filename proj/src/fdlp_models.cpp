#include "fdlp/fdlp_models.hpp"

#include <cmath>
#include <string>

#include "fdlp/dsp_core.hpp"
#include "fdlp/error.hpp"
#include "fft.hpp"

namespace fdlp {
namespace {

void check_fit_args(const Signal& x, Index order, const char* op) {
  if (x.size() == 0) throw LengthError(std::string(op) + ": empty signal");
  if (order < 0 || order >= x.size()) {
    throw ArgumentError(std::string(op) + ": order " + std::to_string(order) + " must be in [0, " +
                        std::to_string(x.size()) + ")");
  }
  if (!(x.sample_rate > 0.0)) throw ArgumentError(std::string(op) + ": sample_rate must be > 0");
}

}  // namespace

LpModel conventional_fdlp(const Signal& x, Index order) {
  check_fit_args(x, order, "conventional_fdlp");
  const VectorXd coeffs = dct2(x.samples);
  const auto r = autocorrelate<double>(coeffs, order);
  if (r.zero_energy()) throw DegenerateSignalError("conventional_fdlp: zero-energy signal");
  LpModel m = levinson(r, order);
  m.domain = ModelDomain::ConventionalFdlp;
  m.source_len = x.size();
  m.duration_s = 2.0 * x.duration();
  return m;
}

AutocorrSequence<Complex> complex_fdlp_autocorrelation(const VectorXd& x, Index max_lag) {
  const Index n = x.size();
  if (n == 0) throw LengthError("complex_fdlp: empty signal");
  if (max_lag < 0 || max_lag >= n) throw ArgumentError("complex_fdlp: max_lag out of range");

  // The power spectrum of y = idft(x) is x^2, so the circular autocorrelation
  // of y is the inverse transform of x^2. Subtracting the wrapped products
  // turns it into the biased linear autocorrelation.
  const VectorXcd power_spectrum = detail::fft_real(x.cwiseAbs2());
  const VectorXcd y = detail::fft_real(x).conjugate() / std::sqrt(static_cast<double>(n));

  AutocorrSequence<Complex> out;
  out.r.resize(max_lag + 1);
  for (Index k = 0; k <= max_lag; ++k) {
    Complex acc = std::conj(power_spectrum[k]);
    for (Index i = 0; i < k; ++i) acc -= y[i] * std::conj(y[i - k + n]);
    out.r[k] = acc;
  }
  out.r[0] = out.r[0].real();
  return out;
}

LpModel complex_fdlp(const Signal& x, Index order) {
  check_fit_args(x, order, "complex_fdlp");
  const auto r = complex_fdlp_autocorrelation(x.samples, order);
  if (r.zero_energy()) throw DegenerateSignalError("complex_fdlp: zero-energy signal");
  LpModel m = levinson(r, order);
  m.domain = ModelDomain::ComplexFdlp;
  m.source_len = x.size();
  m.duration_s = x.duration();
  return m;
}

Index default_envelope_points(const LpModel& m) {
  return m.domain == ModelDomain::ConventionalFdlp ? 2 * m.source_len : m.source_len;
}

Envelope envelope(const LpModel& m, Index n_points, bool half) {
  if (m.source_len <= 0 || !(m.duration_s > 0.0)) {
    throw ArgumentError("envelope: model carries no source length / duration");
  }
  const bool conventional = m.domain == ModelDomain::ConventionalFdlp;
  if (half && !conventional) {
    throw ArgumentError("envelope: half=true needs a conventional (even-symmetric) model");
  }
  const VectorXd response = lp_power_response(m, n_points);
  const double scale = (conventional ? 2.0 : 1.0) / static_cast<double>(m.source_len);

  const Index count = half ? n_points / 2 : n_points;
  const double step = m.duration_s / static_cast<double>(n_points);
  Envelope env;
  env.values = response.head(count) * scale;
  env.time_axis = VectorXd::LinSpaced(count, 0.0, static_cast<double>(count - 1)) * step;
  env.symmetric = conventional && !half;
  return env;
}

Envelope envelope(const LpModel& m, bool half) {
  return envelope(m, default_envelope_points(m), half);
}

VectorXd conventional_fit_target(const Signal& x) {
  return analytic_signal(x.samples).cwiseAbs2();
}

VectorXd complex_fit_target(const Signal& x) {
  return 0.5 * analytic_signal(x.samples).cwiseAbs2();
}

double relative_fit_error(const VectorXd& values, const VectorXd& target) {
  if (values.size() != target.size()) throw LengthError("relative_fit_error: length mismatch");
  const double norm = target.norm();
  if (!(norm > 0.0)) throw DegenerateSignalError("relative_fit_error: zero target");
  return (values - target).norm() / norm;
}

}  // namespace fdlp
