#include "fdlp/linear_prediction.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fdlp/error.hpp"
#include "fft.hpp"

namespace fdlp {
namespace {

double real_part(double v) { return v; }
double real_part(const Complex& v) { return v.real(); }
double conj_of(double v) { return v; }
Complex conj_of(const Complex& v) { return std::conj(v); }

// Lag counts above this go through the FFT; below it the dot-product loop
// is cheaper for the signal lengths FDLP sees (1-2 s at 8-16 kHz).
bool prefer_fft(Index n, Index max_lag) {
  if (max_lag < 48) return false;
  const Index nfft = next_fast_size(n + max_lag);
  const double fft_cost = 6.0 * static_cast<double>(nfft) * std::log2(static_cast<double>(nfft));
  return static_cast<double>(n) * static_cast<double>(max_lag + 1) > fft_cost;
}

template <typename Scalar>
Vector<Scalar> circular_autocorr_head(const Vector<Scalar>& x, Index nfft, Index count);

template <>
Vector<double> circular_autocorr_head<double>(const Vector<double>& x, Index nfft, Index count) {
  VectorXcd spectrum = detail::fft_real(x, nfft);
  for (Index k = 0; k < nfft; ++k) spectrum[k] = std::norm(spectrum[k]);
  const VectorXd rho = detail::ifft_real(spectrum, nfft) / static_cast<double>(nfft);
  return rho.head(count);
}

template <>
Vector<Complex> circular_autocorr_head<Complex>(const Vector<Complex>& x, Index nfft, Index count) {
  VectorXcd padded = VectorXcd::Zero(nfft);
  padded.head(x.size()) = x;
  VectorXcd spectrum = detail::fft(padded);
  for (Index k = 0; k < nfft; ++k) spectrum[k] = std::norm(spectrum[k]);
  const VectorXcd rho = detail::ifft(spectrum) / static_cast<double>(nfft);
  return rho.head(count);
}

}  // namespace

Index next_fast_size(Index n) {
  if (n <= 1) return 1;
  for (Index m = n;; ++m) {
    Index v = m;
    for (Index f : {2, 3, 5}) {
      while (v % f == 0) v /= f;
    }
    if (v == 1) return m;
  }
}

template <typename Scalar>
double AutocorrSequence<Scalar>::energy() const {
  return r.size() == 0 ? 0.0 : real_part(r[0]);
}

template <typename Scalar>
AutocorrSequence<Scalar> autocorrelate_direct(const Vector<Scalar>& x, Index max_lag) {
  const Index n = x.size();
  if (n == 0) throw LengthError("autocorrelate: empty input");
  if (max_lag < 0 || max_lag >= n) {
    throw ArgumentError("autocorrelate: max_lag " + std::to_string(max_lag) +
                        " must be in [0, " + std::to_string(n) + ")");
  }
  AutocorrSequence<Scalar> out;
  out.r.resize(max_lag + 1);
  for (Index k = 0; k <= max_lag; ++k) {
    // Eigen's dot conjugates its left operand: sum conj(x[i]) x[i+k].
    out.r[k] = x.head(n - k).dot(x.tail(n - k));
  }
  return out;
}

template <typename Scalar>
AutocorrSequence<Scalar> autocorrelate(const Vector<Scalar>& x, Index max_lag) {
  const Index n = x.size();
  if (n == 0) throw LengthError("autocorrelate: empty input");
  if (max_lag < 0 || max_lag >= n) {
    throw ArgumentError("autocorrelate: max_lag " + std::to_string(max_lag) +
                        " must be in [0, " + std::to_string(n) + ")");
  }
  if (!prefer_fft(n, max_lag)) return autocorrelate_direct(x, max_lag);

  Index nfft = next_fast_size(n + max_lag);
  while (nfft % 4 != 0) nfft = next_fast_size(nfft + 1);
  AutocorrSequence<Scalar> out;
  out.r = circular_autocorr_head<Scalar>(x, nfft, max_lag + 1);
  out.r[0] = real_part(out.r[0]);
  return out;
}

template <typename Scalar>
LevinsonTrace<Scalar> levinson_recursion(const AutocorrSequence<Scalar>& r, Index order,
                                         FailurePolicy policy) {
  if (order < 0) throw ArgumentError("levinson: negative order");
  if (order > r.max_lag()) {
    throw ArgumentError("levinson: order " + std::to_string(order) + " exceeds max lag " +
                        std::to_string(r.max_lag()));
  }
  const double r0 = r.energy();
  if (!(r0 > 0.0) || !std::isfinite(r0)) {
    throw DegenerateSignalError("levinson: zero-energy (degenerate) signal, r[0] = " + std::to_string(r0));
  }

  LevinsonTrace<Scalar> trace;
  trace.errors.reserve(order + 1);
  trace.errors.push_back(r0);
  Vector<Scalar> alpha = Vector<Scalar>::Zero(order);
  Vector<Scalar> previous(order);
  Vector<Scalar> kappa = Vector<Scalar>::Zero(order);
  double error = r0;
  Index reached = 0;

  for (Index m = 1; m <= order; ++m) {
    Scalar acc = r.r[m];
    for (Index k = 1; k < m; ++k) acc -= alpha[k - 1] * r.r[m - k];
    const Scalar reflection = acc / error;
    const double next_error = error * (1.0 - std::norm(reflection));
    if (!(next_error > 0.0) || !std::isfinite(next_error)) {
      if (policy == FailurePolicy::Truncate) {
        trace.truncated = true;
        break;
      }
      throw IllConditionedError("levinson: autocorrelation not positive definite at order " +
                                    std::to_string(m),
                                static_cast<std::size_t>(m));
    }
    previous.head(m - 1) = alpha.head(m - 1);
    for (Index k = 1; k < m; ++k) alpha[k - 1] = previous[k - 1] - reflection * conj_of(previous[m - k - 1]);
    alpha[m - 1] = reflection;
    kappa[m - 1] = reflection;
    error = next_error;
    trace.errors.push_back(error);
    reached = m;
  }

  trace.coeffs = alpha.head(reached);
  trace.reflection = kappa.head(reached);
  return trace;
}

template <typename Scalar>
LpModel levinson(const AutocorrSequence<Scalar>& r, Index order) {
  const auto trace = levinson_recursion(r, order, FailurePolicy::Throw);
  LpModel m;
  m.coeffs = trace.coeffs.template cast<Complex>();
  m.gain = std::sqrt(trace.final_error());
  return m;
}

VectorXcd inverse_filter_response(const LpModel& m, Index n_points) {
  if (n_points < m.order() + 1) {
    throw ArgumentError("lp_power_response: n_points " + std::to_string(n_points) +
                        " must be >= order + 1 = " + std::to_string(m.order() + 1));
  }
  VectorXcd a(m.order() + 1);
  a[0] = 1.0;
  a.tail(m.order()) = -m.coeffs;
  return detail::fft_padded(a, n_points);
}

VectorXd lp_power_response(const LpModel& m, Index n_points) {
  const VectorXcd a = inverse_filter_response(m, n_points);
  const double g2 = m.gain * m.gain;
  VectorXd out(n_points);
  for (Index k = 0; k < n_points; ++k) {
    out[k] = g2 / std::norm(a[k]);
    if (!std::isfinite(out[k])) {
      throw InstabilityError("lp_power_response: non-finite response at grid point " + std::to_string(k) +
                             " (inverse filter has a zero on the unit circle)");
    }
  }
  return out;
}

VectorXcd poles(const LpModel& m, const RootOptions& opts) {
  const Index p = m.order();
  if (p < 1) throw ArgumentError("poles: model order must be >= 1");

  // Descending-power coefficients of z^p - alpha_1 z^{p-1} - ... - alpha_p.
  VectorXcd c(p + 1);
  c[0] = 1.0;
  c.tail(p) = -m.coeffs;
  VectorXd abs_c = c.cwiseAbs();

  auto evaluate = [&](Complex z, Complex& value, Complex& deriv) {
    value = c[0];
    deriv = 0.0;
    for (Index k = 1; k <= p; ++k) {
      deriv = deriv * z + value;
      value = value * z + c[k];
    }
  };
  auto relative_residual = [&](Complex z) {
    Complex value, deriv;
    evaluate(z, value, deriv);
    double scale = 0.0;
    const double az = std::abs(z);
    for (Index k = 0; k <= p; ++k) scale = scale * az + abs_c[k];
    return std::abs(value) / scale;
  };

  // Start on a circle sized by the geometric mean of the root magnitudes.
  const double radius = std::max(std::pow(std::abs(c[p]) + 1e-300, 1.0 / static_cast<double>(p)), 1e-3);
  VectorXcd z(p);
  for (Index i = 0; i < p; ++i) {
    z[i] = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(p) + 0.4);
  }

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    double largest_step = 0.0;
    for (Index i = 0; i < p; ++i) {
      Complex value, deriv;
      evaluate(z[i], value, deriv);
      if (value == Complex(0.0)) continue;
      const Complex newton = value / deriv;
      Complex repulsion = 0.0;
      for (Index j = 0; j < p; ++j) {
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      }
      const Complex step = newton / (1.0 - newton * repulsion);
      if (std::isfinite(step.real()) && std::isfinite(step.imag())) {
        z[i] -= step;
        largest_step = std::max(largest_step, std::abs(step) / std::max(1.0, std::abs(z[i])));
      }
    }
    if (largest_step < 1e-15) break;
  }

  double worst = 0.0;
  for (Index i = 0; i < p; ++i) worst = std::max(worst, relative_residual(z[i]));
  if (!(worst < opts.tolerance)) {
    throw NumericError("poles: root iteration did not converge, relative residual " + std::to_string(worst));
  }
  return z;
}

template struct AutocorrSequence<double>;
template struct AutocorrSequence<Complex>;
template AutocorrSequence<double> autocorrelate(const Vector<double>&, Index);
template AutocorrSequence<Complex> autocorrelate(const Vector<Complex>&, Index);
template AutocorrSequence<double> autocorrelate_direct(const Vector<double>&, Index);
template AutocorrSequence<Complex> autocorrelate_direct(const Vector<Complex>&, Index);
template LevinsonTrace<double> levinson_recursion(const AutocorrSequence<double>&, Index, FailurePolicy);
template LevinsonTrace<Complex> levinson_recursion(const AutocorrSequence<Complex>&, Index, FailurePolicy);
template LpModel levinson(const AutocorrSequence<double>&, Index);
template LpModel levinson(const AutocorrSequence<Complex>&, Index);

}  // namespace fdlp
