#include "fdlp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fdlp/cepstrum.hpp"
#include "fdlp/dsp_core.hpp"
#include "fdlp/fdlp_models.hpp"

namespace fdlp {
namespace {

Index random_length(std::mt19937_64& rng) {
  std::uniform_int_distribution<Index> len(64, 4096);
  return len(rng);
}

VectorXcd random_complex(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  VectorXcd x(n);
  for (Index i = 0; i < n; ++i) x[i] = Complex(g(rng), g(rng));
  return x;
}

VectorXd random_real(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  VectorXd x(n);
  for (Index i = 0; i < n; ++i) x[i] = g(rng);
  return x;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

CheckResult make(std::string name, double measured, double tol) {
  CheckResult r;
  r.name = std::move(name);
  r.measured = measured;
  r.threshold = tol;
  r.passed = measured < tol;
  r.detail = "max deviation " + fmt(measured) + " (limit " + fmt(tol) + ")";
  return r;
}

}  // namespace

LpModel model_from_reflections(const VectorXcd& reflections, double gain) {
  const Index p = reflections.size();
  VectorXcd alpha = VectorXcd::Zero(p);
  VectorXcd previous(p);
  for (Index m = 1; m <= p; ++m) {
    previous.head(m - 1) = alpha.head(m - 1);
    const Complex k = reflections[m - 1];
    for (Index i = 1; i < m; ++i) alpha[i - 1] = previous[i - 1] - k * std::conj(previous[m - i - 1]);
    alpha[m - 1] = k;
  }
  LpModel model;
  model.coeffs = alpha;
  model.gain = gain;
  model.duration_s = 1.0;
  model.source_len = std::max<Index>(p + 1, 1);
  return model;
}

LpModel model_from_poles(const VectorXcd& roots, double gain) {
  // prod (1 - z_i z^-1) = 1 - sum alpha_k z^-k
  VectorXcd poly = VectorXcd::Zero(roots.size() + 1);
  poly[0] = 1.0;
  for (Index i = 0; i < roots.size(); ++i) {
    for (Index k = i + 1; k >= 1; --k) poly[k] -= roots[i] * poly[k - 1];
  }
  LpModel model;
  model.coeffs = -poly.tail(roots.size());
  model.gain = gain;
  model.duration_s = 1.0;
  model.source_len = roots.size() + 1;
  return model;
}

LpModel random_stable_model(Index order, bool complex_valued, std::mt19937_64& rng, double max_radius) {
  std::uniform_real_distribution<double> radius(0.0, max_radius);
  std::uniform_real_distribution<double> angle(-3.141592653589793, 3.141592653589793);
  std::uniform_real_distribution<double> gain(0.5, 2.0);
  VectorXcd roots(order);
  Index i = 0;
  if (complex_valued) {
    for (; i < order; ++i) roots[i] = std::polar(radius(rng), angle(rng));
  } else {
    for (; i + 1 < order; i += 2) {
      roots[i] = std::polar(radius(rng), angle(rng));
      roots[i + 1] = std::conj(roots[i]);
    }
    if (i < order) roots[i] = (angle(rng) < 0.0 ? -1.0 : 1.0) * radius(rng);
  }
  LpModel m = model_from_poles(roots, gain(rng));
  if (!complex_valued) m.coeffs = m.coeffs.real().cast<Complex>();
  m.domain = complex_valued ? ModelDomain::ComplexFdlp : ModelDomain::Raw;
  return m;
}

CheckResult check_fourier_identity_real(int count, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    Signal x{random_real(random_length(rng), rng), 1.0};
    worst = std::max(worst, verify_fourier_magnitude_identity(x));
  }
  return make("fourier magnitude identity (real)", worst, tol);
}

CheckResult check_fourier_identity_complex_reversed(int count, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    worst = std::max(worst, verify_reversed_magnitude_identity(random_complex(random_length(rng), rng)));
  }
  return make("fourier magnitude identity (complex, index-reversed)", worst, tol);
}

CheckResult check_fourier_identity_complex_elementwise(int count, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    worst = std::max(worst, verify_fourier_magnitude_identity(random_complex(random_length(rng), rng)));
  }
  return make("fourier magnitude identity (complex, elementwise)", worst, tol);
}

CheckResult check_cepstral_recursion(int count, std::uint64_t seed, Index max_order, Index n_coeffs, double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> order(1, max_order);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const LpModel m = random_stable_model(order(rng), i % 2 == 1, rng);
    const Cepstrum rec = cepstral_recursion(m, n_coeffs);
    const Cepstrum ora = cepstrum_oracle_fft(m, 8192);
    worst = std::max(worst, (rec.c - ora.c.head(n_coeffs)).cwiseAbs().maxCoeff());
  }
  return make("cepstral recursion vs dense-grid oracle", worst, tol);
}

CheckResult check_pole_symmetry(int count, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    Signal x{random_real(512, rng), 8000.0};
    const LpModel m = conventional_fdlp(x, 12);
    const VectorXcd z = poles(m);
    for (Index a = 0; a < z.size(); ++a) {
      double nearest = 1e300;
      for (Index b = 0; b < z.size(); ++b) nearest = std::min(nearest, std::abs(std::conj(z[a]) - z[b]));
      worst = std::max(worst, nearest);
    }
  }
  return make("conventional FDLP poles closed under conjugation", worst, tol);
}

CheckResult check_cola(double tol) {
  double worst = 0.0;
  for (Index n : {16, 400, 24000}) {
    const VectorXd w = hanning(n, WindowMode::Periodic);
    const Index hop = n / 2;
    VectorXd sum = VectorXd::Zero(5 * hop);
    for (Index start = 0; start + n <= sum.size(); start += hop) sum.segment(start, n) += w;
    worst = std::max(worst, (sum.segment(hop, 3 * hop).array() - 1.0).abs().maxCoeff());
  }
  return make("periodic Hann COLA at 50% hop", worst, tol);
}

std::vector<CheckResult> run_verify_suite(std::uint64_t seed) {
  return {
      check_fourier_identity_real(100, seed),
      check_fourier_identity_complex_reversed(100, seed + 1),
      check_cepstral_recursion(100, seed + 2),
      check_pole_symmetry(20, seed + 3),
      check_cola(),
  };
}

}  // namespace fdlp
