#include "fft.hpp"

#include <map>
#include <numbers>
#include <utility>

#include <unsupported/Eigen/FFT>

namespace fdlp::detail {
namespace {

// Eigen::FFT caches twiddle plans per size and is not safe to share across
// threads, so each thread keeps its own instance.
Eigen::FFT<double>& engine() {
  thread_local Eigen::FFT<double> instance = [] {
    Eigen::FFT<double> f;
    f.SetFlag(Eigen::FFT<double>::Unscaled);
    return f;
  }();
  return instance;
}

// kissfft falls back to an O(n p) butterfly for each prime factor p it has
// no special case for. Past this factor a Bluestein convolution is cheaper.
constexpr Index kMaxDirectFactor = 61;

Index largest_prime_factor(Index n) {
  Index largest = 1;
  for (Index f = 2; f * f <= n; ++f) {
    while (n % f == 0) {
      largest = f;
      n /= f;
    }
  }
  return n > 1 ? n : largest;
}

bool needs_bluestein(Index n) {
  thread_local std::map<Index, bool> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, largest_prime_factor(n) > kMaxDirectFactor).first;
  return it->second;
}

Index next_pow2(Index n) {
  Index m = 1;
  while (m < n) m <<= 1;
  return m;
}

struct BluesteinPlan {
  Index padded = 0;
  VectorXcd chirp;         // exp(sign j pi k^2 / n), k < n
  VectorXcd kernel_fft;    // FFT of the conjugate chirp, wrapped to the padded length
};

const BluesteinPlan& bluestein_plan(Index n, bool inverse) {
  thread_local std::map<std::pair<Index, bool>, BluesteinPlan> plans;
  const auto key = std::make_pair(n, inverse);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;

  BluesteinPlan plan;
  plan.padded = next_pow2(2 * n - 1);
  plan.chirp.resize(n);
  const double sign = inverse ? 1.0 : -1.0;
  for (Index k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the angle argument small and exact.
    const Index k2 = (k * k) % (2 * n);
    plan.chirp[k] = std::polar(1.0, sign * std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n));
  }
  VectorXcd kernel = VectorXcd::Zero(plan.padded);
  kernel[0] = std::conj(plan.chirp[0]);
  for (Index k = 1; k < n; ++k) {
    kernel[k] = std::conj(plan.chirp[k]);
    kernel[plan.padded - k] = std::conj(plan.chirp[k]);
  }
  plan.kernel_fft.resize(plan.padded);
  engine().fwd(plan.kernel_fft.data(), kernel.data(), plan.padded);
  return plans.emplace(key, std::move(plan)).first->second;
}

VectorXcd bluestein(const VectorXcd& x, bool inverse) {
  const Index n = x.size();
  const BluesteinPlan& plan = bluestein_plan(n, inverse);
  VectorXcd a = VectorXcd::Zero(plan.padded);
  a.head(n) = x.cwiseProduct(plan.chirp);
  VectorXcd spectrum(plan.padded);
  engine().fwd(spectrum.data(), a.data(), plan.padded);
  spectrum = spectrum.cwiseProduct(plan.kernel_fft);
  VectorXcd conv(plan.padded);
  engine().inv(conv.data(), spectrum.data(), plan.padded);
  return conv.head(n).cwiseProduct(plan.chirp) / static_cast<double>(plan.padded);
}

VectorXcd transform(const VectorXcd& x, bool inverse) {
  // kissfft crashes on length 1, where every transform is the identity.
  if (x.size() <= 1) return x;
  if (needs_bluestein(x.size())) return bluestein(x, inverse);
  VectorXcd out(x.size());
  if (inverse) {
    engine().inv(out.data(), x.data(), x.size());
  } else {
    engine().fwd(out.data(), x.data(), x.size());
  }
  return out;
}

}  // namespace

VectorXcd fft(const VectorXcd& x) { return transform(x, false); }

VectorXcd ifft(const VectorXcd& x) { return transform(x, true); }

VectorXcd fft_real(const VectorXd& x, Index nfft) {
  if (nfft < 0) nfft = x.size();
  VectorXd padded = VectorXd::Zero(nfft);
  const Index n = std::min(nfft, x.size());
  padded.head(n) = x.head(n);
  if (nfft <= 1 || needs_bluestein(nfft)) return transform(padded.cast<Complex>(), false);
  VectorXcd out(nfft);
  engine().fwd(out.data(), padded.data(), nfft);
  return out;
}

VectorXcd fft_padded(const VectorXcd& x, Index nfft) {
  VectorXcd padded = VectorXcd::Zero(nfft);
  const Index n = std::min(nfft, x.size());
  padded.head(n) = x.head(n);
  return fft(padded);
}

VectorXd ifft_real(const VectorXcd& spectrum, Index nfft) {
  if (nfft <= 1 || needs_bluestein(nfft)) {
    // Rebuild the full conjugate-symmetric spectrum from bins 0..nfft/2.
    VectorXcd full(nfft);
    for (Index k = 0; k < nfft; ++k) full[k] = k <= nfft / 2 ? spectrum[k] : std::conj(spectrum[nfft - k]);
    return transform(full, true).real();
  }
  VectorXd out(nfft);
  engine().inv(out.data(), spectrum.data(), nfft);
  return out;
}

}  // namespace fdlp::detail
