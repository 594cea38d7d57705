#include "fdlp/benchmark.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

#include "json.hpp"

#include "fdlp/error.hpp"
#include "fdlp/fdlp_models.hpp"
#include "fft.hpp"

namespace fdlp {
namespace {

TimingStats summarize(Index order, const std::vector<double>& ms) {
  TimingStats s;
  s.order = order;
  double sum = 0.0;
  for (double v : ms) sum += v;
  s.mean_ms = sum / static_cast<double>(ms.size());
  double var = 0.0;
  for (double v : ms) var += (v - s.mean_ms) * (v - s.mean_ms);
  s.std_ms = ms.size() > 1 ? std::sqrt(var / static_cast<double>(ms.size() - 1)) : 0.0;
  return s;
}

template <typename Fit>
double time_ms(Fit&& fit, volatile double& sink) {
  const auto t0 = std::chrono::steady_clock::now();
  const LpModel m = fit();
  const auto t1 = std::chrono::steady_clock::now();
  sink = sink + m.gain;
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

Signal speech_like_signal(double duration_s, double sample_rate, std::uint64_t seed) {
  if (!(duration_s > 0.0) || !(sample_rate > 0.0)) throw ArgumentError("speech_like_signal: bad duration/rate");
  const auto n = static_cast<Index>(std::llround(duration_s * sample_rate));
  if (n < 4) throw ArgumentError("speech_like_signal: signal too short");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  VectorXd white(n);
  for (Index i = 0; i < n; ++i) white[i] = gauss(rng);

  // Shape to a 1/f power spectrum inside the speech band.
  VectorXcd spectrum = detail::fft_real(white);
  const double low = 60.0;
  const double high = 0.45 * sample_rate;
  for (Index k = 0; k < n; ++k) {
    const Index folded = std::min(k, n - k);
    const double f = sample_rate * static_cast<double>(folded) / static_cast<double>(n);
    spectrum[k] *= (f >= low && f <= high) ? 1.0 / std::sqrt(f / low) : 0.0;
  }
  VectorXd shaped = detail::ifft(spectrum).real() / static_cast<double>(n);

  // Syllable-rate envelope: two slow components with random rates and phases.
  const double r1 = 3.0 + 3.0 * uniform(rng);
  const double r2 = 1.0 + 1.5 * uniform(rng);
  const double p1 = 2.0 * std::numbers::pi * uniform(rng);
  const double p2 = 2.0 * std::numbers::pi * uniform(rng);
  for (Index i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / sample_rate;
    const double env = 1.0 + 0.6 * std::sin(2.0 * std::numbers::pi * r1 * t + p1) +
                       0.3 * std::sin(2.0 * std::numbers::pi * r2 * t + p2);
    shaped[i] *= env;
  }
  const double peak = shaped.cwiseAbs().maxCoeff();
  Signal out;
  out.sample_rate = sample_rate;
  out.samples = peak > 0.0 ? VectorXd(0.5 * shaped / peak) : shaped;
  return out;
}

BenchReport run_benchmark(const BenchOptions& opts) {
  if (opts.n_signals < 1) throw ArgumentError("run_benchmark: n_signals must be >= 1");
  if (opts.conv_order < 0 || opts.cplx_order < 0) throw ArgumentError("run_benchmark: negative order");
  if (!(opts.duration_s > 0.0)) throw ArgumentError("run_benchmark: duration must be > 0");

  volatile double sink = 0.0;
  for (Index w = 0; w < opts.warmup; ++w) {
    const Signal x = speech_like_signal(opts.duration_s, opts.sample_rate, opts.seed + 0x9e3779b97f4a7c15ull);
    sink = sink + conventional_fdlp(x, opts.conv_order).gain + complex_fdlp(x, opts.cplx_order).gain;
  }

  std::vector<double> conv_ms;
  std::vector<double> cplx_ms;
  conv_ms.reserve(opts.n_signals);
  cplx_ms.reserve(opts.n_signals);
  for (Index i = 0; i < opts.n_signals; ++i) {
    const Signal x = speech_like_signal(opts.duration_s, opts.sample_rate, opts.seed + static_cast<std::uint64_t>(i));
    auto conv = [&] { return conventional_fdlp(x, opts.conv_order); };
    auto cplx = [&] { return complex_fdlp(x, opts.cplx_order); };
    // Alternate which method runs first so cache warmth does not favour either.
    if (i % 2 == 0) {
      conv_ms.push_back(time_ms(conv, sink));
      cplx_ms.push_back(time_ms(cplx, sink));
    } else {
      cplx_ms.push_back(time_ms(cplx, sink));
      conv_ms.push_back(time_ms(conv, sink));
    }
  }

  BenchReport report;
  report.n_signals = opts.n_signals;
  report.duration_s = opts.duration_s;
  report.conventional = summarize(opts.conv_order, conv_ms);
  report.complex = summarize(opts.cplx_order, cplx_ms);
  report.reduction_pct = 100.0 * (1.0 - report.complex.mean_ms / report.conventional.mean_ms);
  report.host = host_descriptor();
  return report;
}

std::string to_json(const BenchReport& report) {
  nlohmann::json j;
  j["n_signals"] = report.n_signals;
  j["duration_s"] = report.duration_s;
  j["conventional"] = {{"order", report.conventional.order},
                       {"mean_ms", report.conventional.mean_ms},
                       {"std_ms", report.conventional.std_ms}};
  j["complex"] = {{"order", report.complex.order},
                  {"mean_ms", report.complex.mean_ms},
                  {"std_ms", report.complex.std_ms}};
  j["reduction_pct"] = report.reduction_pct;
  j["host"] = report.host;
  return j.dump(2);
}

std::string host_descriptor() {
  std::string cpu = "unknown cpu";
  std::ifstream info("/proc/cpuinfo");
  for (std::string line; std::getline(info, line);) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) cpu = line.substr(colon + 2);
      break;
    }
  }
  std::string compiler =
#if defined(__clang__)
      "clang " __clang_version__;
#elif defined(__GNUC__)
      "gcc " __VERSION__;
#else
      "unknown compiler";
#endif
  return cpu + ", " + std::to_string(std::thread::hardware_concurrency()) + " hw threads, " + compiler;
}

}  // namespace fdlp
