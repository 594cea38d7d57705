// fdlp: command-line front end for the FDLP library.
//
// Exit codes: 0 success, 1 operation error, 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fdlp/benchmark.hpp"
#include "fdlp/cepstrum.hpp"
#include "fdlp/dsp_core.hpp"
#include "fdlp/error.hpp"
#include "fdlp/fdlp_models.hpp"
#include "fdlp/io.hpp"
#include "fdlp/spectrogram.hpp"
#include "fdlp/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::vector<fdlp::AmComponent> parse_mods(const std::string& text) {
  std::vector<fdlp::AmComponent> out;
  if (text.empty()) return out;
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ',')) {
    std::stringstream fields(item);
    std::string f, d, p;
    if (!std::getline(fields, f, ':') || !std::getline(fields, d, ':')) {
      throw CLI::ValidationError("--mod", "expected F:DEPTH[:PHASE], got '" + item + "'");
    }
    std::getline(fields, p, ':');
    try {
      out.push_back({std::stod(f), std::stod(d), p.empty() ? 0.0 : std::stod(p)});
    } catch (const std::exception&) {
      throw CLI::ValidationError("--mod", "non-numeric field in '" + item + "'");
    }
  }
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw fdlp::IoError("cannot open " + path + " for writing");
  fdlp::csv_stream(os);
  return os;
}

fdlp::LpModel fit(const fdlp::Signal& x, const std::string& method, fdlp::Index order) {
  return method == "conventional" ? fdlp::conventional_fdlp(x, order) : fdlp::complex_fdlp(x, order);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency domain linear prediction: envelopes, modulation spectra, FDLP spectrograms"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "Render an AM test signal to WAV");
  double carrier = 1000.0, dur = 1.0, rate = 8000.0;
  std::string mods, synth_out;
  synth->add_option("--carrier", carrier, "Carrier frequency (Hz)");
  synth->add_option("--mod", mods, "Modulations F:DEPTH:PHASE_DEG[,...]");
  synth->add_option("--dur", dur, "Duration (s)");
  synth->add_option("--rate", rate, "Sample rate (Hz)");
  synth->add_option("--out", synth_out, "Output WAV")->required();

  // envelope
  auto* env_cmd = app.add_subcommand("envelope", "Temporal envelope as time,value CSV");
  std::string env_in, env_out, env_method = "complex";
  fdlp::Index env_order = 40;
  env_cmd->add_option("--in", env_in, "Input WAV")->required();
  env_cmd->add_option("--method", env_method)->check(CLI::IsMember({"conventional", "complex", "hilbert"}));
  env_cmd->add_option("--order", env_order, "LP order");
  env_cmd->add_option("--out", env_out, "Output CSV")->required();

  // modspec
  auto* mod_cmd = app.add_subcommand("modspec", "Modulation spectrum as freq_hz,magnitude CSV");
  std::string mod_in, mod_out, mod_method = "complex";
  fdlp::Index mod_order = 20, n_coeffs = 0;
  bool direct = false;
  mod_cmd->add_option("--in", mod_in, "Input WAV")->required();
  mod_cmd->add_option("--method", mod_method)->check(CLI::IsMember({"conventional", "complex"}));
  mod_cmd->add_option("--order", mod_order, "LP order");
  mod_cmd->add_option("--coeffs", n_coeffs, "Cepstral coefficients (default covers 30 Hz)");
  mod_cmd->add_flag("--direct", direct, "Use the two-transform path instead of the cepstral recursion");
  mod_cmd->add_option("--out", mod_out, "Output CSV")->required();

  // spectrogram
  auto* spec_cmd = app.add_subcommand("spectrogram", "FDLP spectrogram features");
  std::string spec_in, spec_out, spec_format = "bin";
  fdlp::SpectrogramConfig cfg;
  spec_cmd->add_option("--in", spec_in, "Input WAV")->required();
  spec_cmd->add_option("--bands", cfg.n_bands, "Number of sub-bands");
  spec_cmd->add_option("--order", cfg.lp_order, "LP order per band");
  spec_cmd->add_option("--frame-rate", cfg.frame_rate_hz, "Output frame rate (Hz)");
  spec_cmd->add_option("--window", cfg.window_s, "Analysis window (s)");
  spec_cmd->add_option("--hop", cfg.hop_s, "Analysis hop (s)");
  spec_cmd->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
  spec_cmd->add_option("--format", spec_format)->check(CLI::IsMember({"bin", "csv"}));
  spec_cmd->add_option("--out", spec_out, "Output path")->required();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Time conventional vs complex FDLP fits");
  fdlp::BenchOptions bench;
  bool as_json = false;
  bench_cmd->add_option("--n", bench.n_signals, "Number of signals");
  bench_cmd->add_option("--dur", bench.duration_s, "Signal duration (s)");
  bench_cmd->add_option("--conv-order", bench.conv_order, "Conventional FDLP order");
  bench_cmd->add_option("--cplx-order", bench.cplx_order, "Complex FDLP order");
  bench_cmd->add_option("--seed", bench.seed, "Signal generator seed");
  bench_cmd->add_flag("--json", as_json, "Emit a JSON report");

  auto* verify_cmd = app.add_subcommand("verify", "Run the numerical self-checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*synth) {
      fdlp::AmSignalSpec spec;
      spec.carrier_hz = carrier;
      spec.duration_s = dur;
      spec.sample_rate = rate;
      spec.components = parse_mods(mods);
      fdlp::write_wav(synth_out, fdlp::synth_am(spec));
    } else if (*env_cmd) {
      const fdlp::Signal x = fdlp::read_wav(env_in);
      fdlp::Envelope env;
      if (env_method == "hilbert") {
        env = fdlp::hilbert_envelope(x);
      } else {
        const fdlp::LpModel m = fit(x, env_method, env_order);
        env = fdlp::envelope(m, m.domain == fdlp::ModelDomain::ConventionalFdlp);
      }
      auto os = open_out(env_out);
      fdlp::write_csv_header(os, "time,value");
      for (fdlp::Index i = 0; i < env.values.size(); ++i) os << env.time_axis[i] << ',' << env.values[i] << '\n';
    } else if (*mod_cmd) {
      const fdlp::Signal x = fdlp::read_wav(mod_in);
      const fdlp::LpModel m = fit(x, mod_method, mod_order);
      fdlp::ModulationSpectrum spec;
      if (direct) {
        spec = fdlp::modulation_spectrum_direct(m, fdlp::default_envelope_points(m));
        const fdlp::Index keep = std::min<fdlp::Index>(
            spec.magnitudes.size(), n_coeffs > 0 ? n_coeffs : fdlp::default_cepstral_count(x.duration()));
        spec.magnitudes.conservativeResize(keep);
        spec.freqs_hz.conservativeResize(keep);
      } else {
        spec = n_coeffs > 0 ? fdlp::modulation_spectrum(m, n_coeffs) : fdlp::modulation_spectrum(m);
      }
      auto os = open_out(mod_out);
      fdlp::write_csv_header(os, "freq_hz,magnitude");
      for (fdlp::Index i = 0; i < spec.magnitudes.size(); ++i) {
        os << spec.freqs_hz[i] << ',' << spec.magnitudes[i] << '\n';
      }
    } else if (*spec_cmd) {
      const fdlp::Signal x = fdlp::read_wav(spec_in);
      cfg.sample_rate_hz = x.sample_rate;
      fdlp::FeatureMatrix features = fdlp::fdlp_spectrogram(x, cfg);
      features.file_id = spec_in;
      fdlp::write_features(features, spec_out,
                           spec_format == "csv" ? fdlp::FeatureFormat::Csv : fdlp::FeatureFormat::Binary);
    } else if (*bench_cmd) {
      const fdlp::BenchReport report = fdlp::run_benchmark(bench);
      if (as_json) {
        std::cout << fdlp::to_json(report) << '\n';
      } else {
        std::cout << "signals: " << report.n_signals << " x " << report.duration_s << " s\n"
                  << "conventional order " << report.conventional.order << ": " << report.conventional.mean_ms
                  << " ms (sd " << report.conventional.std_ms << ")\n"
                  << "complex order " << report.complex.order << ": " << report.complex.mean_ms << " ms (sd "
                  << report.complex.std_ms << ")\n"
                  << "reduction: " << report.reduction_pct << " %\n"
                  << "host: " << report.host << '\n';
      }
    } else if (*verify_cmd) {
      bool all = true;
      for (const auto& check : fdlp::run_verify_suite()) {
        std::cout << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.detail << '\n';
        all = all && check.passed;
      }
      return all ? kExitOk : kExitFailure;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "fdlp: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "fdlp: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}
