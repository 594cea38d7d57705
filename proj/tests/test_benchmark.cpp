#include "json.hpp"

#include "fdlp/benchmark.hpp"
#include "fdlp/error.hpp"
#include "test_helpers.hpp"

using namespace fdlp;

TEST_CASE("speech-like generator is deterministic and bounded", "[bench]") {
  const Signal a = speech_like_signal(1.5, 16000.0, 42);
  const Signal b = speech_like_signal(1.5, 16000.0, 42);
  const Signal c = speech_like_signal(1.5, 16000.0, 43);
  CHECK(a.size() == 24000);
  CHECK((a.samples.array() == b.samples.array()).all());
  CHECK((a.samples.array() != c.samples.array()).any());
  CHECK(a.samples.cwiseAbs().maxCoeff() == Catch::Approx(0.5));
  CHECK_THROWS_AS(speech_like_signal(0.0, 16000.0, 1), ArgumentError);
}

TEST_CASE("benchmark report is well formed at order zero", "[bench]") {
  BenchOptions opts;
  opts.n_signals = 3;
  opts.conv_order = 0;
  opts.cplx_order = 0;
  opts.warmup = 1;
  const BenchReport r = run_benchmark(opts);
  CHECK(r.n_signals == 3);
  CHECK(r.conventional.mean_ms > 0.0);
  CHECK(r.complex.mean_ms > 0.0);
  CHECK(r.reduction_pct == Catch::Approx(100.0 * (1.0 - r.complex.mean_ms / r.conventional.mean_ms)));

  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j.contains("reduction_pct"));
  CHECK(j["n_signals"] == 3);
  CHECK(j["conventional"]["order"] == 0);
  CHECK(j.contains("host"));
}

TEST_CASE("benchmark argument validation", "[bench]") {
  BenchOptions opts;
  opts.n_signals = 0;
  CHECK_THROWS_AS(run_benchmark(opts), ArgumentError);
  opts.n_signals = 1;
  opts.conv_order = -1;
  CHECK_THROWS_AS(run_benchmark(opts), ArgumentError);
}
