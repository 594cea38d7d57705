#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fdlp/error.hpp"
#include "fdlp/io.hpp"
#include "test_helpers.hpp"

using namespace fdlp;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "fdlp_test_io";
  fs::create_directories(dir);
  return dir / name;
}

Signal random_pcm(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> code(-32768, 32767);
  Signal s{VectorXd(n), 22050.0};
  for (Index i = 0; i < n; ++i) s.samples[i] = code(rng) / 32768.0;
  return s;
}

void patch_u16(std::string& bytes, std::size_t at, std::uint16_t v) {
  bytes[at] = static_cast<char>(v & 0xff);
  bytes[at + 1] = static_cast<char>(v >> 8);
}

}  // namespace

TEST_CASE("wav round trip is bit exact", "[io]") {
  const Signal s = random_pcm(5000, 1);
  const fs::path p = scratch("rt.wav");
  write_wav(p, s);
  const Signal back = read_wav(p);
  CHECK(back.sample_rate == 22050.0);
  REQUIRE(back.size() == s.size());
  CHECK((back.samples.array() == s.samples.array()).all());
}

TEST_CASE("wav scaling contract", "[io]") {
  Signal s{VectorXd(3), 8000.0};
  s.samples << -1.0, 0.0, 2.0;  // 2.0 clips
  const Signal back = parse_wav(encode_wav(s));
  CHECK(back.samples[0] == -1.0);
  CHECK(back.samples[1] == 0.0);
  CHECK(back.samples[2] == 32767.0 / 32768.0);

  const Signal zeros = parse_wav(encode_wav(Signal{VectorXd::Zero(100), 16000.0}));
  CHECK(zeros.size() == 100);
  CHECK(zeros.samples.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("wav format errors name the field", "[io]") {
  const std::string good = encode_wav(random_pcm(10, 2));
  // fmt chunk body starts at byte 20: audio_format, channels, rate, byte rate, align, bits.
  std::string stereo = good;
  patch_u16(stereo, 22, 2);
  try {
    parse_wav(stereo);
    FAIL("expected UnsupportedFormatError");
  } catch (const UnsupportedFormatError& e) {
    CHECK(std::string(e.what()).find("channels") != std::string::npos);
  }
  std::string floaty = good;
  patch_u16(floaty, 20, 3);
  CHECK_THROWS_WITH(parse_wav(floaty), Catch::Matchers::ContainsSubstring("audio_format"));
  std::string eight = good;
  patch_u16(eight, 34, 8);
  CHECK_THROWS_WITH(parse_wav(eight), Catch::Matchers::ContainsSubstring("bits_per_sample"));

  try {
    parse_wav(good.substr(0, good.size() - 4));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.byte_offset() > 0);
  }
  CHECK_THROWS_AS(parse_wav("RIFF"), ParseError);
  CHECK_THROWS_AS(read_wav(scratch("missing.wav")), IoError);
}

TEST_CASE("binary feature file layout and round trip", "[io]") {
  FeatureMatrix m;
  m.data.resize(2, 3);
  m.data << 1.5, -2.25, 3.0, 0.1, 1e-7, -40.0;
  m.frame_rate_hz = 100.0;
  m.sample_rate_hz = 16000.0;
  const fs::path p = scratch("m.fdlp");
  write_features(m, p, FeatureFormat::Binary);
  CHECK(fs::file_size(p) == FeatureFileHeader::kBytes + 24);
  CHECK(FeatureFileHeader::kBytes == 22);

  const FeatureMatrix back = read_features(p);
  REQUIRE(back.frames() == 2);
  REQUIRE(back.bands() == 3);
  CHECK(back.frame_rate_hz == 100.0);
  CHECK(back.sample_rate_hz == 16000.0);
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 3; ++j) CHECK(back.data(i, j) == static_cast<double>(static_cast<float>(m.data(i, j))));
  }

  std::ifstream in(p, std::ios::binary);
  std::string head(4, '\0');
  in.read(head.data(), 4);
  CHECK(head == "FDLP");
}

TEST_CASE("feature reader rejects damaged files", "[io]") {
  FeatureMatrix m;
  m.data = Eigen::MatrixXd::Ones(4, 2);
  const fs::path p = scratch("bad.fdlp");
  write_features(m, p, FeatureFormat::Binary);
  std::string bytes;
  {
    std::ifstream in(p, std::ios::binary);
    bytes.assign(std::istreambuf_iterator<char>(in), {});
  }
  {
    std::ofstream out(p, std::ios::binary);
    out << bytes.substr(0, bytes.size() - 3);
  }
  CHECK_THROWS_AS(read_features(p), ParseError);
  {
    std::ofstream out(p, std::ios::binary);
    out << "FDLX" << bytes.substr(4);
  }
  CHECK_THROWS_AS(read_features(p), UnsupportedFormatError);

  m.data(0, 0) = std::nan("");
  CHECK_THROWS_AS(write_features(m, p, FeatureFormat::Binary), NumericError);
}

TEST_CASE("csv feature file", "[io]") {
  FeatureMatrix m;
  m.data = Eigen::MatrixXd::Random(5, 3);
  const fs::path p = scratch("m.csv");
  write_features(m, p, FeatureFormat::Csv);
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  CHECK(line == "frame,band_0,band_1,band_2");
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == m.frames() + 1);
}

TEST_CASE("csv numbers ignore the global locale", "[io]") {
  std::ostringstream os;
  csv_stream(os) << 0.123456789012;
  CHECK(os.str() == "0.123456789");
}
