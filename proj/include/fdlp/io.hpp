#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>

#include "fdlp/spectrogram.hpp"
#include "fdlp/types.hpp"

namespace fdlp {

/// RIFF/WAVE, PCM 16-bit, mono. Samples are scaled by 1/32768.
Signal read_wav(const std::filesystem::path& path);
Signal parse_wav(const std::string& bytes);

/// PCM16 mono; samples are rounded to the nearest code and clipped.
void write_wav(const std::filesystem::path& path, const Signal& x);
std::string encode_wav(const Signal& x);

enum class FeatureFormat { Binary, Csv };

/// Binary layout (little-endian, packed):
///   "FDLP" | u16 version | u32 frames | u32 bands | f32 frame_rate_hz |
///   f32 sample_rate_hz | frames*bands f32 row-major
struct FeatureFileHeader {
  static constexpr char kMagic[4] = {'F', 'D', 'L', 'P'};
  static constexpr std::uint16_t kVersion = 1;
  static constexpr std::size_t kBytes = 4 + 2 + 4 + 4 + 4 + 4;

  std::uint16_t version = kVersion;
  std::uint32_t frames = 0;
  std::uint32_t bands = 0;
  float frame_rate_hz = 0.0f;
  float sample_rate_hz = 0.0f;
};

void write_features(const FeatureMatrix& m, const std::filesystem::path& path, FeatureFormat format);
FeatureMatrix read_features(const std::filesystem::path& path);

/// CSV writers used by the CLI. '.' decimal separator, 10 significant digits.
void write_csv_header(std::ostream& os, const std::string& header);
std::ostream& csv_stream(std::ostream& os);

}  // namespace fdlp
