#include "fdlp/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <locale>
#include <sstream>

#include "fdlp/error.hpp"

namespace fdlp {
namespace {

std::uint32_t read_u32(const std::string& bytes, std::size_t offset) {
  if (offset + 4 > bytes.size()) throw ParseError("wav: truncated file", offset);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(bytes[offset + i]);
  return v;
}

std::uint16_t read_u16(const std::string& bytes, std::size_t offset) {
  if (offset + 2 > bytes.size()) throw ParseError("wav: truncated file", offset);
  return static_cast<std::uint16_t>(static_cast<unsigned char>(bytes[offset]) |
                                    (static_cast<unsigned char>(bytes[offset + 1]) << 8));
}

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>(v >> 8));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f32(std::string& out, float v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }

float get_f32(const std::string& bytes, std::size_t offset) {
  return std::bit_cast<float>(read_u32(bytes, offset));
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void dump(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

Signal parse_wav(const std::string& bytes) {
  if (bytes.size() < 12) throw ParseError("wav: truncated RIFF header", bytes.size());
  if (bytes.compare(0, 4, "RIFF") != 0) throw UnsupportedFormatError("wav: missing RIFF tag");
  if (bytes.compare(8, 4, "WAVE") != 0) throw UnsupportedFormatError("wav: RIFF form type is not WAVE");

  bool have_fmt = false;
  std::uint32_t sample_rate = 0;
  std::size_t offset = 12;
  while (true) {
    if (offset + 8 > bytes.size()) {
      throw ParseError(have_fmt ? "wav: missing data chunk" : "wav: missing fmt chunk", offset);
    }
    const std::string id = bytes.substr(offset, 4);
    const std::uint32_t size = read_u32(bytes, offset + 4);
    const std::size_t body = offset + 8;

    if (id == "fmt ") {
      if (size < 16 || body + 16 > bytes.size()) throw ParseError("wav: truncated fmt chunk", body);
      const std::uint16_t audio_format = read_u16(bytes, body);
      const std::uint16_t channels = read_u16(bytes, body + 2);
      sample_rate = read_u32(bytes, body + 4);
      const std::uint16_t bits = read_u16(bytes, body + 14);
      if (audio_format != 1) {
        throw UnsupportedFormatError("wav: audio_format=" + std::to_string(audio_format) + " (only PCM=1)");
      }
      if (channels != 1) throw UnsupportedFormatError("wav: channels=" + std::to_string(channels) + " (mono only)");
      if (bits != 16) throw UnsupportedFormatError("wav: bits_per_sample=" + std::to_string(bits) + " (16 only)");
      if (sample_rate == 0) throw UnsupportedFormatError("wav: sample_rate=0");
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw ParseError("wav: data chunk before fmt chunk", offset);
      if (body + size > bytes.size()) throw ParseError("wav: truncated data chunk", bytes.size());
      if (size % 2 != 0) throw ParseError("wav: odd data size for 16-bit samples", offset + 4);
      Signal out;
      out.sample_rate = static_cast<double>(sample_rate);
      out.samples.resize(size / 2);
      for (std::uint32_t i = 0; i < size / 2; ++i) {
        const auto code = static_cast<std::int16_t>(read_u16(bytes, body + 2 * i));
        out.samples[i] = static_cast<double>(code) / 32768.0;
      }
      return out;
    }
    offset = body + size + (size & 1u);
  }
}

Signal read_wav(const std::filesystem::path& path) {
  try {
    return parse_wav(slurp(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.byte_offset());
  } catch (const UnsupportedFormatError& e) {
    throw UnsupportedFormatError(path.string() + ": " + e.what());
  }
}

std::string encode_wav(const Signal& x) {
  const auto rate = static_cast<std::uint32_t>(std::llround(x.sample_rate));
  const auto data_bytes = static_cast<std::uint32_t>(2 * x.size());
  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  put_u32(out, 36 + data_bytes);
  out += "WAVEfmt ";
  put_u32(out, 16);
  put_u16(out, 1);
  put_u16(out, 1);
  put_u32(out, rate);
  put_u32(out, rate * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  out += "data";
  put_u32(out, data_bytes);
  for (Index i = 0; i < x.size(); ++i) {
    const double code = std::clamp(std::round(x.samples[i] * 32768.0), -32768.0, 32767.0);
    put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(code)));
  }
  return out;
}

void write_wav(const std::filesystem::path& path, const Signal& x) { dump(path, encode_wav(x)); }

std::ostream& csv_stream(std::ostream& os) {
  os.imbue(std::locale::classic());
  os << std::setprecision(10);
  return os;
}

void write_csv_header(std::ostream& os, const std::string& header) { os << header << '\n'; }

void write_features(const FeatureMatrix& m, const std::filesystem::path& path, FeatureFormat format) {
  if (!m.data.allFinite()) throw NumericError("write_features: matrix has non-finite cells");
  if (format == FeatureFormat::Binary) {
    std::string out;
    out.reserve(FeatureFileHeader::kBytes + 4 * m.data.size());
    out.append(FeatureFileHeader::kMagic, 4);
    put_u16(out, FeatureFileHeader::kVersion);
    put_u32(out, static_cast<std::uint32_t>(m.frames()));
    put_u32(out, static_cast<std::uint32_t>(m.bands()));
    put_f32(out, static_cast<float>(m.frame_rate_hz));
    put_f32(out, static_cast<float>(m.sample_rate_hz));
    for (Index i = 0; i < m.frames(); ++i) {
      for (Index b = 0; b < m.bands(); ++b) put_f32(out, static_cast<float>(m.data(i, b)));
    }
    dump(path, out);
    return;
  }

  std::ostringstream os;
  csv_stream(os);
  os << "frame";
  for (Index b = 0; b < m.bands(); ++b) os << ",band_" << b;
  os << '\n';
  for (Index i = 0; i < m.frames(); ++i) {
    os << i;
    for (Index b = 0; b < m.bands(); ++b) os << ',' << m.data(i, b);
    os << '\n';
  }
  dump(path, os.str());
}

FeatureMatrix read_features(const std::filesystem::path& path) {
  const std::string bytes = slurp(path);
  if (bytes.size() < FeatureFileHeader::kBytes) throw ParseError("features: truncated header", bytes.size());
  if (std::memcmp(bytes.data(), FeatureFileHeader::kMagic, 4) != 0) {
    throw UnsupportedFormatError("features: bad magic in " + path.string());
  }
  FeatureFileHeader h;
  h.version = read_u16(bytes, 4);
  if (h.version != FeatureFileHeader::kVersion) {
    throw UnsupportedFormatError("features: version " + std::to_string(h.version) + " not supported");
  }
  h.frames = read_u32(bytes, 6);
  h.bands = read_u32(bytes, 10);
  h.frame_rate_hz = get_f32(bytes, 14);
  h.sample_rate_hz = get_f32(bytes, 18);
  const std::size_t expected = FeatureFileHeader::kBytes + 4ull * h.frames * h.bands;
  if (bytes.size() != expected) {
    throw ParseError("features: payload length does not match header dims", std::min(bytes.size(), expected));
  }
  FeatureMatrix m;
  m.data.resize(h.frames, h.bands);
  m.frame_rate_hz = h.frame_rate_hz;
  m.sample_rate_hz = h.sample_rate_hz;
  std::size_t offset = FeatureFileHeader::kBytes;
  for (std::uint32_t i = 0; i < h.frames; ++i) {
    for (std::uint32_t b = 0; b < h.bands; ++b, offset += 4) m.data(i, b) = get_f32(bytes, offset);
  }
  m.file_id = path.stem().string();
  if (h.sample_rate_hz > 0.0f && h.frame_rate_hz > 0.0f) m.duration_s = h.frames / static_cast<double>(h.frame_rate_hz);
  return m;
}

}  // namespace fdlp
