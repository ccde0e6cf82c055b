#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "vira/core.hpp"

namespace vira::audio {

inline constexpr int kMinSampleRate = 8000;
inline constexpr int kMaxSampleRate = 48000;

struct WavData {
  std::vector<float> samples;  // mono, normalized to [-1, 1]
  int sample_rate = 0;

  double duration_s() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

namespace detail {

inline uint32_t read_u32(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

inline uint16_t read_u16(const unsigned char* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

inline void write_u32(std::ostream& os, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

inline void write_u16(std::ostream& os, uint16_t v) {
  unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 2);
}

}  // namespace detail

/// Reads a RIFF/WAVE file containing 16-bit PCM. Only mono input is
/// accepted; stereo (or any multi-channel) file is a configuration error,
/// as is a sample rate outside [8, 48] kHz.
inline WavData read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open WAV file: " + path.string());

  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 44 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw ConfigError("not a RIFF/WAVE file: " + path.string());
  }

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  bool have_fmt = false;
  const unsigned char* data = nullptr;
  size_t data_len = 0;

  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    uint32_t chunk_len = detail::read_u32(chunk + 4);
    const unsigned char* body = chunk + 8;
    if (pos + 8 + chunk_len > bytes.size()) chunk_len = static_cast<uint32_t>(bytes.size() - pos - 8);

    if (std::memcmp(chunk, "fmt ", 4) == 0 && chunk_len >= 16) {
      format = detail::read_u16(body);
      channels = detail::read_u16(body + 2);
      rate = detail::read_u32(body + 4);
      bits = detail::read_u16(body + 14);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = body;
      data_len = chunk_len;
    }
    pos += 8 + chunk_len + (chunk_len & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr) throw ConfigError("WAV missing fmt/data chunk: " + path.string());
  if (format != 1 || bits != 16) throw ConfigError("only 16-bit PCM WAV is supported: " + path.string());
  if (channels != 1) throw ConfigError("stereo input rejected, supply mono audio: " + path.string());
  if (rate < kMinSampleRate || rate > kMaxSampleRate) {
    throw ConfigError("unsupported sample rate " + std::to_string(rate) + " Hz: " + path.string());
  }

  WavData wav;
  wav.sample_rate = static_cast<int>(rate);
  const size_t n = data_len / 2;
  wav.samples.resize(n);
  for (size_t i = 0; i < n; ++i) {
    int16_t s = static_cast<int16_t>(detail::read_u16(data + 2 * i));
    wav.samples[i] = static_cast<float>(s) / 32768.0f;
  }
  return wav;
}

/// Writes mono 16-bit PCM. Used by the tools and test fixtures.
inline void write_wav(const std::filesystem::path& path, std::span<const float> samples,
                      int sample_rate, int channels = 1) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write WAV file: " + path.string());

  const uint32_t data_len = static_cast<uint32_t>(samples.size() * 2);
  os.write("RIFF", 4);
  detail::write_u32(os, 36 + data_len);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  detail::write_u32(os, 16);
  detail::write_u16(os, 1);  // PCM
  detail::write_u16(os, static_cast<uint16_t>(channels));
  detail::write_u32(os, static_cast<uint32_t>(sample_rate));
  detail::write_u32(os, static_cast<uint32_t>(sample_rate * channels * 2));
  detail::write_u16(os, static_cast<uint16_t>(channels * 2));
  detail::write_u16(os, 16);
  os.write("data", 4);
  detail::write_u32(os, data_len);
  for (float v : samples) {
    float c = v < -1.0f ? -1.0f : (v > 1.0f ? 1.0f : v);
    int16_t s = static_cast<int16_t>(std::lround(c * 32767.0f));
    detail::write_u16(os, static_cast<uint16_t>(s));
  }
}

/// Linear-interpolation resampler. Adequate for the analysed band
/// (F0 <= 500 Hz); everything downstream runs at one internal rate.
inline std::vector<float> resample_linear(std::span<const float> in, int rate_in, int rate_out) {
  if (rate_in == rate_out || in.empty()) return {in.begin(), in.end()};
  const double step = static_cast<double>(rate_in) / rate_out;
  const size_t n_out = static_cast<size_t>(static_cast<double>(in.size()) * rate_out / rate_in);
  std::vector<float> out(n_out);
  for (size_t i = 0; i < n_out; ++i) {
    const double x = i * step;
    const size_t i0 = static_cast<size_t>(x);
    const double frac = x - static_cast<double>(i0);
    const float a = in[std::min(i0, in.size() - 1)];
    const float b = in[std::min(i0 + 1, in.size() - 1)];
    out[i] = static_cast<float>(a + (b - a) * frac);
  }
  return out;
}

}  // namespace vira::audio
