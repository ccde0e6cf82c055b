#pragma once

// Deterministic synthetic signal fixtures for the audio tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace synth {

inline constexpr double kPi = 3.14159265358979323846;

inline std::vector<float> silence(double dur_s, int rate) {
  return std::vector<float>(static_cast<size_t>(dur_s * rate), 0.0f);
}

inline std::vector<float> sine(double freq_hz, double dur_s, int rate, double amp = 0.5,
                               double phase = 0.0) {
  std::vector<float> out(static_cast<size_t>(dur_s * rate));
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<float>(amp * std::sin(2.0 * kPi * freq_hz * i / rate + phase));
  }
  return out;
}

/// Gaussian noise with the given RMS.
inline std::vector<float> noise(double dur_s, int rate, double rms, uint32_t seed = 1234) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist(0.0, rms);
  std::vector<float> out(static_cast<size_t>(dur_s * rate));
  for (auto& v : out) v = static_cast<float>(dist(rng));
  return out;
}

/// One-sample impulses at the given period; crude glottal-pulse stand-in.
inline std::vector<float> pulse_train(double f0_hz, double dur_s, int rate, double amp = 0.8) {
  std::vector<float> out(static_cast<size_t>(dur_s * rate), 0.0f);
  const double period = rate / f0_hz;
  for (double pos = 0.0; pos < static_cast<double>(out.size()); pos += period) {
    out[static_cast<size_t>(pos)] = static_cast<float>(amp);
  }
  return out;
}

/// Carrier tone with sinusoidal amplitude modulation between amp_lo and
/// amp_hi; one modulation maximum per cycle, starting at a trough.
inline std::vector<float> am_tone(double carrier_hz, double mod_hz, double dur_s, int rate,
                                  double amp_hi = 0.6, double amp_lo = 0.1) {
  std::vector<float> out(static_cast<size_t>(dur_s * rate));
  const double mid = 0.5 * (amp_hi + amp_lo);
  const double depth = 0.5 * (amp_hi - amp_lo);
  for (size_t i = 0; i < out.size(); ++i) {
    const double t = static_cast<double>(i) / rate;
    const double env = mid - depth * std::cos(2.0 * kPi * mod_hz * t);
    out[i] = static_cast<float>(env * std::sin(2.0 * kPi * carrier_hz * t));
  }
  return out;
}

inline std::vector<float> concat(std::initializer_list<std::span<const float>> parts) {
  std::vector<float> out;
  size_t total = 0;
  for (auto p : parts) total += p.size();
  out.reserve(total);
  for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

inline void scale(std::vector<float>& v, double factor) {
  for (auto& s : v) s = static_cast<float>(s * factor);
}

inline std::vector<float> mix(std::span<const float> a, std::span<const float> b) {
  std::vector<float> out(std::max(a.size(), b.size()), 0.0f);
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

}  // namespace synth
