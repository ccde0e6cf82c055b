#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "vira/audio/framing.hpp"
#include "vira/audio/pitch.hpp"
#include "vira/core.hpp"

namespace vira::audio {

inline constexpr double kEnergyFloorDb = -120.0;

/// Per-frame acoustic measurements. `active` is the voice-activity
/// decision (speech-like energy, voiced or unvoiced); `voiced` means
/// periodicity was found and f0/hnr are populated.
struct FrameFeatures {
  double time = 0.0;  // frame start, seconds
  bool active = false;
  bool voiced = false;
  double energy_db = kEnergyFloorDb;  // dB re full scale, <= 0 for normalized input
  double intensity = 0.0;             // linear RMS
  double loudness = 0.0;              // perceptual proxy, RMS^0.3
  double zcr = 0.0;                   // zero crossings per sample
  std::optional<double> f0_hz;
  std::optional<double> periodicity;
  std::optional<double> hnr_db;
};

inline double rms_of(std::span<const float> x) {
  if (x.empty()) return 0.0;
  double acc = 0.0;
  for (float v : x) acc += static_cast<double>(v) * v;
  return std::sqrt(acc / static_cast<double>(x.size()));
}

inline double db_from_rms(double rms) {
  if (rms <= 0.0) return kEnergyFloorDb;
  return std::max(20.0 * std::log10(rms), kEnergyFloorDb);
}

inline double zero_crossing_rate(std::span<const float> x) {
  if (x.size() < 2) return 0.0;
  size_t crossings = 0;
  for (size_t i = 1; i < x.size(); ++i) {
    if ((x[i - 1] >= 0.0f) != (x[i] >= 0.0f)) ++crossings;
  }
  return static_cast<double>(crossings) / static_cast<double>(x.size() - 1);
}

/// Energy-gated speech detector: the frame must rise above the noise floor
/// by the configured margin and look like speech, i.e. either its
/// zero-crossing rate stays below the fricative cutoff or it is periodic.
/// Loud broadband noise fails both and stays rejected.
inline bool detect_voice_activity(const AudioFrame& frame, double noise_floor_db,
                                  const FeatureConfig& cfg = {}) {
  const double energy = db_from_rms(rms_of(frame.samples));
  if (energy <= noise_floor_db + cfg.vad_margin_db) return false;
  if (zero_crossing_rate(frame.samples) < cfg.zcr_speech_max) return true;
  const auto pitch = estimate_pitch(frame.samples, frame.sample_rate, cfg);
  return pitch.has_value();
}

/// Rough noise-floor estimate: low decile of frame energies, useful when a
/// recording carries steady background noise. Never reports a floor above
/// -40 dB so the margin cannot swallow quiet speech.
inline double estimate_noise_floor_db(const std::vector<FrameFeatures>& features) {
  if (features.empty()) return -60.0;
  std::vector<double> e;
  e.reserve(features.size());
  for (const auto& f : features) e.push_back(f.energy_db);
  std::sort(e.begin(), e.end());
  const double decile = e[e.size() / 10];
  return std::min(decile, -40.0);
}

/// Runs the full per-frame front end over an already-resampled signal.
/// Pitch uses a doubled window centred on each frame so the lowest F0 of
/// the search range still fits two periods.
inline std::vector<FrameFeatures> extract_frame_features(std::span<const float> pcm,
                                                         int sample_rate,
                                                         const FeatureConfig& cfg = {}) {
  auto frames = frame_stream(pcm, sample_rate, cfg);
  std::vector<FrameFeatures> out;
  out.reserve(frames.size());

  const int w = frames.empty() ? 0 : static_cast<int>(frames.front().samples.size());
  for (const auto& frame : frames) {
    FrameFeatures f;
    f.time = frame.start_time;
    const double rms = rms_of(frame.samples);
    f.intensity = rms;
    f.loudness = rms > 0.0 ? std::pow(rms, 0.3) : 0.0;
    f.energy_db = db_from_rms(rms);
    f.zcr = zero_crossing_rate(frame.samples);

    const bool energy_gate = f.energy_db > cfg.noise_floor_db + cfg.vad_margin_db;

    if (energy_gate) {
      // Doubled analysis window centred on the frame, clipped at signal edges.
      const size_t frame_begin = static_cast<size_t>(frame.samples.data() - pcm.data());
      const size_t center = frame_begin + static_cast<size_t>(w) / 2;
      const size_t lo = center >= static_cast<size_t>(w) ? center - w : 0;
      const size_t hi = std::min(pcm.size(), center + static_cast<size_t>(w));
      auto analysis = pcm.subspan(lo, hi - lo);

      if (auto pitch = estimate_pitch(analysis, sample_rate, cfg)) {
        f.voiced = true;
        f.f0_hz = pitch->f0_hz;
        f.periodicity = pitch->strength;
        f.hnr_db = compute_hnr(analysis, sample_rate, pitch->f0_hz);
      }
      f.active = f.voiced || f.zcr < cfg.zcr_speech_max;
    }
    out.push_back(std::move(f));
  }
  return out;
}

/// Convenience entry point: validates the rate, resamples to the internal
/// analysis rate and extracts features. Returns the features plus the
/// resampled signal (period analysis needs it).
struct AnalyzedAudio {
  std::vector<float> pcm;  // at FeatureConfig::analysis_rate
  int sample_rate = 0;
  std::vector<FrameFeatures> features;
  double duration_s = 0.0;
};

inline AnalyzedAudio analyze_audio(std::span<const float> pcm, int sample_rate,
                                   const FeatureConfig& cfg = {}) {
  if (sample_rate < kMinSampleRate || sample_rate > kMaxSampleRate) {
    throw ConfigError("unsupported sample rate " + std::to_string(sample_rate) + " Hz");
  }
  AnalyzedAudio a;
  a.sample_rate = cfg.analysis_rate;
  a.pcm = resample_linear(pcm, sample_rate, cfg.analysis_rate);
  a.duration_s = static_cast<double>(a.pcm.size()) / cfg.analysis_rate;
  a.features = extract_frame_features(a.pcm, a.sample_rate, cfg);
  return a;
}

}  // namespace vira::audio
