#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "vira/core.hpp"
#include "vira/audio/wav.hpp"

namespace vira::audio {

/// Analysis parameters shared by the whole audio front end.
/// Defaults cover adult speech: a 32 ms window keeps two full periods of
/// the highest pitch of interest, and pitch analysis doubles the window
/// (see estimate_pitch) so that 60 Hz still fits twice.
struct FeatureConfig {
  double window_ms = 32.0;
  double hop_ms = 16.0;
  double f0_min_hz = 60.0;
  double f0_max_hz = 500.0;
  double voicing_threshold = 0.45;  // normalized autocorrelation peak
  double noise_floor_db = -60.0;
  double vad_margin_db = 10.0;
  double zcr_speech_max = 0.30;       // crossings per sample, above = fricative-like hiss
  double max_break_s = 0.3;           // voicing gaps longer than this are pauses
  double syllable_prominence_db = 2.0;
  int analysis_rate = 16000;          // all input is resampled to this rate

  int window_samples() const {
    return static_cast<int>(std::lround(window_ms * analysis_rate / 1000.0));
  }
  int hop_samples() const {
    return static_cast<int>(std::lround(hop_ms * analysis_rate / 1000.0));
  }
  double hop_s() const { return hop_ms / 1000.0; }
  double window_s() const { return window_ms / 1000.0; }
};

/// A fixed-length window into the (already resampled) signal.
struct AudioFrame {
  std::span<const float> samples;  // normalized [-1, 1]
  int sample_rate = 0;
  double start_time = 0.0;  // seconds from session start
};

/// Tiles `pcm` with the configured window/hop. The last partial window is
/// dropped; input shorter than one window yields no frames.
inline std::vector<AudioFrame> frame_stream(std::span<const float> pcm, int sample_rate,
                                            const FeatureConfig& cfg) {
  if (sample_rate < kMinSampleRate || sample_rate > kMaxSampleRate) {
    throw ConfigError("unsupported sample rate " + std::to_string(sample_rate) + " Hz");
  }
  if (cfg.window_ms <= 0 || cfg.hop_ms <= 0) throw ConfigError("window/hop must be positive");

  const int w = static_cast<int>(std::lround(cfg.window_ms * sample_rate / 1000.0));
  const int h = static_cast<int>(std::lround(cfg.hop_ms * sample_rate / 1000.0));

  std::vector<AudioFrame> frames;
  if (pcm.size() < static_cast<size_t>(w)) return frames;
  const size_t count = (pcm.size() - w) / h + 1;
  frames.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    AudioFrame f;
    f.samples = pcm.subspan(i * h, w);
    f.sample_rate = sample_rate;
    f.start_time = static_cast<double>(i * h) / sample_rate;
    frames.push_back(f);
  }
  return frames;
}

}  // namespace vira::audio
