#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "vira/audio/features.hpp"
#include "vira/audio/speech_rate.hpp"
#include "vira/audio/voice_quality.hpp"
#include "vira/core.hpp"
#include "vira/cue/cue.hpp"

namespace vira::cue {

struct CueStreamConfig {
  double packet_period_s = 1.0;  // continuous cue cadence
  double hysteresis_fraction = 0.10;
  std::map<CueKind, double> discrete_thresholds;  // extra triggers on continuous cues
};

/// One glottal period handed to the stream for per-second voice quality.
struct PeriodSample {
  double time = 0.0;      // period midpoint, seconds
  double period_s = 0.0;  // duration
  double peak_amplitude = 0.0;
  int segment_id = 0;  // consecutive-diff stats never cross segments
};

/// Stateful single-consumer transducer. Feed frames (and voiced-period
/// samples) in timestamp order, call finish() with the total duration,
/// then drain the events. Instances are independent; never share one
/// across threads.
class CueStreamBuilder {
 public:
  explicit CueStreamBuilder(CueStreamConfig cfg = {}, audio::FeatureConfig audio_cfg = {})
      : cfg_(cfg), audio_(audio_cfg), syllables_(audio_cfg.syllable_prominence_db) {}

  void push_frame(const audio::FrameFeatures& f) {
    if (last_time_ && f.time < *last_time_) {
      throw StreamError("cue stream fed non-monotonic timestamps");
    }
    last_time_ = f.time;

    auto& b = buckets_[bucket_of(f.time)];
    b.frames += 1;
    b.energy_sum += f.energy_db;
    b.intensity_sum += f.intensity;
    b.loudness_sum += f.loudness;
    if (f.voiced && f.f0_hz) {
      b.voiced_frames += 1;
      b.pitch_sum += *f.f0_hz;
    }
    if (f.hnr_db) {
      b.hnr_n += 1;
      b.hnr_sum += *f.hnr_db;
    }

    update_activity(f);
    update_voicing(f);
    update_syllables(f);
  }

  void push_period(const PeriodSample& p) {
    buckets_[bucket_of(p.time)].periods.push_back(p);
  }

  /// Flushes the last complete second and closes any open speech segment.
  void finish(double total_duration_s) {
    if (speech_open_) {
      const double seg_end = std::min(last_active_t_ + audio_.hop_s(), total_duration_s);
      emit_segment_end(seg_end);
    }
    if (syllable_region_open_) {
      syllables_.end_region();
      syllable_region_open_ = false;
    }
    for (double t : syllables_.peak_times()) buckets_[bucket_of(t)].syllable_peaks += 1;

    for (const auto& [k, b] : buckets_) {
      const double close_t = static_cast<double>(k + 1) * cfg_.packet_period_s;
      if (close_t <= total_duration_s + 1e-9 && b.frames > 0) emit_bucket(k, b);
    }
    finished_ = true;
  }

  /// Events so far, ordered by time (cue order breaks ties). Call after
  /// finish() for the complete stream.
  std::vector<CueEvent> take_events() {
    std::stable_sort(events_.begin(), events_.end(), [](const CueEvent& a, const CueEvent& b) {
      if (a.time != b.time) return a.time < b.time;
      return static_cast<int>(a.cue) < static_cast<int>(b.cue);
    });
    return std::move(events_);
  }

  bool finished() const { return finished_; }

 private:
  struct Bucket {
    int frames = 0;
    double energy_sum = 0.0;
    double intensity_sum = 0.0;
    double loudness_sum = 0.0;
    int voiced_frames = 0;
    double pitch_sum = 0.0;
    int hnr_n = 0;
    double hnr_sum = 0.0;
    int syllable_peaks = 0;
    std::vector<PeriodSample> periods;
  };

  int64_t bucket_of(double t) const {
    return static_cast<int64_t>(std::floor(t / cfg_.packet_period_s));
  }

  void update_activity(const audio::FrameFeatures& f) {
    if (f.active) {
      if (!speech_open_) {
        events_.push_back({CueKind::VoiceActivity, f.time, CueEventKind::Discrete, {}, {}});
        speech_open_ = true;
        seg_start_ = f.time;
      }
      last_active_t_ = f.time;
    } else if (speech_open_ && f.time - last_active_t_ >= audio_.max_break_s) {
      emit_segment_end(last_active_t_ + audio_.hop_s());
    }
  }

  void emit_segment_end(double seg_end) {
    const double duration = std::max(0.0, seg_end - seg_start_);
    events_.push_back({CueKind::SpeechSegmentLength, seg_end, CueEventKind::Discrete, {}, duration});
    speech_open_ = false;
  }

  void update_voicing(const audio::FrameFeatures& f) {
    if (f.voiced) {
      if (!voiced_open_) {
        if (last_voiced_end_ >= 0.0) {
          const double gap = f.time - last_voiced_end_;
          if (gap > 0.0 && gap < audio_.max_break_s) {
            events_.push_back({CueKind::VoiceBreaks, f.time, CueEventKind::Discrete, {}, {}});
          }
        }
        voiced_open_ = true;
      }
      last_voiced_t_ = f.time;
    } else if (voiced_open_) {
      voiced_open_ = false;
      last_voiced_end_ = last_voiced_t_ + audio_.window_s();
    }
  }

  void update_syllables(const audio::FrameFeatures& f) {
    if (f.voiced) {
      syllable_region_open_ = true;
      smooth_window_.push_back(f.energy_db);
      if (smooth_window_.size() > 3) smooth_window_.erase(smooth_window_.begin());
      double smoothed = 0.0;
      for (double v : smooth_window_) smoothed += v;
      smoothed /= static_cast<double>(smooth_window_.size());
      syllables_.feed(smoothed, f.time);
    } else if (syllable_region_open_) {
      syllables_.end_region();
      smooth_window_.clear();
      syllable_region_open_ = false;
    }
  }

  void emit_bucket(int64_t k, const Bucket& b) {
    const double t = static_cast<double>(k + 1) * cfg_.packet_period_s;
    auto packet = [&](CueKind cue, double value) {
      events_.push_back({cue, t, CueEventKind::Continuous, value, {}});
      check_threshold(cue, value, t);
    };

    packet(CueKind::Energy, b.energy_sum / b.frames);
    packet(CueKind::Intensity, b.intensity_sum / b.frames);
    packet(CueKind::Loudness, b.loudness_sum / b.frames);
    packet(CueKind::SpeechRate, static_cast<double>(b.syllable_peaks) / cfg_.packet_period_s);
    if (b.voiced_frames > 0) packet(CueKind::Pitch, b.pitch_sum / b.voiced_frames);
    if (b.hnr_n > 0) packet(CueKind::Harmonicity, b.hnr_sum / b.hnr_n);

    if (b.periods.size() >= 3) {
      if (auto jitter = consecutive_stat(b.periods, /*amplitudes=*/false)) {
        packet(CueKind::Jitter, *jitter);
      }
      if (auto shimmer = consecutive_stat(b.periods, /*amplitudes=*/true)) {
        packet(CueKind::Shimmer, *shimmer);
      }
    }
  }

  /// Relative mean absolute consecutive difference over the bucket's
  /// periods (or their peak amplitudes); pairs spanning two voiced
  /// segments are skipped.
  static std::optional<double> consecutive_stat(const std::vector<PeriodSample>& periods,
                                                bool amplitudes) {
    double diff_sum = 0.0;
    int diff_n = 0;
    double value_sum = 0.0;
    for (size_t i = 0; i < periods.size(); ++i) {
      const double v = amplitudes ? periods[i].peak_amplitude : periods[i].period_s;
      value_sum += v;
      if (i > 0 && periods[i].segment_id == periods[i - 1].segment_id) {
        const double prev = amplitudes ? periods[i - 1].peak_amplitude : periods[i - 1].period_s;
        diff_sum += std::abs(v - prev);
        ++diff_n;
      }
    }
    const double mean = value_sum / static_cast<double>(periods.size());
    if (diff_n == 0 || mean <= 0.0) return std::nullopt;
    return (diff_sum / diff_n) / mean;
  }

  void check_threshold(CueKind cue, double value, double t) {
    auto it = cfg_.discrete_thresholds.find(cue);
    if (it == cfg_.discrete_thresholds.end()) return;
    const double thr = it->second;
    const double hyst = cfg_.hysteresis_fraction * std::abs(thr);
    bool& armed = armed_.try_emplace(cue, true).first->second;
    if (armed && value >= thr) {
      events_.push_back({cue, t, CueEventKind::Discrete, value, {}});
      armed = false;
    } else if (!armed && value < thr - hyst) {
      armed = true;
    }
  }

  CueStreamConfig cfg_;
  audio::FeatureConfig audio_;
  std::map<int64_t, Bucket> buckets_;
  std::vector<CueEvent> events_;
  std::optional<double> last_time_;
  bool finished_ = false;

  // voice-activity segments
  bool speech_open_ = false;
  double seg_start_ = 0.0;
  double last_active_t_ = 0.0;

  // voiced runs (for break detection)
  bool voiced_open_ = false;
  double last_voiced_t_ = 0.0;
  double last_voiced_end_ = -1.0;

  // syllable nuclei
  audio::SyllablePeakCounter syllables_;
  std::vector<double> smooth_window_;
  bool syllable_region_open_ = false;

  std::map<CueKind, bool> armed_;
};

/// Full front-end pipeline for one audio span: frame features, voiced
/// periods, then the cue stream.
inline std::vector<CueEvent> extract_cue_events(std::span<const float> pcm, int sample_rate,
                                                const audio::FeatureConfig& audio_cfg = {},
                                                const CueStreamConfig& stream_cfg = {}) {
  const auto analyzed = audio::analyze_audio(pcm, sample_rate, audio_cfg);
  const auto segments =
      audio::extract_voiced_segments(analyzed.features, analyzed.pcm, analyzed.sample_rate, audio_cfg);

  CueStreamBuilder builder(stream_cfg, audio_cfg);
  for (const auto& f : analyzed.features) builder.push_frame(f);
  int seg_id = 0;
  for (const auto& seg : segments) {
    for (size_t i = 0; i < seg.period_sequence.size(); ++i) {
      PeriodSample p;
      p.time = 0.5 * (seg.marker_times[i] + seg.marker_times[i + 1]);
      p.period_s = seg.period_sequence[i];
      p.peak_amplitude = seg.peak_amplitudes[i + 1];
      p.segment_id = seg_id;
      builder.push_period(p);
    }
    ++seg_id;
  }
  builder.finish(analyzed.duration_s);
  return builder.take_events();
}

}  // namespace vira::cue
