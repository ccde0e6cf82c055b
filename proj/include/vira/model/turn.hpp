#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "vira/core.hpp"
#include "vira/cue/cue.hpp"

namespace vira::model {

/// Per-turn aggregate of the cue stream. Everything downstream (baseline,
/// performance index) is computed from this record, so a replayed cue
/// trace reproduces the exact same pipeline as live audio.
struct TurnSummary {
  int turn_index = 1;
  std::optional<double> response_latency;  // s after question end; negative iff interrupted
  double speech_duration = 0.0;            // summed speech-segment seconds
  std::optional<double> speech_rate;       // syllable nuclei per speaking second
  std::optional<double> mean_loudness_db;  // energy packets over speaking seconds
  std::optional<double> pitch_mean_hz;
  std::optional<double> pitch_stdev_hz;
  std::optional<double> jitter_mean;
  std::optional<double> shimmer_mean;
  std::optional<double> hnr_mean_db;
  int voice_breaks = 0;
  bool interrupted = false;
};

/// Aggregates the turn's cue events. `question_end_s` is on the same clock
/// as the event timestamps; speech starting before it marks the turn as
/// interrupted and makes the latency negative.
inline TurnSummary summarize_turn(std::span<const cue::CueEvent> events, double question_end_s,
                                  int turn_index = 1) {
  TurnSummary s;
  s.turn_index = turn_index;

  struct Span {
    double start, end;
  };
  std::vector<Span> speech_spans;
  std::optional<double> first_voice;

  double rate_sum = 0.0;
  std::vector<double> pitches;
  double jitter_sum = 0.0, shimmer_sum = 0.0, hnr_sum = 0.0;
  int jitter_n = 0, shimmer_n = 0, hnr_n = 0;

  for (const auto& e : events) {
    switch (e.cue) {
      case cue::CueKind::VoiceActivity:
        if (e.kind == cue::CueEventKind::Discrete && !first_voice) first_voice = e.time;
        break;
      case cue::CueKind::SpeechSegmentLength:
        if (e.duration) {
          s.speech_duration += *e.duration;
          speech_spans.push_back({e.time - *e.duration, e.time});
        }
        break;
      case cue::CueKind::VoiceBreaks:
        if (e.kind == cue::CueEventKind::Discrete) s.voice_breaks += 1;
        break;
      case cue::CueKind::SpeechRate:
        if (e.kind == cue::CueEventKind::Continuous && e.value) rate_sum += *e.value;
        break;
      case cue::CueKind::Pitch:
        if (e.kind == cue::CueEventKind::Continuous && e.value) pitches.push_back(*e.value);
        break;
      case cue::CueKind::Jitter:
        if (e.kind == cue::CueEventKind::Continuous && e.value) {
          jitter_sum += *e.value;
          ++jitter_n;
        }
        break;
      case cue::CueKind::Shimmer:
        if (e.kind == cue::CueEventKind::Continuous && e.value) {
          shimmer_sum += *e.value;
          ++shimmer_n;
        }
        break;
      case cue::CueKind::Harmonicity:
        if (e.kind == cue::CueEventKind::Continuous && e.value) {
          hnr_sum += *e.value;
          ++hnr_n;
        }
        break;
      default:
        break;
    }
  }

  if (first_voice) {
    s.response_latency = *first_voice - question_end_s;
    s.interrupted = *s.response_latency < 0.0;
  }

  if (!pitches.empty()) {
    double mean = 0.0;
    for (double p : pitches) mean += p;
    mean /= static_cast<double>(pitches.size());
    double var = 0.0;
    for (double p : pitches) var += (p - mean) * (p - mean);
    var /= static_cast<double>(pitches.size());
    s.pitch_mean_hz = mean;
    s.pitch_stdev_hz = std::sqrt(var);
  }

  if (jitter_n > 0) s.jitter_mean = jitter_sum / jitter_n;
  if (shimmer_n > 0) s.shimmer_mean = shimmer_sum / shimmer_n;
  if (hnr_n > 0) s.hnr_mean_db = hnr_sum / hnr_n;

  // Speaking-time rate: packet values are nuclei-per-second, so their sum
  // over one-second packets is the nucleus count.
  if (s.speech_duration > 0.0) s.speech_rate = rate_sum / s.speech_duration;

  // Loudness over seconds that overlap speech; silence must not drag the
  // per-turn level down.
  double loud_sum = 0.0;
  int loud_n = 0;
  for (const auto& e : events) {
    if (e.cue != cue::CueKind::Energy || e.kind != cue::CueEventKind::Continuous || !e.value) continue;
    const double sec_start = e.time - 1.0;
    const bool overlaps = std::any_of(speech_spans.begin(), speech_spans.end(), [&](const Span& sp) {
      return sp.start < e.time && sp.end > sec_start;
    });
    if (overlaps) {
      loud_sum += *e.value;
      ++loud_n;
    }
  }
  if (loud_n > 0) s.mean_loudness_db = loud_sum / loud_n;

  return s;
}

}  // namespace vira::model
