#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "vira/core.hpp"
#include "vira/model/turn.hpp"

namespace vira::model {

/// Per-speaker statistics tracked against the calibration baseline.
enum class StatId {
  Latency,
  SpeechDuration,
  SpeechRate,
  LoudnessDb,
  PitchMean,
  PitchStdev,
  Jitter,
  Shimmer,
  Hnr,
  VoiceBreaks,
};

inline constexpr std::array<StatId, 10> kAllStats = {
    StatId::Latency, StatId::SpeechDuration, StatId::SpeechRate, StatId::LoudnessDb,
    StatId::PitchMean, StatId::PitchStdev, StatId::Jitter, StatId::Shimmer,
    StatId::Hnr, StatId::VoiceBreaks,
};

inline std::string_view stat_name(StatId id) {
  switch (id) {
    case StatId::Latency: return "latency";
    case StatId::SpeechDuration: return "speech_duration";
    case StatId::SpeechRate: return "speech_rate";
    case StatId::LoudnessDb: return "loudness_db";
    case StatId::PitchMean: return "pitch_mean";
    case StatId::PitchStdev: return "pitch_stdev";
    case StatId::Jitter: return "jitter";
    case StatId::Shimmer: return "shimmer";
    case StatId::Hnr: return "hnr";
    case StatId::VoiceBreaks: return "voice_breaks";
  }
  return "unknown";
}

inline std::optional<double> stat_value(const TurnSummary& s, StatId id) {
  switch (id) {
    case StatId::Latency: return s.response_latency;
    case StatId::SpeechDuration: return s.speech_duration;
    case StatId::SpeechRate: return s.speech_rate;
    case StatId::LoudnessDb: return s.mean_loudness_db;
    case StatId::PitchMean: return s.pitch_mean_hz;
    case StatId::PitchStdev: return s.pitch_stdev_hz;
    case StatId::Jitter: return s.jitter_mean;
    case StatId::Shimmer: return s.shimmer_mean;
    case StatId::Hnr: return s.hnr_mean_db;
    case StatId::VoiceBreaks: return static_cast<double>(s.voice_breaks);
  }
  return std::nullopt;
}

struct StatMoments {
  double mean = 0.0;
  double stdev = 0.0;
  int n = 0;
};

/// Speaker baseline from the calibration turns. The stdev is floored at a
/// fraction of |mean| so identical calibration turns cannot produce a
/// zero-width baseline.
struct Baseline {
  std::map<StatId, StatMoments> stats;
  int turns_used = 0;

  const StatMoments* find(StatId id) const {
    auto it = stats.find(id);
    return it == stats.end() ? nullptr : &it->second;
  }
};

inline Baseline calibrate(std::span<const TurnSummary> summaries, double stdev_floor_frac = 0.05) {
  if (summaries.size() < 3) {
    throw CalibrationError("calibration-incomplete: need at least 3 turns, got " +
                           std::to_string(summaries.size()));
  }
  Baseline b;
  b.turns_used = static_cast<int>(summaries.size());
  for (StatId id : kAllStats) {
    std::vector<double> values;
    for (const auto& s : summaries) {
      if (auto v = stat_value(s, id)) values.push_back(*v);
    }
    if (values.empty()) continue;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size());
    StatMoments m;
    m.mean = mean;
    m.stdev = std::max(std::sqrt(var), stdev_floor_frac * std::abs(mean));
    m.n = static_cast<int>(values.size());
    b.stats[id] = m;
  }
  return b;
}

/// Statistics deviating from the baseline by more than z standard
/// deviations. Reported as diagnostics alongside the performance index.
inline std::set<StatId> detect_peaks(const TurnSummary& summary, const Baseline& baseline,
                                     double z = 2.0) {
  std::set<StatId> peaks;
  for (StatId id : kAllStats) {
    const auto* m = baseline.find(id);
    if (!m) continue;
    const auto v = stat_value(summary, id);
    if (!v) continue;
    if (std::abs(*v - m->mean) > z * m->stdev) peaks.insert(id);
  }
  return peaks;
}

}  // namespace vira::model
