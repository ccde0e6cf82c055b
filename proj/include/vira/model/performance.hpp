#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "vira/core.hpp"
#include "vira/model/baseline.hpp"
#include "vira/model/turn.hpp"

namespace vira::model {

/// Target band [lo, hi] with hard limits [min, max]; min <= lo <= hi <= max.
struct ScoreBand {
  double lo = 0.0;
  double hi = 0.0;
  double min = 0.0;
  double max = 0.0;
};

inline ScoreBand make_band(double lo, double hi, double min, double max) {
  if (!(min <= lo && lo <= hi && hi <= max)) {
    throw ContractError("score band must satisfy min <= lo <= hi <= max");
  }
  return {lo, hi, min, max};
}

/// Trapezoidal band score: +1 inside [lo, hi], falling linearly to -1 at
/// each hard limit, clamped to -1 outside. Both "too much" and "too
/// little" are penalised by the same map.
inline double score_statistic(double value, const ScoreBand& b) {
  if (value >= b.lo && value <= b.hi) return 1.0;
  if (value <= b.min || value >= b.max) return -1.0;
  if (value < b.lo) {
    return -1.0 + 2.0 * (value - b.min) / (b.lo - b.min);
  }
  return 1.0 - 2.0 * (value - b.hi) / (b.max - b.hi);
}

/// The scored statistic groups and their weights.
enum class ScoreStat { Duration, Latency, Loudness, Rate, PitchVariability, VoiceQuality };

inline constexpr std::array<ScoreStat, 6> kScoreStats = {
    ScoreStat::Duration, ScoreStat::Latency,          ScoreStat::Loudness,
    ScoreStat::Rate,     ScoreStat::PitchVariability, ScoreStat::VoiceQuality,
};

inline std::string_view score_stat_name(ScoreStat s) {
  switch (s) {
    case ScoreStat::Duration: return "duration";
    case ScoreStat::Latency: return "latency";
    case ScoreStat::Loudness: return "loudness";
    case ScoreStat::Rate: return "rate";
    case ScoreStat::PitchVariability: return "pitch_variability";
    case ScoreStat::VoiceQuality: return "voice_quality";
  }
  return "unknown";
}

inline std::optional<ScoreStat> score_stat_from_name(std::string_view name) {
  for (ScoreStat s : kScoreStats) {
    if (score_stat_name(s) == name) return s;
  }
  return std::nullopt;
}

/// Expected-cue profile for one question: what a suitable answer sounds
/// like. The duration band scales with question difficulty; the loudness
/// band is relative to the speaker's calibrated baseline.
struct ExpectedCueProfile {
  ScoreBand duration;
  ScoreBand latency{0.2, 1.5, 0.0, 4.0};
  ScoreBand rate{2.5, 5.5, 0.5, 9.0};
  ScoreBand pitch_stdev{15.0, 80.0, 0.0, 160.0};
  std::optional<ScoreBand> loudness;  // absent until a baseline exists
  ScoreBand jitter{0.0, 0.015, 0.0, 0.06};
  ScoreBand shimmer{0.0, 0.06, 0.0, 0.25};
  ScoreBand breaks{0.0, 2.0, 0.0, 10.0};
  std::map<ScoreStat, double> weights = default_weights();

  // Duration dominates: a short answer to a hard question must drag the
  // index negative even when every other statistic is in band.
  static std::map<ScoreStat, double> default_weights() {
    return {{ScoreStat::Duration, 0.55},      {ScoreStat::Latency, 0.12},
            {ScoreStat::Loudness, 0.09},      {ScoreStat::Rate, 0.09},
            {ScoreStat::PitchVariability, 0.06}, {ScoreStat::VoiceQuality, 0.09}};
  }
};

/// Duration expectations grow with difficulty: a hard question deserves an
/// elaborate answer.
inline ScoreBand duration_band_for_difficulty(double difficulty) {
  const double d = clamp01(difficulty);
  const double lo = 2.0 + 8.0 * d;
  const double hi = 15.0 + 30.0 * d;
  return make_band(lo, hi, 0.0, hi + 30.0);
}

/// Loudness band relative to the calibrated speaker level: comfortable
/// within one baseline stdev, hard limits at three.
inline std::optional<ScoreBand> loudness_band_from_baseline(const Baseline& baseline) {
  const auto* m = baseline.find(StatId::LoudnessDb);
  if (!m) return std::nullopt;
  return make_band(m->mean - m->stdev, m->mean + m->stdev, m->mean - 3.0 * m->stdev,
                   m->mean + 3.0 * m->stdev);
}

inline ExpectedCueProfile make_profile(double difficulty, const Baseline* baseline) {
  ExpectedCueProfile p;
  p.duration = duration_band_for_difficulty(difficulty);
  if (baseline) p.loudness = loudness_band_from_baseline(*baseline);
  return p;
}

/// The communicative performance index for one turn, in [-1, +1] with 0
/// neutral, plus its per-statistic sub-scores and peak diagnostics.
struct PerformanceIndex {
  double value = 0.0;
  std::map<ScoreStat, double> sub_scores;
  std::set<StatId> peaks;
  bool calibrating = false;
};

namespace detail {

inline std::optional<double> voice_quality_score(const TurnSummary& s,
                                                 const ExpectedCueProfile& p) {
  double sum = 0.0;
  int n = 0;
  if (s.jitter_mean) {
    sum += score_statistic(*s.jitter_mean, p.jitter);
    ++n;
  }
  if (s.shimmer_mean) {
    sum += score_statistic(*s.shimmer_mean, p.shimmer);
    ++n;
  }
  if (s.speech_duration > 0.0) {  // break count only means something once speech happened
    sum += score_statistic(static_cast<double>(s.voice_breaks), p.breaks);
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

}  // namespace detail

/// Weighted sum of trapezoidal sub-scores. During calibration (null
/// baseline) the index is neutral: there is no speaker reference to judge
/// against yet. An interruption forces the latency sub-score to -1, and a
/// turn with no response at all scores -1 on latency and duration while
/// the unmeasurable statistics stay neutral.
inline PerformanceIndex compute_performance(const TurnSummary& summary,
                                            const ExpectedCueProfile& profile,
                                            const Baseline* baseline, double peak_z = 2.0) {
  PerformanceIndex idx;
  if (!baseline) {
    idx.calibrating = true;
    for (ScoreStat s : kScoreStats) idx.sub_scores[s] = 0.0;
    return idx;
  }
  idx.peaks = detect_peaks(summary, *baseline, peak_z);

  auto& sub = idx.sub_scores;
  sub[ScoreStat::Duration] = score_statistic(summary.speech_duration, profile.duration);

  if (summary.interrupted) {
    sub[ScoreStat::Latency] = -1.0;
  } else if (summary.response_latency) {
    sub[ScoreStat::Latency] = score_statistic(*summary.response_latency, profile.latency);
  } else {
    sub[ScoreStat::Latency] = -1.0;  // never answered
  }

  sub[ScoreStat::Loudness] = (profile.loudness && summary.mean_loudness_db)
                                 ? score_statistic(*summary.mean_loudness_db, *profile.loudness)
                                 : 0.0;
  sub[ScoreStat::Rate] =
      summary.speech_rate ? score_statistic(*summary.speech_rate, profile.rate) : 0.0;
  sub[ScoreStat::PitchVariability] =
      summary.pitch_stdev_hz ? score_statistic(*summary.pitch_stdev_hz, profile.pitch_stdev) : 0.0;
  sub[ScoreStat::VoiceQuality] = detail::voice_quality_score(summary, profile).value_or(0.0);

  double weight_sum = 0.0;
  for (const auto& [stat, w] : profile.weights) {
    if (w < 0.0) throw ContractError("profile weights must be nonnegative");
    weight_sum += w;
  }
  if (weight_sum <= 0.0) throw ContractError("profile needs at least one positive weight");

  double acc = 0.0;
  for (const auto& [stat, w] : profile.weights) acc += w * sub[stat];
  idx.value = clamp11(acc / weight_sum);
  return idx;
}

}  // namespace vira::model
