#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "vira/audio/features.hpp"
#include "vira/core.hpp"

namespace vira::audio {

/// A maximal run of voiced frames with period-synchronous markers.
struct VoicedSegment {
  double start = 0.0;
  double end = 0.0;
  std::vector<double> marker_times;      // one per glottal-cycle peak
  std::vector<double> period_sequence;   // consecutive period durations, seconds
  std::vector<double> peak_amplitudes;   // |peak| per marker
};

namespace detail {

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

inline double mean_abs_consecutive_diff(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (size_t i = 1; i < v.size(); ++i) s += std::abs(v[i] - v[i - 1]);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace detail

/// Groups consecutive voiced frames into segments and locates one
/// amplitude peak per pitch period inside each. The next marker is
/// searched around one local period ahead of the previous one; the search
/// window is clipped to the configured period range so every reported
/// period stays within [1/f0_max, 1/f0_min].
inline std::vector<VoicedSegment> extract_voiced_segments(
    const std::vector<FrameFeatures>& features, std::span<const float> pcm, int sample_rate,
    const FeatureConfig& cfg = {}) {
  std::vector<VoicedSegment> segments;
  const double window_s = cfg.window_ms / 1000.0;
  const double t_min = 1.0 / cfg.f0_max_hz;
  const double t_max = 1.0 / cfg.f0_min_hz;

  // Local period from the nearest voiced frame of this run.
  auto period_at = [&](size_t first, size_t last, double t) {
    double best_dt = 1e9, period = t_max;
    for (size_t i = first; i <= last; ++i) {
      if (!features[i].f0_hz) continue;
      const double dt = std::abs(features[i].time - t);
      if (dt < best_dt) {
        best_dt = dt;
        period = 1.0 / *features[i].f0_hz;
      }
    }
    return std::clamp(period, t_min, t_max);
  };

  auto peak_in = [&](double t0, double t1) -> std::optional<size_t> {
    auto i0 = static_cast<long>(std::ceil(t0 * sample_rate));
    auto i1 = static_cast<long>(std::floor(t1 * sample_rate));
    i0 = std::max<long>(i0, 0);
    i1 = std::min<long>(i1, static_cast<long>(pcm.size()) - 1);
    if (i1 < i0) return std::nullopt;
    size_t best = static_cast<size_t>(i0);
    for (long i = i0; i <= i1; ++i) {
      if (std::abs(pcm[static_cast<size_t>(i)]) > std::abs(pcm[best])) best = static_cast<size_t>(i);
    }
    return best;
  };

  size_t i = 0;
  while (i < features.size()) {
    if (!features[i].voiced) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j + 1 < features.size() && features[j + 1].voiced) ++j;

    VoicedSegment seg;
    seg.start = features[i].time;
    seg.end = std::min(features[j].time + window_s,
                       static_cast<double>(pcm.size()) / sample_rate);

    double period = period_at(i, j, seg.start);
    auto first = peak_in(seg.start, std::min(seg.start + 1.5 * period, seg.end));
    if (first) {
      double prev_t = static_cast<double>(*first) / sample_rate;
      seg.marker_times.push_back(prev_t);
      seg.peak_amplitudes.push_back(std::abs(pcm[*first]));
      while (true) {
        period = period_at(i, j, prev_t);
        const double lo = prev_t + std::max(0.7 * period, t_min);
        const double hi = prev_t + std::min(1.3 * period, t_max);
        if (lo > seg.end) break;
        auto next = peak_in(lo, std::min(hi, seg.end));
        if (!next) break;
        const double t = static_cast<double>(*next) / sample_rate;
        if (t <= prev_t) break;
        seg.marker_times.push_back(t);
        seg.peak_amplitudes.push_back(std::abs(pcm[*next]));
        seg.period_sequence.push_back(t - prev_t);
        prev_t = t;
      }
    }
    segments.push_back(std::move(seg));
    i = j + 1;
  }
  return segments;
}

/// Local jitter: mean absolute difference of consecutive periods over the
/// mean period. Needs at least 3 periods.
inline std::optional<double> compute_jitter(const VoicedSegment& seg) {
  if (seg.period_sequence.size() < 3) return std::nullopt;
  const double mean = detail::mean_of(seg.period_sequence);
  if (mean <= 0.0) return std::nullopt;
  return detail::mean_abs_consecutive_diff(seg.period_sequence) / mean;
}

/// Local shimmer: mean absolute difference of consecutive peak amplitudes
/// over the mean amplitude. Needs at least 3 periods; degenerate all-zero
/// amplitude segments report nothing.
inline std::optional<double> compute_shimmer(const VoicedSegment& seg) {
  if (seg.period_sequence.size() < 3) return std::nullopt;
  const double mean = detail::mean_of(seg.peak_amplitudes);
  if (mean <= 0.0) return std::nullopt;
  return detail::mean_abs_consecutive_diff(seg.peak_amplitudes) / mean;
}

struct VoiceBreakStats {
  int count = 0;
  double fraction = 0.0;  // break gap time over voiced time
};

/// Counts inter-segment voicing gaps shorter than max_break_s. Longer
/// gaps are pauses between utterances, not breaks.
inline VoiceBreakStats count_voice_breaks(const std::vector<VoicedSegment>& segments,
                                          double turn_span_s, const FeatureConfig& cfg = {}) {
  VoiceBreakStats stats;
  double voiced_time = 0.0;
  double gap_time = 0.0;
  for (size_t i = 0; i < segments.size(); ++i) {
    if (segments[i].start > turn_span_s) continue;
    voiced_time += std::max(0.0, segments[i].end - segments[i].start);
    if (i + 1 < segments.size()) {
      const double gap = segments[i + 1].start - segments[i].end;
      if (gap > 0.0 && gap < cfg.max_break_s) {
        ++stats.count;
        gap_time += gap;
      }
    }
  }
  stats.fraction = voiced_time > 0.0 ? gap_time / voiced_time : 0.0;
  return stats;
}

}  // namespace vira::audio
