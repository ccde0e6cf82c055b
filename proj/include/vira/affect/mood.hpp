#pragma once

#include <array>
#include <cmath>
#include <string_view>

#include "vira/affect/emotions.hpp"
#include "vira/core.hpp"

namespace vira::affect {

/// Pleasure-arousal-dominance point. Pleasure and arousal live in [-1, 1];
/// dominance is clamped to [0, 1] — the recruiter never goes submissive.
struct PadPoint {
  double pleasure = 0.0;
  double arousal = 0.0;
  double dominance = 0.0;

  double magnitude() const {
    return std::sqrt(pleasure * pleasure + arousal * arousal + dominance * dominance);
  }

  bool operator==(const PadPoint&) const = default;
};

enum class MoodLabel { Neutral, Relaxed, Exuberant, Hostile, Bored, Disdainful };

inline std::string_view mood_label_name(MoodLabel m) {
  switch (m) {
    case MoodLabel::Neutral: return "neutral";
    case MoodLabel::Relaxed: return "relaxed";
    case MoodLabel::Exuberant: return "exuberant";
    case MoodLabel::Hostile: return "hostile";
    case MoodLabel::Bored: return "bored";
    case MoodLabel::Disdainful: return "disdainful";
  }
  return "unknown";
}

struct MoodState {
  PadPoint pad;
  MoodLabel label = MoodLabel::Neutral;
  double label_intensity = 0.0;

  bool operator==(const MoodState&) const = default;
};

struct MoodConfig {
  // Step and threshold are paired: five cycles of one sustained unit
  // emotion reach the threshold (1 - (1-step)^5 >= threshold > 1 - (1-step)^4),
  // four do not.
  double step = 0.15;
  double activation_threshold = 0.5;
  double disdain_dominance = 0.25;  // separates disdainful from bored at -P/-A
};

/// Unit-length PAD direction each emotion pulls the mood toward.
inline PadPoint emotion_anchor(Emotion e) {
  auto unit = [](double p, double a, double d) {
    const double n = std::sqrt(p * p + a * a + d * d);
    return PadPoint{p / n, a / n, d / n};
  };
  switch (e) {
    case Emotion::Joy: return unit(0.6, 0.4, 0.3);
    case Emotion::Distress: return unit(-0.6, -0.2, 0.0);
    case Emotion::Anger: return unit(-0.5, 0.7, 0.6);
    case Emotion::Fear: return unit(-0.6, 0.6, 0.0);
    case Emotion::Relief: return unit(0.5, -0.3, 0.2);
    case Emotion::Disappointment: return unit(-0.4, -0.15, 0.35);
    case Emotion::Admiration: return unit(0.5, 0.3, 0.2);
    case Emotion::Hope: return unit(0.4, 0.2, 0.2);
  }
  return {};
}

/// Octant label of an active mood point.
inline MoodLabel octant_label(const PadPoint& p, const MoodConfig& cfg) {
  if (p.pleasure >= 0.0) {
    return p.arousal >= 0.0 ? MoodLabel::Exuberant : MoodLabel::Relaxed;
  }
  if (p.arousal >= 0.0) return MoodLabel::Hostile;
  return p.dominance > cfg.disdain_dominance ? MoodLabel::Disdainful : MoodLabel::Bored;
}

/// Moves the mood a fixed fraction toward the intensity-weighted centroid
/// of the active emotions' anchors. No active emotion pulls toward the
/// origin, so an uneventful stretch decays back to neutral.
inline MoodState update_mood(const MoodState& mood, const EmotionState& emotions,
                             const MoodConfig& cfg = {}) {
  double total = 0.0;
  PadPoint centroid;
  for (Emotion e : kAllEmotions) {
    const double intensity = emotions[e];
    if (intensity <= 0.0) continue;
    const PadPoint anchor = emotion_anchor(e);
    centroid.pleasure += intensity * anchor.pleasure;
    centroid.arousal += intensity * anchor.arousal;
    centroid.dominance += intensity * anchor.dominance;
    total += intensity;
  }
  if (total > 0.0) {
    centroid.pleasure /= total;
    centroid.arousal /= total;
    centroid.dominance /= total;
  }

  MoodState next;
  next.pad.pleasure = mood.pad.pleasure + cfg.step * (centroid.pleasure - mood.pad.pleasure);
  next.pad.arousal = mood.pad.arousal + cfg.step * (centroid.arousal - mood.pad.arousal);
  next.pad.dominance = mood.pad.dominance + cfg.step * (centroid.dominance - mood.pad.dominance);
  next.pad.pleasure = clamp11(next.pad.pleasure);
  next.pad.arousal = clamp11(next.pad.arousal);
  next.pad.dominance = clamp01(next.pad.dominance);

  const double magnitude = next.pad.magnitude();
  if (magnitude >= cfg.activation_threshold) {
    next.label = octant_label(next.pad, cfg);
    next.label_intensity = clamp01(magnitude);
  } else {
    next.label = MoodLabel::Neutral;
    next.label_intensity = clamp01(magnitude);
  }
  return next;
}

}  // namespace vira::affect
