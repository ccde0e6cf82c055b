#pragma once

#include <array>
#include <cmath>
#include <string_view>

#include "vira/core.hpp"

namespace vira::affect {

enum class Emotion { Joy, Distress, Relief, Disappointment, Admiration, Anger, Hope, Fear };

inline constexpr std::array<Emotion, 8> kAllEmotions = {
    Emotion::Joy,        Emotion::Distress, Emotion::Relief, Emotion::Disappointment,
    Emotion::Admiration, Emotion::Anger,    Emotion::Hope,   Emotion::Fear,
};

inline std::string_view emotion_name(Emotion e) {
  switch (e) {
    case Emotion::Joy: return "joy";
    case Emotion::Distress: return "distress";
    case Emotion::Relief: return "relief";
    case Emotion::Disappointment: return "disappointment";
    case Emotion::Admiration: return "admiration";
    case Emotion::Anger: return "anger";
    case Emotion::Hope: return "hope";
    case Emotion::Fear: return "fear";
  }
  return "unknown";
}

/// Recruiter emotion intensities, each in [0, 1].
struct EmotionState {
  std::array<double, 8> values{};

  double operator[](Emotion e) const { return values[static_cast<size_t>(e)]; }
  double& operator[](Emotion e) { return values[static_cast<size_t>(e)]; }

  bool operator==(const EmotionState&) const = default;
};

/// Appraises a turn against expectations. With delta = P_d - P_e:
///   Joy / Distress follow the detected performance itself;
///   Admiration and Relief reward surpassing low expectations;
///   Disappointment and Anger punish falling short of high ones;
///   Hope and Fear follow the recent performance trend (mean change of
///   P_d over the last turns).
/// Each rule output is blended with the decayed previous intensity —
/// emotions are turn-transient, carrying at most a brief echo.
inline EmotionState appraise(double p_d, double p_e, const EmotionState& previous,
                             double trend = 0.0, double decay = 0.5) {
  if (p_d < -1.0 || p_d > 1.0 || !std::isfinite(p_d)) {
    throw ContractError("appraise: P_d outside [-1, 1]");
  }
  if (p_e < -1.0 || p_e > 1.0 || !std::isfinite(p_e)) {
    throw ContractError("appraise: P_e outside [-1, 1]");
  }
  const double delta = p_d - p_e;

  EmotionState e;
  e[Emotion::Joy] = clamp01(p_d);
  e[Emotion::Distress] = clamp01(-p_d);
  e[Emotion::Admiration] = p_e <= 0.0 ? clamp01(delta) : 0.0;
  e[Emotion::Relief] = (p_e < 0.0 && p_d >= 0.0) ? clamp01(delta) : 0.0;
  e[Emotion::Disappointment] = p_e > 0.0 ? clamp01(-delta) : 0.0;
  e[Emotion::Anger] = (p_e > 0.0 && p_d < 0.0) ? clamp01(-delta) : 0.0;
  e[Emotion::Hope] = clamp01(trend);
  e[Emotion::Fear] = clamp01(-trend);

  for (Emotion k : kAllEmotions) {
    e[k] = std::max(e[k], previous[k] * decay);
  }
  return e;
}

}  // namespace vira::affect
