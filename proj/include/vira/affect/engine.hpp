#pragma once

#include <deque>

#include "vira/affect/attitudes.hpp"
#include "vira/affect/emotions.hpp"
#include "vira/affect/mood.hpp"

namespace vira::affect {

struct AffectConfig {
  MoodConfig mood;
  double emotion_decay = 0.5;
  int trend_window = 3;  // turns feeding the Hope/Fear trend
  double neutral_attentive_floor = 0.3;
};

struct AffectSnapshot {
  EmotionState emotions;
  MoodState mood;
  AttitudeState attitudes;
};

/// Per-session affect state machine, advanced once per turn. Snapshots are
/// plain values, safe to hand to the logger.
class AffectEngine {
 public:
  explicit AffectEngine(Personality personality, AffectConfig cfg = {})
      : personality_(personality), cfg_(cfg) {}

  const Personality& personality() const { return personality_; }

  AffectSnapshot step(double p_d, double p_e) {
    emotions_ = appraise(p_d, p_e, emotions_, trend(p_d), cfg_.emotion_decay);
    mood_ = update_mood(mood_, emotions_, cfg_.mood);
    const AttitudeState attitudes =
        compute_attitudes(mood_, personality_, cfg_.neutral_attentive_floor);

    pd_history_.push_back(p_d);
    while (pd_history_.size() > static_cast<size_t>(cfg_.trend_window)) {
      pd_history_.pop_front();
    }
    return {emotions_, mood_, attitudes};
  }

 private:
  /// Mean per-turn change of P_d over the trend window, ending with the
  /// step from the last turn to the current one. No history, no trend.
  double trend(double current_pd) const {
    if (pd_history_.empty()) return 0.0;
    double sum = 0.0;
    int n = 0;
    double prev = pd_history_.front();
    for (size_t i = 1; i < pd_history_.size(); ++i) {
      sum += pd_history_[i] - prev;
      prev = pd_history_[i];
      ++n;
    }
    sum += current_pd - prev;
    ++n;
    return sum / n;
  }

  Personality personality_;
  AffectConfig cfg_;
  EmotionState emotions_;
  MoodState mood_;
  std::deque<double> pd_history_;
};

}  // namespace vira::affect
