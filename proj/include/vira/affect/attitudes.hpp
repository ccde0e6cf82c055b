#pragma once

#include <array>
#include <string_view>

#include "vira/affect/mood.hpp"
#include "vira/core.hpp"

namespace vira::affect {

/// Interaction stances, positive set first (declaration order breaks ties).
enum class Attitude { Friendly, Supportive, Attentive, Aggressive, Dominant, Inattentive, Gossip };

inline constexpr std::array<Attitude, 7> kAllAttitudes = {
    Attitude::Friendly,  Attitude::Supportive, Attitude::Attentive, Attitude::Aggressive,
    Attitude::Dominant,  Attitude::Inattentive, Attitude::Gossip,
};

inline std::string_view attitude_name(Attitude a) {
  switch (a) {
    case Attitude::Friendly: return "friendly";
    case Attitude::Supportive: return "supportive";
    case Attitude::Attentive: return "attentive";
    case Attitude::Aggressive: return "aggressive";
    case Attitude::Dominant: return "dominant";
    case Attitude::Inattentive: return "inattentive";
    case Attitude::Gossip: return "gossip";
  }
  return "unknown";
}

inline bool attitude_is_positive(Attitude a) {
  return a == Attitude::Friendly || a == Attitude::Supportive || a == Attitude::Attentive;
}

struct AttitudeState {
  std::array<double, 7> values{};
  Attitude dominant = Attitude::Attentive;

  double operator[](Attitude a) const { return values[static_cast<size_t>(a)]; }
  double& operator[](Attitude a) { return values[static_cast<size_t>(a)]; }

  bool operator==(const AttitudeState&) const = default;
};

/// Stable dispositions of the recruiter: per-attitude trait levels plus
/// the learning rate alpha that scales belief/desire updates (an impulsive
/// recruiter has alpha near 1, a moderate one near 0).
struct Personality {
  std::array<double, 7> traits{};
  double alpha = 0.3;

  double trait(Attitude a) const { return traits[static_cast<size_t>(a)]; }
  void set_trait(Attitude a, double v) { traits[static_cast<size_t>(a)] = clamp01(v); }
};

/// An attitude can be triggered by mood or by personality; whichever
/// activation is stronger wins (fuzzy OR). A neutral mood keeps a small
/// attentive floor so the recruiter never goes fully blank.
inline AttitudeState compute_attitudes(const MoodState& mood, const Personality& personality,
                                       double neutral_attentive_floor = 0.3) {
  AttitudeState out;

  std::array<double, 7> mood_activation{};
  auto activate = [&](Attitude a) { mood_activation[static_cast<size_t>(a)] = mood.label_intensity; };
  switch (mood.label) {
    case MoodLabel::Hostile: activate(Attitude::Aggressive); break;
    case MoodLabel::Exuberant: activate(Attitude::Friendly); break;
    case MoodLabel::Relaxed:
      activate(Attitude::Supportive);
      activate(Attitude::Attentive);
      break;
    case MoodLabel::Bored: activate(Attitude::Inattentive); break;
    case MoodLabel::Disdainful:
      activate(Attitude::Dominant);
      activate(Attitude::Gossip);
      break;
    case MoodLabel::Neutral:
      mood_activation[static_cast<size_t>(Attitude::Attentive)] = neutral_attentive_floor;
      break;
  }

  for (Attitude a : kAllAttitudes) {
    out[a] = clamp01(std::max(mood_activation[static_cast<size_t>(a)], personality.trait(a)));
  }

  Attitude best = Attitude::Friendly;
  for (Attitude a : kAllAttitudes) {
    if (out[a] > out[best]) best = a;  // strict: earlier (positive-first) order wins ties
  }
  out.dominant = best;
  return out;
}

}  // namespace vira::affect
