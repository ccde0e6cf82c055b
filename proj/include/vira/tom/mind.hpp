#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vira/affect/attitudes.hpp"
#include "vira/core.hpp"
#include "vira/scenario/scenario.hpp"

namespace vira::tom {

/// Which topics a desire update touches: just the question's own topics,
/// or the whole topic set.
enum class ScopeMode { CurrentTopics, AllTopics };

inline std::string_view scope_mode_name(ScopeMode m) {
  return m == ScopeMode::CurrentTopics ? "current-topics" : "all-topics";
}

inline ScopeMode scope_mode_from_name(std::string_view name) {
  if (name == "current-topics") return ScopeMode::CurrentTopics;
  if (name == "all-topics") return ScopeMode::AllTopics;
  throw ConfigError("unknown desire scope mode: " + std::string(name));
}

namespace detail {

inline std::map<std::string, double> make_store(std::span<const std::string> topics, double init) {
  std::map<std::string, double> m;
  for (const auto& t : topics) m.emplace(t, init);
  return m;
}

}  // namespace detail

/// What the recruiter believes about the interviewee per topic, in [-1, 1].
/// Defined for exactly the scenario's topic set; unknown topics are a
/// contract break, not a silent insert.
struct BeliefStore {
  std::map<std::string, double> values;

  static BeliefStore create(std::span<const std::string> topics) {
    return {detail::make_store(topics, 0.0)};
  }

  double at(const std::string& topic) const {
    auto it = values.find(topic);
    if (it == values.end()) throw ContractError("unknown belief topic: " + topic);
    return it->second;
  }

  bool operator==(const BeliefStore&) const = default;
};

/// How much the recruiter wants to probe each topic, in [0, 1]. Starts at
/// neutral interest.
struct DesireStore {
  std::map<std::string, double> values;

  static DesireStore create(std::span<const std::string> topics) {
    return {detail::make_store(topics, 0.5)};
  }

  double at(const std::string& topic) const {
    auto it = values.find(topic);
    if (it == values.end()) throw ContractError("unknown desire topic: " + topic);
    return it->second;
  }

  bool operator==(const DesireStore&) const = default;
};

/// Belief update for the topics the answered question was about:
/// B <- clamp(B + alpha * P_d). Topics outside the question are untouched.
inline BeliefStore update_beliefs(BeliefStore store, std::span<const std::string> question_topics,
                                  double p_d, double alpha) {
  for (const auto& topic : question_topics) {
    auto it = store.values.find(topic);
    if (it == store.values.end()) throw ContractError("unknown belief topic: " + topic);
    it->second = clamp11(it->second + alpha * p_d);
  }
  return store;
}

/// Desire update conditioned on the recruiter's stance. A negatively
/// disposed recruiter grows interest in topics the interviewee handles
/// badly (and loses interest in ones they handle well); a positively
/// disposed recruiter mirrors that. Results clamp to [0, 1].
inline DesireStore update_desires(DesireStore store, const affect::AttitudeState& attitude,
                                  std::span<const std::string> scope_topics, double p_d,
                                  double alpha) {
  const bool positive = affect::attitude_is_positive(attitude.dominant);
  const double magnitude = alpha * std::abs(p_d);
  for (const auto& topic : scope_topics) {
    auto it = store.values.find(topic);
    if (it == store.values.end()) throw ContractError("unknown desire topic: " + topic);
    double delta;
    if (positive) {
      delta = p_d < 0.0 ? -magnitude : magnitude;
    } else {
      delta = p_d < 0.0 ? magnitude : -magnitude;
    }
    it->second = clamp01(it->second + delta);
  }
  return store;
}

/// Scores a candidate question by the strongest desire among its topics;
/// a question with no topics scores neutral.
inline double desire_score(const DesireStore& desires, const scenario::Node& node) {
  if (node.topics.empty()) return 0.5;
  double best = 0.0;
  for (const auto& t : node.topics) best = std::max(best, desires.at(t));
  return best;
}

/// Picks the feasible question with the maximum desire score; declaration
/// order breaks ties. A null result signals the end of the session.
inline const scenario::Node* select_goal(const DesireStore& desires,
                                         std::span<const scenario::Node* const> feasible) {
  const scenario::Node* best = nullptr;
  double best_score = -1.0;
  for (const scenario::Node* node : feasible) {
    const double score = desire_score(desires, *node);
    if (score > best_score) {
      best_score = score;
      best = node;
    }
  }
  return best;
}

}  // namespace vira::tom
