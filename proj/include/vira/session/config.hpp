#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vira/affect/engine.hpp"
#include "vira/audio/framing.hpp"
#include "vira/core.hpp"
#include "vira/cue/stream.hpp"
#include "vira/model/performance.hpp"
#include "vira/scenario/scenario.hpp"
#include "vira/tom/mind.hpp"

namespace vira::session {

struct UserModelSettings {
  int calibration_turns = 3;
  double peak_z = 2.0;
  double stdev_floor_frac = 0.05;
  model::ExpectedCueProfile profile_defaults;
};

/// Turn window inside a single session-long cue trace.
struct TurnBoundary {
  double start = 0.0;
  double question_end = 0.0;  // absolute, same clock as the trace
};

/// Everything a session run needs beyond the scenario itself. All fields
/// have working defaults; a config file overrides them selectively.
struct SessionConfig {
  audio::FeatureConfig audio;
  cue::CueStreamConfig cues;
  UserModelSettings user_model;
  affect::AffectConfig affect_cfg;
  affect::Personality personality;
  tom::ScopeMode scope = tom::ScopeMode::CurrentTopics;
  int max_turns = 50;
  int64_t seed = 0;  // reserved: the pipeline is deterministic
  std::vector<TurnBoundary> turn_boundaries;

  void validate() const {
    if (user_model.calibration_turns < 3) {
      throw CalibrationError("calibration-incomplete: calibration_turns must be >= 3, got " +
                             std::to_string(user_model.calibration_turns));
    }
    if (max_turns < 1) throw ConfigError("max_turns must be >= 1");
  }
};

namespace detail {

inline void parse_audio(const nlohmann::json& j, audio::FeatureConfig& a) {
  a.window_ms = j.value("window_ms", a.window_ms);
  a.hop_ms = j.value("hop_ms", a.hop_ms);
  a.f0_min_hz = j.value("f0_min", a.f0_min_hz);
  a.f0_max_hz = j.value("f0_max", a.f0_max_hz);
  a.voicing_threshold = j.value("voicing_threshold", a.voicing_threshold);
  a.vad_margin_db = j.value("vad_margin_db", a.vad_margin_db);
  a.noise_floor_db = j.value("noise_floor_db", a.noise_floor_db);
  a.max_break_s = j.value("max_break_s", a.max_break_s);
  a.zcr_speech_max = j.value("zcr_speech_max", a.zcr_speech_max);
  a.syllable_prominence_db = j.value("syllable_prominence_db", a.syllable_prominence_db);
}

inline void parse_cues(const nlohmann::json& j, cue::CueStreamConfig& c) {
  c.hysteresis_fraction = j.value("hysteresis_fraction", c.hysteresis_fraction);
  if (j.contains("discrete_thresholds")) {
    for (const auto& [name, value] : j.at("discrete_thresholds").items()) {
      const auto kind = cue::cue_from_name(name);
      if (!kind) throw ConfigError("unknown cue in discrete_thresholds: " + name);
      c.discrete_thresholds[*kind] = value.get<double>();
    }
  }
}

inline void parse_user_model(const nlohmann::json& j, UserModelSettings& u) {
  u.calibration_turns = j.value("calibration_turns", u.calibration_turns);
  u.peak_z = j.value("peak_z", u.peak_z);
  u.stdev_floor_frac = j.value("stdev_floor_frac", u.stdev_floor_frac);
  auto& p = u.profile_defaults;
  if (j.contains("bands")) {
    const auto& bands = j.at("bands");
    auto band = [&](const char* key, model::ScoreBand& slot) {
      if (bands.contains(key)) slot = scenario::band_from_json(bands.at(key), "config bands");
    };
    band("latency", p.latency);
    band("rate", p.rate);
    band("pitch_stdev", p.pitch_stdev);
    band("jitter", p.jitter);
    band("shimmer", p.shimmer);
    band("breaks", p.breaks);
  }
  if (j.contains("weights")) {
    for (const auto& [name, value] : j.at("weights").items()) {
      const auto stat = model::score_stat_from_name(name);
      if (!stat) throw ConfigError("unknown weight key: " + name);
      p.weights[*stat] = value.get<double>();
    }
  }
}

inline void parse_affect(const nlohmann::json& j, affect::AffectConfig& a) {
  a.mood.step = j.value("mood_step", a.mood.step);
  a.mood.activation_threshold = j.value("activation_threshold", a.mood.activation_threshold);
  a.mood.disdain_dominance = j.value("disdain_dominance", a.mood.disdain_dominance);
  a.emotion_decay = j.value("emotion_decay", a.emotion_decay);
  a.trend_window = j.value("trend_window", a.trend_window);
  a.neutral_attentive_floor = j.value("neutral_attentive_floor", a.neutral_attentive_floor);
}

inline void parse_personality(const nlohmann::json& j, affect::Personality& p) {
  p.alpha = j.value("alpha", p.alpha);
  if (p.alpha < 0.0 || p.alpha > 1.0) throw ConfigError("personality alpha must be in [0, 1]");
  if (j.contains("traits")) {
    for (const auto& [name, value] : j.at("traits").items()) {
      bool known = false;
      for (affect::Attitude a : affect::kAllAttitudes) {
        if (attitude_name(a) == name) {
          p.set_trait(a, value.get<double>());
          known = true;
          break;
        }
      }
      if (!known) throw ConfigError("unknown personality trait: " + name);
    }
  }
}

}  // namespace detail

inline SessionConfig config_from_json(const nlohmann::json& doc) {
  SessionConfig cfg;
  if (doc.contains("audio")) detail::parse_audio(doc.at("audio"), cfg.audio);
  if (doc.contains("cues")) detail::parse_cues(doc.at("cues"), cfg.cues);
  if (doc.contains("user_model")) detail::parse_user_model(doc.at("user_model"), cfg.user_model);
  if (doc.contains("affect")) detail::parse_affect(doc.at("affect"), cfg.affect_cfg);
  if (doc.contains("personality")) detail::parse_personality(doc.at("personality"), cfg.personality);
  if (doc.contains("tom") && doc.at("tom").contains("scope")) {
    cfg.scope = tom::scope_mode_from_name(doc.at("tom").at("scope").get<std::string>());
  }
  if (doc.contains("session")) {
    const auto& s = doc.at("session");
    cfg.max_turns = s.value("max_turns", cfg.max_turns);
    cfg.seed = s.value("seed", cfg.seed);
    if (s.contains("turn_boundaries")) {
      for (const auto& b : s.at("turn_boundaries")) {
        TurnBoundary tb;
        tb.start = b.value("start", 0.0);
        tb.question_end = b.value("question_end", tb.start);
        cfg.turn_boundaries.push_back(tb);
      }
    }
  }
  cfg.validate();
  return cfg;
}

inline SessionConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  return config_from_json(doc);
}

/// Resolves the config: explicit path wins, then the VIRA_CONFIG
/// environment variable, then built-in defaults.
inline SessionConfig resolve_config(const std::optional<std::filesystem::path>& explicit_path) {
  if (explicit_path) return load_config(*explicit_path);
  if (const char* env = std::getenv("VIRA_CONFIG")) return load_config(env);
  return SessionConfig{};
}

}  // namespace vira::session
