#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vira/affect/engine.hpp"
#include "vira/core.hpp"
#include "vira/model/performance.hpp"
#include "vira/model/turn.hpp"
#include "vira/session/config.hpp"

namespace vira::session {

inline constexpr const char* kLogSchema = "vira.session-log";
inline constexpr int kLogVersion = 1;

/// The serialized trace of one completed turn through the whole pipeline.
struct TurnRecord {
  int turn = 0;
  std::string node_id;
  std::string question;
  std::vector<std::string> topics;
  double p_e = 0.0;
  model::TurnSummary summary;
  model::PerformanceIndex performance;
  affect::EmotionState emotions;
  affect::MoodState mood;
  affect::AttitudeState attitudes;
  std::map<std::string, double> beliefs;
  std::map<std::string, double> desires;
  std::optional<std::string> next_node;
};

namespace detail {

using Json = nlohmann::ordered_json;

inline Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

inline std::optional<double> opt_from(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

inline Json summary_to_json(const model::TurnSummary& s) {
  Json j;
  j["turn_index"] = s.turn_index;
  j["response_latency"] = opt(s.response_latency);
  j["speech_duration"] = s.speech_duration;
  j["speech_rate"] = opt(s.speech_rate);
  j["mean_loudness_db"] = opt(s.mean_loudness_db);
  j["pitch_mean_hz"] = opt(s.pitch_mean_hz);
  j["pitch_stdev_hz"] = opt(s.pitch_stdev_hz);
  j["jitter_mean"] = opt(s.jitter_mean);
  j["shimmer_mean"] = opt(s.shimmer_mean);
  j["hnr_mean_db"] = opt(s.hnr_mean_db);
  j["voice_breaks"] = s.voice_breaks;
  j["interrupted"] = s.interrupted;
  return j;
}

inline model::TurnSummary summary_from_json(const nlohmann::json& j) {
  model::TurnSummary s;
  s.turn_index = j.value("turn_index", 1);
  s.response_latency = opt_from(j, "response_latency");
  s.speech_duration = j.value("speech_duration", 0.0);
  s.speech_rate = opt_from(j, "speech_rate");
  s.mean_loudness_db = opt_from(j, "mean_loudness_db");
  s.pitch_mean_hz = opt_from(j, "pitch_mean_hz");
  s.pitch_stdev_hz = opt_from(j, "pitch_stdev_hz");
  s.jitter_mean = opt_from(j, "jitter_mean");
  s.shimmer_mean = opt_from(j, "shimmer_mean");
  s.hnr_mean_db = opt_from(j, "hnr_mean_db");
  s.voice_breaks = j.value("voice_breaks", 0);
  s.interrupted = j.value("interrupted", false);
  return s;
}

inline Json performance_to_json(const model::PerformanceIndex& p) {
  Json j;
  j["p_d"] = p.value;
  j["calibrating"] = p.calibrating;
  Json sub;
  for (const auto& [stat, score] : p.sub_scores) sub[std::string(score_stat_name(stat))] = score;
  j["sub_scores"] = sub.is_null() ? Json::object() : sub;
  Json peaks = Json::array();
  for (model::StatId id : p.peaks) peaks.push_back(std::string(stat_name(id)));
  j["peaks"] = peaks;
  return j;
}

inline model::PerformanceIndex performance_from_json(const nlohmann::json& j) {
  model::PerformanceIndex p;
  p.value = j.at("p_d").get<double>();
  p.calibrating = j.value("calibrating", false);
  if (j.contains("sub_scores")) {
    for (const auto& [name, score] : j.at("sub_scores").items()) {
      if (auto stat = model::score_stat_from_name(name)) p.sub_scores[*stat] = score.get<double>();
    }
  }
  if (j.contains("peaks")) {
    for (const auto& name : j.at("peaks")) {
      for (model::StatId id : model::kAllStats) {
        if (stat_name(id) == name.get<std::string>()) p.peaks.insert(id);
      }
    }
  }
  return p;
}

inline Json emotions_to_json(const affect::EmotionState& e) {
  Json j;
  for (affect::Emotion k : affect::kAllEmotions) j[std::string(emotion_name(k))] = e[k];
  return j;
}

inline affect::EmotionState emotions_from_json(const nlohmann::json& j) {
  affect::EmotionState e;
  for (affect::Emotion k : affect::kAllEmotions) {
    e[k] = j.value(std::string(emotion_name(k)), 0.0);
  }
  return e;
}

inline Json mood_to_json(const affect::MoodState& m) {
  Json j;
  j["pad"] = {m.pad.pleasure, m.pad.arousal, m.pad.dominance};
  j["label"] = std::string(mood_label_name(m.label));
  j["intensity"] = m.label_intensity;
  return j;
}

inline affect::MoodState mood_from_json(const nlohmann::json& j) {
  affect::MoodState m;
  const auto& pad = j.at("pad");
  m.pad.pleasure = pad.at(0).get<double>();
  m.pad.arousal = pad.at(1).get<double>();
  m.pad.dominance = pad.at(2).get<double>();
  const std::string label = j.at("label").get<std::string>();
  for (auto l : {affect::MoodLabel::Neutral, affect::MoodLabel::Relaxed, affect::MoodLabel::Exuberant,
                 affect::MoodLabel::Hostile, affect::MoodLabel::Bored, affect::MoodLabel::Disdainful}) {
    if (mood_label_name(l) == label) m.label = l;
  }
  m.label_intensity = j.at("intensity").get<double>();
  return m;
}

inline Json attitudes_to_json(const affect::AttitudeState& a) {
  Json j;
  Json values;
  for (affect::Attitude k : affect::kAllAttitudes) values[std::string(attitude_name(k))] = a[k];
  j["values"] = values;
  j["dominant"] = std::string(attitude_name(a.dominant));
  return j;
}

inline affect::AttitudeState attitudes_from_json(const nlohmann::json& j) {
  affect::AttitudeState a;
  const auto& values = j.at("values");
  for (affect::Attitude k : affect::kAllAttitudes) {
    a[k] = values.value(std::string(attitude_name(k)), 0.0);
  }
  const std::string dom = j.at("dominant").get<std::string>();
  for (affect::Attitude k : affect::kAllAttitudes) {
    if (attitude_name(k) == dom) a.dominant = k;
  }
  return a;
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const TurnRecord& r) {
  nlohmann::ordered_json j;
  j["turn"] = r.turn;
  j["node"] = r.node_id;
  j["question"] = r.question;
  j["topics"] = r.topics;
  j["p_e"] = r.p_e;
  j["summary"] = detail::summary_to_json(r.summary);
  j["performance"] = detail::performance_to_json(r.performance);
  j["emotions"] = detail::emotions_to_json(r.emotions);
  j["mood"] = detail::mood_to_json(r.mood);
  j["attitudes"] = detail::attitudes_to_json(r.attitudes);
  j["beliefs"] = r.beliefs;
  j["desires"] = r.desires;
  j["next"] = r.next_node ? nlohmann::ordered_json(*r.next_node) : nlohmann::ordered_json(nullptr);
  return j;
}

inline TurnRecord turn_record_from_json(const nlohmann::json& j) {
  TurnRecord r;
  r.turn = j.at("turn").get<int>();
  r.node_id = j.at("node").get<std::string>();
  r.question = j.value("question", std::string{});
  if (j.contains("topics")) {
    for (const auto& t : j.at("topics")) r.topics.push_back(t.get<std::string>());
  }
  r.p_e = j.at("p_e").get<double>();
  r.summary = detail::summary_from_json(j.at("summary"));
  r.performance = detail::performance_from_json(j.at("performance"));
  r.emotions = detail::emotions_from_json(j.at("emotions"));
  r.mood = detail::mood_from_json(j.at("mood"));
  r.attitudes = detail::attitudes_from_json(j.at("attitudes"));
  if (j.contains("beliefs")) {
    for (const auto& [k, v] : j.at("beliefs").items()) r.beliefs[k] = v.get<double>();
  }
  if (j.contains("desires")) {
    for (const auto& [k, v] : j.at("desires").items()) r.desires[k] = v.get<double>();
  }
  if (j.contains("next") && !j.at("next").is_null()) r.next_node = j.at("next").get<std::string>();
  return r;
}

struct SessionLog {
  nlohmann::ordered_json header;
  std::vector<TurnRecord> records;
};

inline void write_session_log(const std::filesystem::path& path, const SessionLog& log) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write session log: " + path.string());
  os << log.header.dump() << '\n';
  for (const auto& r : log.records) os << to_json(r).dump() << '\n';
}

inline SessionLog read_session_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open session log: " + path.string());
  SessionLog log;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (line_no == 1) {
      if (!j.contains("schema") || j.at("schema") != kLogSchema) {
        throw ValidationError(path.string() + ":1: not a session log (missing schema header)");
      }
      if (j.value("version", 0) != kLogVersion) {
        throw ValidationError(path.string() + ":1: unsupported log version");
      }
      log.header = j;
    } else {
      try {
        log.records.push_back(turn_record_from_json(j));
      } catch (const nlohmann::json::exception& e) {
        throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
      }
    }
  }
  if (log.header.is_null()) {
    throw ValidationError(path.string() + ": empty log, expected a schema header line");
  }
  return log;
}

}  // namespace vira::session
