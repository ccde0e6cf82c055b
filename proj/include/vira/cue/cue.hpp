#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vira/core.hpp"

namespace vira::cue {

/// The recognised audio cue set.
enum class CueKind {
  VoiceActivity,
  Intensity,
  Loudness,
  Energy,
  Pitch,
  Jitter,
  Shimmer,
  VoiceBreaks,
  Harmonicity,
  SpeechRate,
  SpeechSegmentLength,
};

inline constexpr std::array<CueKind, 11> kAllCues = {
    CueKind::VoiceActivity, CueKind::Intensity,   CueKind::Loudness,
    CueKind::Energy,        CueKind::Pitch,       CueKind::Jitter,
    CueKind::Shimmer,       CueKind::VoiceBreaks, CueKind::Harmonicity,
    CueKind::SpeechRate,    CueKind::SpeechSegmentLength,
};

/// Continuous cues carry a once-per-second magnitude packet.
inline constexpr std::array<CueKind, 8> kContinuousCues = {
    CueKind::Energy,  CueKind::Intensity, CueKind::Loudness,    CueKind::Pitch,
    CueKind::Jitter,  CueKind::Shimmer,   CueKind::Harmonicity, CueKind::SpeechRate,
};

inline std::string_view cue_name(CueKind kind) {
  switch (kind) {
    case CueKind::VoiceActivity: return "voice_activity";
    case CueKind::Intensity: return "intensity";
    case CueKind::Loudness: return "loudness";
    case CueKind::Energy: return "energy";
    case CueKind::Pitch: return "pitch";
    case CueKind::Jitter: return "jitter";
    case CueKind::Shimmer: return "shimmer";
    case CueKind::VoiceBreaks: return "voice_breaks";
    case CueKind::Harmonicity: return "harmonicity";
    case CueKind::SpeechRate: return "speech_rate";
    case CueKind::SpeechSegmentLength: return "speech_segment_length";
  }
  return "unknown";
}

inline std::optional<CueKind> cue_from_name(std::string_view name) {
  for (CueKind kind : kAllCues) {
    if (cue_name(kind) == name) return kind;
  }
  return std::nullopt;
}

enum class CueEventKind { Discrete, Continuous };

/// One observed social-cue event: either a discrete occurrence (onset,
/// segment end, threshold crossing) or a once-per-second magnitude packet.
struct CueEvent {
  CueKind cue = CueKind::VoiceActivity;
  double time = 0.0;  // seconds
  CueEventKind kind = CueEventKind::Discrete;
  std::optional<double> value;     // cue-native units; absent for pure occurrences
  std::optional<double> duration;  // only for SpeechSegmentLength

  bool operator==(const CueEvent&) const = default;
};

// Trace line format: {"t": s, "cue": name, "kind": "discrete"|"continuous",
//                     "value": number|null, "duration": number|null}
inline nlohmann::ordered_json to_json(const CueEvent& e) {
  nlohmann::ordered_json j;
  j["t"] = e.time;
  j["cue"] = std::string(cue_name(e.cue));
  j["kind"] = e.kind == CueEventKind::Discrete ? "discrete" : "continuous";
  j["value"] = e.value ? nlohmann::ordered_json(*e.value) : nlohmann::ordered_json(nullptr);
  j["duration"] = e.duration ? nlohmann::ordered_json(*e.duration) : nlohmann::ordered_json(nullptr);
  return j;
}

inline CueEvent cue_event_from_json(const nlohmann::json& j) {
  CueEvent e;
  if (!j.contains("t") || !j.contains("cue") || !j.contains("kind")) {
    throw ValidationError("cue event missing required field (t/cue/kind)");
  }
  e.time = j.at("t").get<double>();
  const auto kind = cue_from_name(j.at("cue").get<std::string>());
  if (!kind) throw ValidationError("unknown cue name: " + j.at("cue").get<std::string>());
  e.cue = *kind;
  const std::string k = j.at("kind").get<std::string>();
  if (k == "discrete") {
    e.kind = CueEventKind::Discrete;
  } else if (k == "continuous") {
    e.kind = CueEventKind::Continuous;
  } else {
    throw ValidationError("unknown cue event kind: " + k);
  }
  if (j.contains("value") && !j.at("value").is_null()) e.value = j.at("value").get<double>();
  if (j.contains("duration") && !j.at("duration").is_null()) e.duration = j.at("duration").get<double>();
  return e;
}

inline void write_cue_trace(const std::filesystem::path& path, std::span<const CueEvent> events) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write cue trace: " + path.string());
  for (const auto& e : events) os << to_json(e).dump() << '\n';
}

inline std::vector<CueEvent> read_cue_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open cue trace: " + path.string());
  std::vector<CueEvent> events;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& err) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": " + err.what());
    }
    events.push_back(cue_event_from_json(j));
  }
  return events;
}

}  // namespace vira::cue
