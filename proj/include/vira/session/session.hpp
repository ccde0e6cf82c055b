#pragma once

#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vira/affect/engine.hpp"
#include "vira/audio/wav.hpp"
#include "vira/core.hpp"
#include "vira/cue/stream.hpp"
#include "vira/model/baseline.hpp"
#include "vira/model/performance.hpp"
#include "vira/model/turn.hpp"
#include "vira/scenario/scenario.hpp"
#include "vira/session/config.hpp"
#include "vira/session/log.hpp"
#include "vira/tom/mind.hpp"

namespace vira::session {

/// One turn's worth of cue events on a turn-local clock (t = 0 at the
/// start of the turn's listening window).
struct TurnInput {
  std::vector<cue::CueEvent> events;
  double question_end = 0.0;  // turn-local; speech before this is an interruption
  bool present = false;       // false: no audio was captured, treat as silence
};

namespace detail {

inline nlohmann::json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace detail

/// Loads a WAV manifest: {"turns": [{"audio": "turn1.wav", "question_end_s": 0.0}, ...]}.
/// Relative audio paths resolve against the manifest's directory. An entry
/// with no audio stands for a missing capture and becomes a silent turn.
inline std::vector<TurnInput> load_audio_manifest(const std::filesystem::path& manifest_path,
                                                  const SessionConfig& cfg) {
  const auto doc = detail::parse_json_file(manifest_path);
  if (!doc.contains("turns") || !doc.at("turns").is_array()) {
    throw ValidationError(manifest_path.string() + ": manifest needs a \"turns\" array");
  }
  const auto base = manifest_path.parent_path();
  std::vector<TurnInput> turns;
  for (const auto& t : doc.at("turns")) {
    TurnInput input;
    input.question_end = t.value("question_end_s", 0.0);
    if (t.contains("audio") && !t.at("audio").is_null()) {
      std::filesystem::path audio = t.at("audio").get<std::string>();
      if (audio.is_relative()) audio = base / audio;
      const auto wav = audio::read_wav(audio);
      input.events = cue::extract_cue_events(wav.samples, wav.sample_rate, cfg.audio, cfg.cues);
      input.present = true;
    }
    turns.push_back(std::move(input));
  }
  return turns;
}

/// Loads turn inputs from cue traces. A `.json` manifest mirrors the audio
/// manifest with "trace" entries; a bare `.jsonl` trace covers the whole
/// session and is sliced by the turn boundaries from the config.
inline std::vector<TurnInput> load_cue_trace(const std::filesystem::path& path,
                                             const SessionConfig& cfg) {
  std::vector<TurnInput> turns;
  if (path.extension() == ".jsonl") {
    if (cfg.turn_boundaries.empty()) {
      throw ConfigError("a single cue trace needs session.turn_boundaries in the config");
    }
    const auto events = cue::read_cue_trace(path);
    for (size_t i = 0; i < cfg.turn_boundaries.size(); ++i) {
      const auto& b = cfg.turn_boundaries[i];
      const double end = i + 1 < cfg.turn_boundaries.size()
                             ? cfg.turn_boundaries[i + 1].start
                             : std::numeric_limits<double>::infinity();
      TurnInput input;
      input.question_end = b.question_end - b.start;
      for (const auto& e : events) {
        if (e.time >= b.start && e.time < end) {
          cue::CueEvent local = e;
          local.time -= b.start;
          input.events.push_back(local);
        }
      }
      input.present = !input.events.empty();
      turns.push_back(std::move(input));
    }
    return turns;
  }

  const auto doc = detail::parse_json_file(path);
  if (!doc.contains("turns") || !doc.at("turns").is_array()) {
    throw ValidationError(path.string() + ": manifest needs a \"turns\" array");
  }
  const auto base = path.parent_path();
  for (const auto& t : doc.at("turns")) {
    TurnInput input;
    input.question_end = t.value("question_end_s", 0.0);
    if (t.contains("trace") && !t.at("trace").is_null()) {
      std::filesystem::path trace = t.at("trace").get<std::string>();
      if (trace.is_relative()) trace = base / trace;
      input.events = cue::read_cue_trace(trace);
      input.present = true;
    }
    turns.push_back(std::move(input));
  }
  return turns;
}

inline nlohmann::ordered_json make_session_header(const scenario::Graph& graph,
                                                  const SessionConfig& cfg) {
  nlohmann::ordered_json h;
  h["schema"] = kLogSchema;
  h["version"] = kLogVersion;
  h["topics"] = graph.topic_names();
  h["entry"] = graph.entry();
  h["calibration_turns"] = cfg.user_model.calibration_turns;
  h["scope"] = std::string(tom::scope_mode_name(cfg.scope));
  h["alpha"] = cfg.personality.alpha;
  nlohmann::ordered_json traits;
  for (affect::Attitude a : affect::kAllAttitudes) {
    traits[std::string(attitude_name(a))] = cfg.personality.trait(a);
  }
  h["personality"] = traits;
  nlohmann::ordered_json aff;
  aff["mood_step"] = cfg.affect_cfg.mood.step;
  aff["activation_threshold"] = cfg.affect_cfg.mood.activation_threshold;
  aff["disdain_dominance"] = cfg.affect_cfg.mood.disdain_dominance;
  aff["emotion_decay"] = cfg.affect_cfg.emotion_decay;
  aff["trend_window"] = cfg.affect_cfg.trend_window;
  aff["neutral_attentive_floor"] = cfg.affect_cfg.neutral_attentive_floor;
  h["affect"] = aff;
  h["max_turns"] = cfg.max_turns;
  h["seed"] = cfg.seed;
  return h;
}

/// Runs the full turn loop: question -> cue events -> performance index ->
/// affect update -> belief/desire update -> next-question choice. Turns
/// past the supplied inputs are treated as silence. Deterministic: the log
/// is a pure function of scenario, inputs and config.
inline SessionLog run_session(const scenario::Graph& graph, const std::vector<TurnInput>& inputs,
                              const SessionConfig& cfg) {
  cfg.validate();
  const auto all_topics = graph.topic_names();
  auto beliefs = tom::BeliefStore::create(all_topics);
  auto desires = tom::DesireStore::create(all_topics);
  affect::AffectEngine engine(cfg.personality, cfg.affect_cfg);

  const int k = cfg.user_model.calibration_turns;
  std::vector<model::TurnSummary> calibration_turns;
  std::optional<model::Baseline> baseline;

  SessionLog log;
  log.header = make_session_header(graph, cfg);

  std::string current = graph.entry();
  for (int turn = 1; turn <= cfg.max_turns; ++turn) {
    const auto& node = graph.node(current);
    static const TurnInput kSilentTurn{};
    const TurnInput& input =
        static_cast<size_t>(turn - 1) < inputs.size() ? inputs[turn - 1] : kSilentTurn;

    const auto summary = model::summarize_turn(input.events, input.question_end, turn);

    model::PerformanceIndex perf;
    if (turn <= k) {
      calibration_turns.push_back(summary);
      if (turn == k) baseline = model::calibrate(calibration_turns, cfg.user_model.stdev_floor_frac);
      perf = model::compute_performance(summary, cfg.user_model.profile_defaults, nullptr);
    } else {
      const auto profile = scenario::profile_for(node, &*baseline, cfg.user_model.profile_defaults);
      perf = model::compute_performance(summary, profile, &*baseline, cfg.user_model.peak_z);
    }

    const auto affect_snapshot = engine.step(perf.value, node.expected_performance);

    beliefs = tom::update_beliefs(std::move(beliefs), node.topics, perf.value,
                                  cfg.personality.alpha);
    const auto& scope_topics =
        cfg.scope == tom::ScopeMode::CurrentTopics ? node.topics : all_topics;
    desires = tom::update_desires(std::move(desires), affect_snapshot.attitudes, scope_topics,
                                  perf.value, cfg.personality.alpha);

    const auto feasible = graph.feasible_next(current);
    const scenario::Node* chosen = tom::select_goal(desires, feasible);

    TurnRecord r;
    r.turn = turn;
    r.node_id = node.id;
    r.question = node.text;
    r.topics = node.topics;
    r.p_e = node.expected_performance;
    r.summary = summary;
    r.performance = perf;
    r.emotions = affect_snapshot.emotions;
    r.mood = affect_snapshot.mood;
    r.attitudes = affect_snapshot.attitudes;
    r.beliefs = beliefs.values;
    r.desires = desires.values;
    if (chosen) r.next_node = chosen->id;
    log.records.push_back(std::move(r));

    if (!chosen) break;
    current = chosen->id;
  }
  return log;
}

/// One field-level divergence between a logged trajectory and its
/// recomputation.
struct ReplayDiff {
  int turn = 0;
  std::string field;
  std::string logged;
  std::string recomputed;
};

namespace detail {

inline std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace detail

/// Re-derives the affect/belief/desire trajectories from the logged P_d
/// and P_e values and reports every divergence from the logged states.
/// An untampered log replays to an empty diff; an edited P_d diverges
/// from that turn onward.
inline std::vector<ReplayDiff> replay_session(const SessionLog& log) {
  const auto& h = log.header;
  affect::Personality personality;
  personality.alpha = h.value("alpha", personality.alpha);
  if (h.contains("personality")) {
    for (affect::Attitude a : affect::kAllAttitudes) {
      personality.set_trait(
          a, h.at("personality").value(std::string(attitude_name(a)), personality.trait(a)));
    }
  }
  affect::AffectConfig affect_cfg;
  if (h.contains("affect")) {
    const auto& aff = h.at("affect");
    affect_cfg.mood.step = aff.value("mood_step", affect_cfg.mood.step);
    affect_cfg.mood.activation_threshold =
        aff.value("activation_threshold", affect_cfg.mood.activation_threshold);
    affect_cfg.mood.disdain_dominance = aff.value("disdain_dominance", affect_cfg.mood.disdain_dominance);
    affect_cfg.emotion_decay = aff.value("emotion_decay", affect_cfg.emotion_decay);
    affect_cfg.trend_window = aff.value("trend_window", affect_cfg.trend_window);
    affect_cfg.neutral_attentive_floor =
        aff.value("neutral_attentive_floor", affect_cfg.neutral_attentive_floor);
  }
  std::vector<std::string> all_topics;
  if (h.contains("topics")) {
    for (const auto& t : h.at("topics")) all_topics.push_back(t.get<std::string>());
  }
  const auto scope = tom::scope_mode_from_name(h.value("scope", "current-topics"));

  affect::AffectEngine engine(personality, affect_cfg);
  auto beliefs = tom::BeliefStore::create(all_topics);
  auto desires = tom::DesireStore::create(all_topics);

  std::vector<ReplayDiff> diffs;
  auto check = [&](int turn, const std::string& field, double logged, double recomputed) {
    if (logged != recomputed) {
      diffs.push_back({turn, field, detail::num(logged), detail::num(recomputed)});
    }
  };

  for (const auto& r : log.records) {
    const double p_d = r.performance.value;
    const auto snapshot = engine.step(p_d, r.p_e);

    for (affect::Emotion e : affect::kAllEmotions) {
      check(r.turn, "emotions." + std::string(emotion_name(e)), r.emotions[e],
            snapshot.emotions[e]);
    }
    check(r.turn, "mood.pleasure", r.mood.pad.pleasure, snapshot.mood.pad.pleasure);
    check(r.turn, "mood.arousal", r.mood.pad.arousal, snapshot.mood.pad.arousal);
    check(r.turn, "mood.dominance", r.mood.pad.dominance, snapshot.mood.pad.dominance);
    check(r.turn, "mood.intensity", r.mood.label_intensity, snapshot.mood.label_intensity);
    if (r.mood.label != snapshot.mood.label) {
      diffs.push_back({r.turn, "mood.label", std::string(mood_label_name(r.mood.label)),
                       std::string(mood_label_name(snapshot.mood.label))});
    }
    for (affect::Attitude a : affect::kAllAttitudes) {
      check(r.turn, "attitudes." + std::string(attitude_name(a)), r.attitudes[a],
            snapshot.attitudes[a]);
    }
    if (r.attitudes.dominant != snapshot.attitudes.dominant) {
      diffs.push_back({r.turn, "attitudes.dominant",
                       std::string(attitude_name(r.attitudes.dominant)),
                       std::string(attitude_name(snapshot.attitudes.dominant))});
    }

    beliefs = tom::update_beliefs(std::move(beliefs), r.topics, p_d, personality.alpha);
    const auto& scope_topics = scope == tom::ScopeMode::CurrentTopics ? r.topics : all_topics;
    desires = tom::update_desires(std::move(desires), snapshot.attitudes, scope_topics, p_d,
                                  personality.alpha);

    for (const auto& [topic, value] : r.beliefs) {
      if (!beliefs.values.count(topic)) {
        diffs.push_back({r.turn, "beliefs." + topic, detail::num(value), "<missing>"});
        continue;
      }
      check(r.turn, "beliefs." + topic, value, beliefs.values.at(topic));
    }
    for (const auto& [topic, value] : r.desires) {
      if (!desires.values.count(topic)) {
        diffs.push_back({r.turn, "desires." + topic, detail::num(value), "<missing>"});
        continue;
      }
      check(r.turn, "desires." + topic, value, desires.values.at(topic));
    }
  }
  return diffs;
}

inline std::vector<ReplayDiff> replay_session(const std::filesystem::path& log_path) {
  return replay_session(read_session_log(log_path));
}

}  // namespace vira::session
