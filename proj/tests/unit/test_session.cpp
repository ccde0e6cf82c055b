#include <catch2/catch_amalgamated.hpp>
#include <fstream>
#include <sstream>

#include "support/tmpdir.hpp"
#include "vira/session/session.hpp"

using namespace vira;
using Catch::Approx;
using nlohmann::json;

namespace {

scenario::Graph linear_scenario(int n_nodes) {
  std::vector<scenario::Topic> topics = {{"motivation", 0}, {"skills", 1}};
  std::vector<scenario::Node> nodes;
  for (int i = 1; i <= n_nodes; ++i) {
    scenario::Node node;
    node.id = "q" + std::to_string(i);
    node.text = "Question " + std::to_string(i);
    node.topics = {i % 2 == 0 ? "skills" : "motivation"};
    node.difficulty = 0.2;
    node.expected_performance = scenario::default_expected_performance(node.difficulty);
    if (i < n_nodes) node.next = {"q" + std::to_string(i + 1)};
    nodes.push_back(std::move(node));
  }
  return scenario::Graph(std::move(topics), "q1", std::move(nodes));
}

/// A steady, decent answer: 8.5 s of speech, sane prosody.
session::TurnInput decent_turn() {
  session::TurnInput input;
  input.present = true;
  input.question_end = 0.0;
  input.events.push_back({cue::CueKind::VoiceActivity, 0.8, cue::CueEventKind::Discrete, {}, {}});
  input.events.push_back(
      {cue::CueKind::SpeechSegmentLength, 9.3, cue::CueEventKind::Discrete, {}, 8.5});
  for (int s = 1; s <= 9; ++s) {
    const double t = s;
    input.events.push_back({cue::CueKind::Energy, t, cue::CueEventKind::Continuous, -22.0, {}});
    input.events.push_back({cue::CueKind::Pitch, t, cue::CueEventKind::Continuous, 120.0 + 40.0 * (s % 2), {}});
    input.events.push_back({cue::CueKind::SpeechRate, t, cue::CueEventKind::Continuous, 8.5 * 4.0 / 9.0, {}});
    input.events.push_back({cue::CueKind::Jitter, t, cue::CueEventKind::Continuous, 0.008, {}});
    input.events.push_back({cue::CueKind::Shimmer, t, cue::CueEventKind::Continuous, 0.03, {}});
    input.events.push_back({cue::CueKind::Harmonicity, t, cue::CueEventKind::Continuous, 14.0, {}});
  }
  std::sort(input.events.begin(), input.events.end(),
            [](const cue::CueEvent& a, const cue::CueEvent& b) { return a.time < b.time; });
  return input;
}

std::vector<session::TurnInput> decent_session(int turns) {
  return std::vector<session::TurnInput>(static_cast<size_t>(turns), decent_turn());
}

std::string file_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("a linear scenario walks to its terminal node", "[session]") {
  auto graph = linear_scenario(8);
  session::SessionConfig cfg;
  auto log = session::run_session(graph, decent_session(8), cfg);

  REQUIRE(log.records.size() == 8);
  CHECK(log.records.front().node_id == "q1");
  CHECK(log.records.back().node_id == "q8");
  CHECK_FALSE(log.records.back().next_node.has_value());
  for (size_t i = 0; i + 1 < log.records.size(); ++i) {
    REQUIRE(log.records[i].next_node.has_value());
    CHECK(*log.records[i].next_node == log.records[i + 1].node_id);
  }
}

TEST_CASE("calibration turns are neutral, later turns are scored", "[session]") {
  auto graph = linear_scenario(6);
  session::SessionConfig cfg;
  auto inputs = decent_session(6);
  auto log = session::run_session(graph, inputs, cfg);

  REQUIRE(log.records.size() == 6);
  for (int i = 0; i < 3; ++i) {
    CHECK(log.records[static_cast<size_t>(i)].performance.value == 0.0);
    CHECK(log.records[static_cast<size_t>(i)].performance.calibrating);
  }
  // consistent answers near the calibrated baseline score positive
  for (int i = 3; i < 6; ++i) {
    CHECK(log.records[static_cast<size_t>(i)].performance.value > 0.0);
  }
}

TEST_CASE("a missing turn is treated as silence and scores badly", "[session]") {
  auto graph = linear_scenario(6);
  session::SessionConfig cfg;
  auto inputs = decent_session(4);  // turns 5 and 6 have no audio
  auto log = session::run_session(graph, inputs, cfg);

  REQUIRE(log.records.size() == 6);
  CHECK(log.records[4].summary.speech_duration == 0.0);
  CHECK(log.records[4].performance.value <= -0.4);
  CHECK(log.records[5].performance.value <= -0.4);
}

TEST_CASE("terminal before the cap stops early; a cycle hits the cap", "[session]") {
  session::SessionConfig cfg;
  cfg.max_turns = 10;

  SECTION("terminal at turn 5 of a 10-turn cap") {
    auto graph = linear_scenario(5);
    auto log = session::run_session(graph, decent_session(10), cfg);
    CHECK(log.records.size() == 5);
  }

  SECTION("cyclic graph is capped") {
    std::vector<scenario::Topic> topics = {{"skills", 0}};
    scenario::Node a, b, end;
    a.id = "a";
    a.topics = {"skills"};
    a.next = {"b"};
    b.id = "b";
    b.topics = {"skills"};
    b.next = {"a", "end"};
    end.id = "end";
    auto graph = scenario::Graph(topics, "a", {a, b, end});
    auto log = session::run_session(graph, decent_session(12), cfg);
    CHECK(log.records.size() <= 10);
  }
}

TEST_CASE("k = 2 calibration is rejected, k = 3 accepted", "[session]") {
  session::SessionConfig cfg;
  cfg.user_model.calibration_turns = 2;
  CHECK_THROWS_AS(cfg.validate(), CalibrationError);
  CHECK_THROWS_AS(session::run_session(linear_scenario(4), decent_session(4), cfg),
                  CalibrationError);

  cfg.user_model.calibration_turns = 3;
  CHECK_NOTHROW(session::run_session(linear_scenario(4), decent_session(4), cfg));

  CHECK_THROWS_AS(session::config_from_json(json::parse(
                      R"({"user_model": {"calibration_turns": 2}})")),
                  CalibrationError);
}

TEST_CASE("identical runs produce byte-identical logs", "[session]") {
  testsupport::TmpDir tmp("determinism");
  auto graph = linear_scenario(7);
  session::SessionConfig cfg;
  cfg.personality.set_trait(affect::Attitude::Friendly, 0.6);
  auto inputs = decent_session(7);

  auto log1 = session::run_session(graph, inputs, cfg);
  auto log2 = session::run_session(graph, inputs, cfg);
  session::write_session_log(tmp.file("a.jsonl"), log1);
  session::write_session_log(tmp.file("b.jsonl"), log2);
  CHECK(file_bytes(tmp.file("a.jsonl")) == file_bytes(tmp.file("b.jsonl")));
}

TEST_CASE("turn records depend only on the inputs up to that turn", "[session]") {
  auto graph = linear_scenario(8);
  session::SessionConfig cfg;

  auto inputs_a = decent_session(8);
  auto inputs_b = inputs_a;
  inputs_b[5] = session::TurnInput{};  // silence from turn 6 on
  inputs_b[6] = session::TurnInput{};

  auto log_a = session::run_session(graph, inputs_a, cfg);
  auto log_b = session::run_session(graph, inputs_b, cfg);
  for (size_t i = 0; i < 5; ++i) {
    CHECK(to_json(log_a.records[i]).dump() == to_json(log_b.records[i]).dump());
  }
  CHECK(to_json(log_a.records[5]).dump() != to_json(log_b.records[5]).dump());
}

TEST_CASE("session log round trips and replays cleanly", "[session]") {
  testsupport::TmpDir tmp("replay");
  auto graph = linear_scenario(8);
  session::SessionConfig cfg;
  cfg.personality.set_trait(affect::Attitude::Supportive, 0.5);
  auto log = session::run_session(graph, decent_session(8), cfg);
  session::write_session_log(tmp.file("session.jsonl"), log);

  SECTION("untampered log: empty diff") {
    auto diffs = session::replay_session(tmp.file("session.jsonl"));
    CHECK(diffs.empty());
  }

  SECTION("an edited P_d diverges from that turn onward") {
    auto loaded = session::read_session_log(tmp.file("session.jsonl"));
    loaded.records[4].performance.value = 0.9 * loaded.records[4].performance.value - 0.05;
    auto diffs = session::replay_session(loaded);
    REQUIRE_FALSE(diffs.empty());
    int first_turn = diffs.front().turn;
    for (const auto& d : diffs) first_turn = std::min(first_turn, d.turn);
    CHECK(first_turn == 5);
  }

  SECTION("a truncated line is a schema error with its line number") {
    auto bytes = file_bytes(tmp.file("session.jsonl"));
    std::ofstream os(tmp.file("cut.jsonl"), std::ios::binary);
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size() * 2 / 3));
    os.close();
    CHECK_THROWS_AS(session::replay_session(tmp.file("cut.jsonl")), ValidationError);
  }

  SECTION("an empty file is a schema error") {
    std::ofstream(tmp.file("empty.jsonl")).close();
    CHECK_THROWS_AS(session::read_session_log(tmp.file("empty.jsonl")), ValidationError);
  }
}

TEST_CASE("a session-long trace is sliced by turn boundaries", "[session]") {
  testsupport::TmpDir tmp("trace_slices");

  // two turns at absolute offsets 0 and 12 s
  std::vector<cue::CueEvent> trace;
  for (double offset : {0.0, 12.0}) {
    for (const auto& e : decent_turn().events) {
      cue::CueEvent shifted = e;
      shifted.time += offset;
      trace.push_back(shifted);
    }
  }
  cue::write_cue_trace(tmp.file("session_trace.jsonl"), trace);

  session::SessionConfig cfg;
  cfg.turn_boundaries = {{0.0, 0.3}, {12.0, 12.5}};
  auto inputs = session::load_cue_trace(tmp.file("session_trace.jsonl"), cfg);

  REQUIRE(inputs.size() == 2);
  CHECK(inputs[0].question_end == Approx(0.3));
  CHECK(inputs[1].question_end == Approx(0.5));  // turn-local clock
  REQUIRE_FALSE(inputs[1].events.empty());
  CHECK(inputs[1].events.front().time < 12.0);  // rebased to the turn start

  auto s0 = model::summarize_turn(inputs[0].events, inputs[0].question_end, 1);
  auto s1 = model::summarize_turn(inputs[1].events, inputs[1].question_end, 2);
  CHECK(s0.speech_duration == Approx(8.5));
  CHECK(s1.speech_duration == Approx(8.5));

  SECTION("a bare trace without boundaries is a configuration error") {
    session::SessionConfig no_bounds;
    CHECK_THROWS_AS(session::load_cue_trace(tmp.file("session_trace.jsonl"), no_bounds),
                    ConfigError);
  }
}

TEST_CASE("config file parsing covers every section", "[session]") {
  auto cfg = session::config_from_json(json::parse(R"({
    "audio": {"window_ms": 40, "f0_max": 400, "noise_floor_db": -55},
    "cues": {"discrete_thresholds": {"loudness": 0.4}},
    "user_model": {"calibration_turns": 4, "peak_z": 2.5,
                   "bands": {"rate": {"band": [3, 5], "limits": [1, 8]}},
                   "weights": {"duration": 0.4}},
    "affect": {"mood_step": 0.2, "emotion_decay": 0.4},
    "personality": {"alpha": 0.55, "traits": {"friendly": 0.7}},
    "tom": {"scope": "all-topics"},
    "session": {"max_turns": 12, "seed": 7,
                "turn_boundaries": [{"start": 0, "question_end": 1.5}]}
  })"));

  CHECK(cfg.audio.window_ms == 40.0);
  CHECK(cfg.audio.f0_max_hz == 400.0);
  CHECK(cfg.audio.noise_floor_db == -55.0);
  CHECK(cfg.cues.discrete_thresholds.at(cue::CueKind::Loudness) == 0.4);
  CHECK(cfg.user_model.calibration_turns == 4);
  CHECK(cfg.user_model.peak_z == 2.5);
  CHECK(cfg.user_model.profile_defaults.rate.lo == 3.0);
  CHECK(cfg.user_model.profile_defaults.weights.at(model::ScoreStat::Duration) == 0.4);
  CHECK(cfg.affect_cfg.mood.step == 0.2);
  CHECK(cfg.affect_cfg.emotion_decay == 0.4);
  CHECK(cfg.personality.alpha == 0.55);
  CHECK(cfg.personality.trait(affect::Attitude::Friendly) == 0.7);
  CHECK(cfg.scope == tom::ScopeMode::AllTopics);
  CHECK(cfg.max_turns == 12);
  CHECK(cfg.turn_boundaries.size() == 1);
  CHECK(cfg.turn_boundaries[0].question_end == 1.5);

  CHECK_THROWS_AS(session::config_from_json(json::parse(R"({"personality": {"alpha": 1.5}})")),
                  ConfigError);
  CHECK_THROWS_AS(session::config_from_json(json::parse(R"({"cues": {"discrete_thresholds": {"bogus": 1}}})")),
                  ConfigError);
}

TEST_CASE("desire-driven branching picks the preferred topic", "[session]") {
  // after calibration (q1..q3), a bad answer on the motivation probe q4
  // with a negatively disposed recruiter raises the desire to dig deeper
  std::vector<scenario::Topic> topics = {{"motivation", 0}, {"skills", 1}};
  scenario::Node q1, q2, q3, q4, skills_q, motivation_q;
  q1.id = "q1";
  q1.topics = {"motivation"};
  q1.next = {"q2"};
  q2.id = "q2";
  q2.topics = {"skills"};
  q2.next = {"q3"};
  q3.id = "q3";
  q3.topics = {"motivation"};
  q3.next = {"q4"};
  q4.id = "q4";
  q4.topics = {"motivation"};
  q4.expected_performance = 0.9;
  q4.next = {"skills_q", "motivation_q"};
  skills_q.id = "skills_q";
  skills_q.topics = {"skills"};
  motivation_q.id = "motivation_q";
  motivation_q.topics = {"motivation"};
  auto graph = scenario::Graph(topics, "q1", {q1, q2, q3, q4, skills_q, motivation_q});

  session::SessionConfig cfg;
  cfg.personality.set_trait(affect::Attitude::Dominant, 0.9);  // negative stance
  cfg.personality.alpha = 0.8;

  // three calibration turns with decent speech, then silence at q4 (bad)
  std::vector<session::TurnInput> inputs = decent_session(3);
  inputs.push_back(session::TurnInput{});
  auto log = session::run_session(graph, inputs, cfg);

  REQUIRE(log.records.size() >= 4);
  const auto& q4_record = log.records[3];
  REQUIRE(q4_record.node_id == "q4");
  CHECK(q4_record.performance.value < 0.0);
  // negative stance + bad motivation answer -> motivation desire grows
  CHECK(q4_record.desires.at("motivation") > 0.5);
  REQUIRE(q4_record.next_node.has_value());
  CHECK(*q4_record.next_node == "motivation_q");
}
