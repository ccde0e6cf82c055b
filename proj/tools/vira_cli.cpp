// vira — affective interview pipeline CLI.
//
// Subcommands:
//   run               full session: scenario + audio/cue input -> session log
//   extract-features  WAV -> cue trace (JSONL)
//   replay            recompute a session log and report divergences
//   validate          check a scenario file
//
// Exit codes: 0 ok, 1 validation error, 2 I/O error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vira/vira.hpp"

namespace {

int run_command(const std::string& scenario_path, const std::optional<std::string>& manifest,
                const std::optional<std::string>& cue_trace,
                const std::optional<std::string>& config_path, const std::string& out_path) {
  const auto cfg = vira::session::resolve_config(
      config_path ? std::optional<std::filesystem::path>(*config_path) : std::nullopt);
  const auto graph = vira::scenario::load_scenario(scenario_path);

  std::vector<vira::session::TurnInput> inputs;
  if (manifest) {
    inputs = vira::session::load_audio_manifest(*manifest, cfg);
  } else if (cue_trace) {
    inputs = vira::session::load_cue_trace(*cue_trace, cfg);
  }

  const auto log = vira::session::run_session(graph, inputs, cfg);
  vira::session::write_session_log(out_path, log);
  std::cout << "wrote " << log.records.size() << " turn records to " << out_path << "\n";
  return 0;
}

int extract_command(const std::string& wav_path, const std::optional<std::string>& config_path,
                    const std::string& out_path) {
  const auto cfg = vira::session::resolve_config(
      config_path ? std::optional<std::filesystem::path>(*config_path) : std::nullopt);
  const auto wav = vira::audio::read_wav(wav_path);
  const auto events = vira::cue::extract_cue_events(wav.samples, wav.sample_rate, cfg.audio, cfg.cues);
  vira::cue::write_cue_trace(out_path, events);
  std::cout << "wrote " << events.size() << " cue events to " << out_path << "\n";
  return 0;
}

int replay_command(const std::string& log_path) {
  const auto diffs = vira::session::replay_session(std::filesystem::path(log_path));
  if (diffs.empty()) {
    std::cout << "replay clean: trajectories match the log\n";
    return 0;
  }
  for (const auto& d : diffs) {
    std::cout << "turn " << d.turn << " " << d.field << ": logged " << d.logged
              << ", recomputed " << d.recomputed << "\n";
  }
  std::cout << diffs.size() << " divergence(s) found\n";
  return 1;
}

int validate_command(const std::string& scenario_path) {
  const auto graph = vira::scenario::load_scenario(scenario_path);
  std::cout << "scenario ok: " << graph.nodes().size() << " nodes, " << graph.topics().size()
            << " topics, entry \"" << graph.entry() << "\"\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vira — audio social cues to a virtual recruiter's affect and decisions"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, wav_path, log_path;
  std::optional<std::string> manifest, cue_trace, config_path;

  auto* run = app.add_subcommand("run", "Run a full interview session");
  run->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  auto* opt_manifest = run->add_option("--audio-manifest", manifest, "WAV manifest JSON");
  auto* opt_trace = run->add_option("--cue-trace", cue_trace,
                                    "Cue trace (.jsonl with config turn boundaries, or manifest .json)");
  opt_manifest->excludes(opt_trace);
  run->add_option("--config", config_path, "Config JSON (or set VIRA_CONFIG)");
  run->add_option("--out", out_path, "Session log output path")->required();

  auto* extract = app.add_subcommand("extract-features", "Extract a cue trace from a WAV file");
  extract->add_option("--wav", wav_path, "Mono 16-bit PCM WAV")->required();
  extract->add_option("--config", config_path, "Config JSON (or set VIRA_CONFIG)");
  extract->add_option("--out", out_path, "Cue trace output path (JSONL)")->required();

  auto* replay = app.add_subcommand("replay", "Recompute trajectories from a session log");
  replay->add_option("--log", log_path, "Session log (JSONL)")->required();

  auto* validate = app.add_subcommand("validate", "Validate a scenario file");
  validate->add_option("--scenario", scenario_path, "Scenario JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_command(scenario_path, manifest, cue_trace, config_path, out_path);
    if (extract->parsed()) return extract_command(wav_path, config_path, out_path);
    if (replay->parsed()) return replay_command(log_path);
    if (validate->parsed()) return validate_command(scenario_path);
  } catch (const vira::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
